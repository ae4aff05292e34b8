#pragma once

#include <cstddef>
#include <cstdint>

#include "icisim/lyapunov.hpp"
#include "icisim/sampling.hpp"
#include "icisim/simulation.hpp"

namespace icisim {

struct CertifyOptions {
    Neighborhood ball;
    std::size_t draws = 10000;
    std::uint64_t seed = 20180101;
    double anchor_omega_shift = 0.0;  // rad/s added to the anchor frequency
    double gradient_step = 1e-4;
    double gradient_tol = 1e-6;
    double anchor_tol = 1e-8;
    double rel_tol = 1e-9;
    bool parallel = true;
};

/// Numerical restatement of local asymptotic stability for one scenario:
/// the anchor is an equilibrium, V_s is stationary and positive around it,
/// and V_s decreases along the simulated response to the scheduled events.
struct Certification {
    EnergyKind kind = EnergyKind::Secondary;
    double anchor_residual = 0.0;   // max |rhs| at the anchor
    double anchor_gradient = 0.0;   // ||FD grad V_s(anchor)||_inf
    double rest_gradient = 0.0;     // ||grad V_s(x(t_end))||_inf
    double min_second_difference = 0.0;
    PositivityReport positivity;
    DecreaseReport decrease;
    CertifyOptions options;

    bool anchor_ok() const { return anchor_residual <= options.anchor_tol; }
    bool gradient_ok() const { return anchor_gradient <= options.gradient_tol; }
    bool pass() const {
        return anchor_ok() && gradient_ok() && min_second_difference > 0.0 && positivity.pass() &&
               decrease.pass;
    }
};

/// The anchor is the equilibrium of the post-event loads; the trajectory
/// starts from the setup's initial state (pre-event equilibrium by default).
Certification certify(const SimulationSetup& setup, const CertifyOptions& options);

}  // namespace icisim
