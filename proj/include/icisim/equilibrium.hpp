#pragma once

#include "icisim/network.hpp"
#include "icisim/types.hpp"

namespace icisim {

struct SyncFrequencies {
    double stable;    // omega_s
    double unstable;  // omega_u
};

/// Synchronous equilibrium under primary control.
struct EquilibriumPrimary {
    Vec theta;        // gauge theta_1 = 0
    Vec eta;          // B^T theta, inside (-pi/2, pi/2)^m
    double omega_s;
    double omega_u;
    double delta_n;
    double residual;  // max |B Gamma sin eta - r| in W
};

/// Equilibrium under the consensus secondary controller.
struct EquilibriumSecondary {
    Vec theta;
    Vec eta;
    double omega;     // equals omega_star
    Vec xi;
    double residual;
};

/// Delta_N = w*^2 - 4 1^T(P_l - P_l*) / (1^T D 1). The sign is the caller's to check.
double delta_n(const Vec& loads, const Vec& setpoints, const Vec& damping, double omega_star);

/// omega_{s,u} = (w* +- sqrt(Delta_N)) / 2. Throws InfeasibleError when Delta_N <= 0.
SyncFrequencies sync_frequencies(double delta_n, double omega_star);

/// Newton solution of B Gamma sin(B^T theta) = target with theta_1 = 0.
/// The target must be balanced (1^T target = 0). Throws InfeasibleError when
/// the solution would leave the security region or Newton fails.
Vec solve_angles(const Vec& target, const Mat& incidence, const Vec& gamma);

EquilibriumPrimary equilibrium_primary(const Vec& loads, const Vec& setpoints,
                                       const NetworkModel& model);

/// P_m* = Q^{-1} 1 1^T P_l / (1^T Q^{-1} 1). Throws InputError for non-positive costs.
Vec optimal_injection(const Vec& loads, const Vec& cost);

EquilibriumSecondary equilibrium_secondary(const Vec& loads, const Vec& cost,
                                           const NetworkModel& model);

/// Largest component of (B^T theta', omega', xi') at a state; zero at an equilibrium.
double equilibrium_residual(const NetworkState& derivative, const NetworkModel& model);

}  // namespace icisim
