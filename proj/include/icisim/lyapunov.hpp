#pragma once

#include <cstddef>
#include <vector>

#include "icisim/equilibrium.hpp"
#include "icisim/network.hpp"
#include "icisim/trajectory.hpp"
#include "icisim/types.hpp"

namespace icisim {

enum class EnergyKind {
    Primary,   // V = 1/2 w^T J w - w_s^{-1} 1^T Gamma cos eta
    Secondary  // W = 1/2 w^T J w - w*^{-1} 1^T Gamma cos eta + 1/2 xi^T xi
};

/// Energy of the networked system on the coordinates x = [eta; omega; xi]
/// (xi only for the secondary kind). `omega_ref` is omega_s for the primary
/// energy and omega_star for the secondary one.
class EnergyFunction {
public:
    EnergyFunction(EnergyKind kind, double omega_ref, const NetworkModel& model);

    EnergyKind kind() const noexcept { return kind_; }
    double omega_ref() const noexcept { return omega_ref_; }
    std::size_t dimension() const noexcept;

    double value(const Vec& x) const;
    Vec gradient(const Vec& x) const;
    /// Bregman divergence V(x) - (x - xbar)^T grad V(xbar) - V(xbar), evaluated
    /// term by term so that it stays accurate when x is close to xbar.
    double divergence(const Vec& x, const Vec& xbar) const;
    /// Maps an absolute-angle state onto x.
    Vec coordinates(const NetworkState& state) const;

private:
    EnergyKind kind_;
    double omega_ref_;
    Mat incidence_;
    Vec gamma_;
    Vec inertia_;
};

/// Bregman shift V_s(x) = V(x) - (x - xbar)^T grad V(xbar) - V(xbar).
class ShiftedEnergy {
public:
    ShiftedEnergy(EnergyFunction energy, const NetworkState& anchor);

    static ShiftedEnergy primary(const EquilibriumPrimary& eq, const NetworkModel& model);
    static ShiftedEnergy secondary(const EquilibriumSecondary& eq, const NetworkModel& model);

    double value(const Vec& x) const;
    Vec gradient(const Vec& x) const;
    double operator()(const NetworkState& state) const { return value(energy_.coordinates(state)); }

    const EnergyFunction& energy() const noexcept { return energy_; }
    const NetworkState& anchor() const noexcept { return anchor_; }
    const Vec& anchor_coordinates() const noexcept { return anchor_x_; }

private:
    EnergyFunction energy_;
    NetworkState anchor_;
    Vec anchor_x_;
    Vec anchor_gradient_;
};

/// Box neighbourhood of the anchor in absolute-angle coordinates. A negative
/// xi radius selects 1 % of ||xi_bar||_inf.
struct Neighborhood {
    double theta = 0.1;  // rad
    double omega = 1.0;  // rad/s
    double xi = -1.0;

    /// Validates and fills defaults for the given anchor. Throws InputError
    /// for a zero or negative radius.
    Neighborhood resolved(const NetworkState& anchor) const;
    bool contains(const NetworkState& anchor, const NetworkState& state) const;
};

/// Central finite-difference gradient of V_s in x coordinates.
Vec finite_difference_gradient(const ShiftedEnergy& vs, const Vec& x, double step);

/// Second differences of V_s at the anchor along every flat state coordinate.
Vec second_differences(const ShiftedEnergy& vs, double step);

struct DecreaseReport {
    std::vector<double> values;
    double max_increment = 0.0;  // largest V_s(t_{k+1}) - V_s(t_k)
    std::size_t worst_step = 0;
    double tolerance = 0.0;      // per-step allowance
    bool starts_inside = true;
    bool pass = true;
};

/// Checks that V_s is non-increasing along the recorded samples, up to
/// rel_tol * (1 + |V_s(x_0)|) per step. Throws DomainError for aborted runs.
DecreaseReport check_decrease(const Trajectory& trajectory, const ShiftedEnergy& vs,
                              const Neighborhood& ball, double rel_tol = 1e-9);

}  // namespace icisim
