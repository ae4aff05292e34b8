#pragma once

#include <cstddef>
#include <vector>

#include "icisim/grid.hpp"
#include "icisim/inverter.hpp"
#include "icisim/types.hpp"

namespace icisim {

/// Immutable description of a networked system: electrical graph, derived
/// incidence and coupling, per-node swing coefficients, and the nominal
/// frequency shared by all nodes.
class NetworkModel {
public:
    /// `extra_damping` may be empty (no proportional term) or hold one
    /// non-negative d_tilde per node.
    NetworkModel(GridTopology topology, const std::vector<InverterParams>& inverters,
                 double omega_star, Vec extra_damping = {});

    std::size_t size() const noexcept { return topology_.node_count(); }
    std::size_t edge_count() const noexcept { return topology_.edge_count(); }
    const GridTopology& topology() const noexcept { return topology_; }
    const Mat& incidence() const noexcept { return incidence_; }
    const Vec& gamma() const noexcept { return gamma_; }
    const Vec& inertia() const noexcept { return inertia_; }
    /// D_i from the DC-side conductance.
    const Vec& damping() const noexcept { return damping_; }
    /// D_i + d_tilde_i, the coefficient that multiplies (w - w*) in closed loop.
    const Vec& total_damping() const noexcept { return total_damping_; }
    const std::vector<VirtualParams>& virtual_params() const noexcept { return virtual_; }
    double omega_star() const noexcept { return omega_star_; }

    /// Edge angle differences eta = B^T theta.
    Vec edge_angles(const Vec& theta) const { return incidence_.transpose() * theta; }

private:
    GridTopology topology_;
    Mat incidence_;
    Vec gamma_;
    std::vector<VirtualParams> virtual_;
    Vec inertia_;
    Vec damping_;
    Vec total_damping_;
    double omega_star_;
};

/// Network state in absolute-angle coordinates, stored as one flat vector
/// [theta; omega; xi]. xi is empty under primary control.
class NetworkState {
public:
    NetworkState() = default;
    NetworkState(const Vec& theta, const Vec& omega, const Vec& xi = Vec());
    NetworkState(Vec flat, std::size_t nodes);

    std::size_t size() const noexcept { return n_; }
    bool has_controller() const noexcept { return flat_.size() == static_cast<Eigen::Index>(3 * n_); }

    auto theta() const { return flat_.head(static_cast<Eigen::Index>(n_)); }
    auto omega() const { return flat_.segment(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_)); }
    auto xi() const {
        return flat_.segment(static_cast<Eigen::Index>(2 * n_),
                             has_controller() ? static_cast<Eigen::Index>(n_) : 0);
    }
    auto theta() { return flat_.head(static_cast<Eigen::Index>(n_)); }
    auto omega() { return flat_.segment(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_)); }
    auto xi() {
        return flat_.segment(static_cast<Eigen::Index>(2 * n_),
                             has_controller() ? static_cast<Eigen::Index>(n_) : 0);
    }

    const Vec& flat() const noexcept { return flat_; }
    Vec& flat() noexcept { return flat_; }

private:
    std::size_t n_ = 0;
    Vec flat_;
};

/// Consensus-based secondary controller: P_m = Q^{-1} xi,
/// xi' = -L xi - Q^{-1} [w]^{-1} (w - 1 w*).
struct SecondaryControl {
    Vec cost;       // diagonal of Q, all > 0
    Mat laplacian;  // communication Laplacian

    Vec injection(const Vec& xi) const { return xi.cwiseQuotient(cost); }
};

/// Net power each node sends into the lines, B Gamma sin(B^T theta).
Vec line_power(const Vec& theta, const Mat& incidence, const Vec& gamma);

/// Throws DomainError unless every omega_i > 0.
void require_positive_frequencies(const Vec& omega);

/// Closed loop under primary control with constant setpoints P_m = P_l*:
/// theta' = w,  J w' = [w]^{-1}(P_l* - P_l - B Gamma sin eta) - D (w - 1 w*).
NetworkState rhs_primary(const NetworkState& state, const Vec& loads, const Vec& setpoints,
                         const NetworkModel& model);

/// Closed loop under the consensus secondary controller.
NetworkState rhs_secondary(const NetworkState& state, const Vec& loads,
                           const SecondaryControl& control, const NetworkModel& model);

/// Analytic Jacobian of rhs_primary with respect to the flat state.
Mat jacobian_primary(const NetworkState& state, const Vec& loads, const Vec& setpoints,
                     const NetworkModel& model);

/// Analytic Jacobian of rhs_secondary with respect to the flat state.
Mat jacobian_secondary(const NetworkState& state, const Vec& loads,
                       const SecondaryControl& control, const NetworkModel& model);

}  // namespace icisim
