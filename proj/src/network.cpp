#include "icisim/network.hpp"

#include <string>
#include <utility>

#include "icisim/errors.hpp"

namespace icisim {

NetworkModel::NetworkModel(GridTopology topology, const std::vector<InverterParams>& inverters,
                           double omega_star, Vec extra_damping)
    : topology_(std::move(topology)), omega_star_(omega_star) {
    const std::size_t n = topology_.node_count();
    if (inverters.size() != n) {
        throw InputError("network: one inverter per node is required");
    }
    if (!(omega_star > 0.0)) {
        throw InputError("network: nominal frequency must be > 0");
    }
    incidence_ = incidence_matrix(topology_);
    gamma_ = edge_coupling(topology_);

    const auto ni = static_cast<Eigen::Index>(n);
    inertia_.resize(ni);
    damping_.resize(ni);
    virtual_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        InverterParams p = inverters[i];
        p.omega_star = omega_star;
        virtual_.push_back(derive_virtual_params(p));
        inertia_(static_cast<Eigen::Index>(i)) = virtual_.back().inertia;
        damping_(static_cast<Eigen::Index>(i)) = virtual_.back().damping;
    }
    if (extra_damping.size() == 0) {
        extra_damping = Vec::Zero(ni);
    }
    if (extra_damping.size() != ni) {
        throw InputError("network: one extra damping value per node is required");
    }
    for (Eigen::Index i = 0; i < ni; ++i) {
        if (!(extra_damping(i) >= 0.0)) {
            throw InputError("network node " + std::to_string(i + 1) + ": d_tilde must be >= 0");
        }
    }
    total_damping_ = damping_ + extra_damping;
}

NetworkState::NetworkState(const Vec& theta, const Vec& omega, const Vec& xi)
    : n_(static_cast<std::size_t>(theta.size())) {
    if (omega.size() != theta.size() || (xi.size() != 0 && xi.size() != theta.size())) {
        throw InputError("network state: inconsistent vector sizes");
    }
    flat_.resize(theta.size() + omega.size() + xi.size());
    flat_ << theta, omega, xi;
}

NetworkState::NetworkState(Vec flat, std::size_t nodes) : n_(nodes), flat_(std::move(flat)) {
    const auto n = static_cast<Eigen::Index>(nodes);
    if (flat_.size() != 2 * n && flat_.size() != 3 * n) {
        throw InputError("network state: flat vector must hold 2n or 3n entries");
    }
}

Vec line_power(const Vec& theta, const Mat& incidence, const Vec& gamma) {
    const Vec eta = incidence.transpose() * theta;
    return incidence * gamma.cwiseProduct(eta.array().sin().matrix());
}

void require_positive_frequencies(const Vec& omega) {
    for (Eigen::Index i = 0; i < omega.size(); ++i) {
        if (!(omega(i) > 0.0)) {
            throw DomainError("frequency left positive half-line at node " +
                              std::to_string(i + 1) + " (omega = " + std::to_string(omega(i)) +
                              " rad/s)");
        }
    }
}

namespace {

// J w' = [w]^{-1} net - Dt (w - w*)
Vec swing_acceleration(const Vec& omega, const Vec& net, const NetworkModel& model) {
    const Vec deviation = omega.array() - model.omega_star();
    return (net.cwiseQuotient(omega) - model.total_damping().cwiseProduct(deviation))
        .cwiseQuotient(model.inertia());
}

}  // namespace

NetworkState rhs_primary(const NetworkState& state, const Vec& loads, const Vec& setpoints,
                         const NetworkModel& model) {
    const Vec omega = state.omega();
    require_positive_frequencies(omega);
    const Vec net = setpoints - loads - line_power(state.theta(), model.incidence(), model.gamma());
    return NetworkState(omega, swing_acceleration(omega, net, model));
}

NetworkState rhs_secondary(const NetworkState& state, const Vec& loads,
                           const SecondaryControl& control, const NetworkModel& model) {
    const Vec omega = state.omega();
    require_positive_frequencies(omega);
    const Vec xi = state.xi();
    const Vec net =
        control.injection(xi) - loads - line_power(state.theta(), model.incidence(), model.gamma());
    const Vec deviation = omega.array() - model.omega_star();
    const Vec xi_dot =
        -control.laplacian * xi - deviation.cwiseQuotient(omega).cwiseQuotient(control.cost);
    return NetworkState(omega, swing_acceleration(omega, net, model), xi_dot);
}

namespace {

// Blocks shared by both controllers. `net` is the bracket multiplied by [w]^{-1}.
void fill_swing_blocks(Mat& jac, const NetworkState& state, const Vec& net,
                       const NetworkModel& model) {
    const auto n = static_cast<Eigen::Index>(state.size());
    const Vec omega = state.omega();
    const Vec eta = model.edge_angles(state.theta());
    const Mat& b = model.incidence();
    const Mat stiffness =
        b * model.gamma().cwiseProduct(eta.array().cos().matrix()).asDiagonal() * b.transpose();

    jac.block(0, n, n, n).setIdentity();
    for (Eigen::Index i = 0; i < n; ++i) {
        const double scale = 1.0 / (model.inertia()(i) * omega(i));
        jac.block(n + i, 0, 1, n) = -scale * stiffness.row(i);
        jac(n + i, n + i) = (-net(i) / (omega(i) * omega(i)) - model.total_damping()(i)) /
                            model.inertia()(i);
    }
}

}  // namespace

Mat jacobian_primary(const NetworkState& state, const Vec& loads, const Vec& setpoints,
                     const NetworkModel& model) {
    const auto n = static_cast<Eigen::Index>(state.size());
    require_positive_frequencies(state.omega());
    Mat jac = Mat::Zero(2 * n, 2 * n);
    const Vec net = setpoints - loads - line_power(state.theta(), model.incidence(), model.gamma());
    fill_swing_blocks(jac, state, net, model);
    return jac;
}

Mat jacobian_secondary(const NetworkState& state, const Vec& loads,
                       const SecondaryControl& control, const NetworkModel& model) {
    const auto n = static_cast<Eigen::Index>(state.size());
    const Vec omega = state.omega();
    require_positive_frequencies(omega);
    Mat jac = Mat::Zero(3 * n, 3 * n);
    const Vec net = control.injection(state.xi()) - loads -
                    line_power(state.theta(), model.incidence(), model.gamma());
    fill_swing_blocks(jac, state, net, model);
    for (Eigen::Index i = 0; i < n; ++i) {
        jac(n + i, 2 * n + i) = 1.0 / (model.inertia()(i) * omega(i) * control.cost(i));
        jac(2 * n + i, n + i) = -model.omega_star() / (omega(i) * omega(i) * control.cost(i));
    }
    jac.block(2 * n, 2 * n, n, n) = -control.laplacian;
    return jac;
}

}  // namespace icisim
