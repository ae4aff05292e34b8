#include "icisim/equilibrium.hpp"

#include <algorithm>
#include <cmath>

#include "icisim/errors.hpp"

namespace icisim {
namespace {

constexpr int kMaxNewtonIterations = 50;
constexpr int kMaxHalvings = 40;
constexpr int kPolishSteps = 3;

bool inside_security_region(const Vec& eta) {
    return eta.size() == 0 || eta.cwiseAbs().maxCoeff() < kHalfPi;
}

double max_abs(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace

double delta_n(const Vec& loads, const Vec& setpoints, const Vec& damping, double omega_star) {
    return omega_star * omega_star - 4.0 * (loads - setpoints).sum() / damping.sum();
}

SyncFrequencies sync_frequencies(double delta, double omega_star) {
    if (!(delta > 0.0)) {
        throw InfeasibleError(InfeasibleError::Kind::DroopCapacity,
                              "no synchronous equilibrium: Delta_N <= 0 (load mismatch exceeds the droop capability)");
    }
    const double root = std::sqrt(delta);
    return {0.5 * (omega_star + root), 0.5 * (omega_star - root)};
}

Vec solve_angles(const Vec& target, const Mat& incidence, const Vec& gamma) {
    const Eigen::Index n = incidence.rows();
    if (target.size() != n || gamma.size() != incidence.cols()) {
        throw InputError("solve_angles: inconsistent sizes");
    }
    if (std::abs(target.sum()) > 1e-6 * target.norm()) {
        throw InfeasibleError(InfeasibleError::Kind::UnbalancedTarget,
                              "target not in range: 1^T r != 0");
    }
    Vec theta = Vec::Zero(n);
    if (n == 1) {
        return theta;
    }

    auto residual_of = [&](const Vec& th) -> Vec { return line_power(th, incidence, gamma) - target; };
    const double tol = 1e-9 * std::max(1.0, max_abs(target));
    const Mat reduced_b = incidence.bottomRows(n - 1);

    Vec residual = residual_of(theta);
    double norm = max_abs(residual);
    int polish = 0;
    for (int iter = 0; iter < kMaxNewtonIterations; ++iter) {
        if (norm <= tol && ++polish > kPolishSteps) {
            break;
        }
        const Vec eta = incidence.transpose() * theta;
        const Mat jac = reduced_b *
                        gamma.cwiseProduct(eta.array().cos().matrix()).asDiagonal() *
                        reduced_b.transpose();
        const Vec step = jac.ldlt().solve(-residual.tail(n - 1));

        double scale = 1.0;
        bool accepted = false;
        for (int h = 0; h < kMaxHalvings; ++h, scale *= 0.5) {
            Vec trial = theta;
            trial.tail(n - 1) += scale * step;
            if (!inside_security_region(incidence.transpose() * trial)) {
                continue;
            }
            const Vec trial_residual = residual_of(trial);
            const double trial_norm = max_abs(trial_residual);
            if (trial_norm < norm) {
                theta = trial;
                residual = trial_residual;
                norm = trial_norm;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            break;
        }
    }
    if (!(norm <= tol)) {
        throw InfeasibleError(InfeasibleError::Kind::SecurityConstraint,
                              "security constraint infeasible: no angle solution in "
                              "(-pi/2, pi/2)^m (residual " + std::to_string(norm) + " W)");
    }
    return theta;
}

EquilibriumPrimary equilibrium_primary(const Vec& loads, const Vec& setpoints,
                                       const NetworkModel& model) {
    const double w_star = model.omega_star();
    const double delta = delta_n(loads, setpoints, model.total_damping(), w_star);
    const SyncFrequencies roots = sync_frequencies(delta, w_star);
    const Vec droop = model.total_damping() * (roots.stable * (roots.stable - w_star));
    const Vec target = setpoints - loads - droop;

    EquilibriumPrimary eq;
    eq.theta = solve_angles(target, model.incidence(), model.gamma());
    eq.eta = model.edge_angles(eq.theta);
    eq.omega_s = roots.stable;
    eq.omega_u = roots.unstable;
    eq.delta_n = delta;
    eq.residual = max_abs(line_power(eq.theta, model.incidence(), model.gamma()) - target);
    return eq;
}

Vec optimal_injection(const Vec& loads, const Vec& cost) {
    if (cost.size() != loads.size()) {
        throw InputError("optimal_injection: one cost per node is required");
    }
    for (Eigen::Index i = 0; i < cost.size(); ++i) {
        if (!(cost(i) > 0.0)) {
            throw InputError("invalid cost: q_" + std::to_string(i + 1) + " must be > 0");
        }
    }
    const Vec inv = cost.cwiseInverse();
    return inv * (loads.sum() / inv.sum());
}

EquilibriumSecondary equilibrium_secondary(const Vec& loads, const Vec& cost,
                                           const NetworkModel& model) {
    const Vec injection = optimal_injection(loads, cost);
    const double level = loads.sum() / cost.cwiseInverse().sum();
    const Vec target = injection - loads;

    EquilibriumSecondary eq;
    try {
        eq.theta = solve_angles(target, model.incidence(), model.gamma());
    } catch (const InfeasibleError& e) {
        if (e.kind() != InfeasibleError::Kind::SecurityConstraint) {
            throw;
        }
        throw InfeasibleError(e.kind(), std::string(e.what()) +
                                            "; optimal dispatch violates the security constraint");
    }
    eq.eta = model.edge_angles(eq.theta);
    eq.omega = model.omega_star();
    eq.xi = Vec::Constant(loads.size(), level);
    eq.residual = max_abs(line_power(eq.theta, model.incidence(), model.gamma()) - target);
    return eq;
}

double equilibrium_residual(const NetworkState& derivative, const NetworkModel& model) {
    double r = std::max(max_abs(model.edge_angles(derivative.theta())),
                        max_abs(derivative.omega()));
    if (derivative.has_controller()) {
        r = std::max(r, max_abs(derivative.xi()));
    }
    return r;
}

}  // namespace icisim
