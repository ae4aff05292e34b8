#include "icisim/lyapunov.hpp"

#include <cmath>
#include <utility>

#include "icisim/errors.hpp"

namespace icisim {

EnergyFunction::EnergyFunction(EnergyKind kind, double omega_ref, const NetworkModel& model)
    : kind_(kind), omega_ref_(omega_ref), incidence_(model.incidence()),
      gamma_(model.gamma()), inertia_(model.inertia()) {
    if (!(omega_ref > 0.0)) {
        throw InputError("energy: reference frequency must be > 0");
    }
}

std::size_t EnergyFunction::dimension() const noexcept {
    const auto m = static_cast<std::size_t>(gamma_.size());
    const auto n = static_cast<std::size_t>(inertia_.size());
    return m + n + (kind_ == EnergyKind::Secondary ? n : 0);
}

double EnergyFunction::value(const Vec& x) const {
    const Eigen::Index m = gamma_.size();
    const Eigen::Index n = inertia_.size();
    const auto eta = x.head(m);
    const auto omega = x.segment(m, n);
    double v = 0.5 * omega.dot(inertia_.cwiseProduct(omega)) -
               gamma_.dot(eta.array().cos().matrix()) / omega_ref_;
    if (kind_ == EnergyKind::Secondary) {
        v += 0.5 * x.segment(m + n, n).squaredNorm();
    }
    return v;
}

Vec EnergyFunction::gradient(const Vec& x) const {
    const Eigen::Index m = gamma_.size();
    const Eigen::Index n = inertia_.size();
    Vec g(x.size());
    g.head(m) = gamma_.cwiseProduct(x.head(m).array().sin().matrix()) / omega_ref_;
    g.segment(m, n) = inertia_.cwiseProduct(x.segment(m, n));
    if (kind_ == EnergyKind::Secondary) {
        g.segment(m + n, n) = x.segment(m + n, n);
    }
    return g;
}

double EnergyFunction::divergence(const Vec& x, const Vec& xbar) const {
    const Eigen::Index m = gamma_.size();
    const Eigen::Index n = inertia_.size();
    const Vec dw = x.segment(m, n) - xbar.segment(m, n);
    double v = 0.5 * dw.dot(inertia_.cwiseProduct(dw));
    // -cos(e) + cos(eb) - sin(eb)(e - eb), with the cosine difference in product form
    double lines = 0.0;
    for (Eigen::Index k = 0; k < m; ++k) {
        const double e = x(k);
        const double eb = xbar(k);
        const double cos_diff = -2.0 * std::sin(0.5 * (e + eb)) * std::sin(0.5 * (e - eb));
        lines += gamma_(k) * (-cos_diff - std::sin(eb) * (e - eb));
    }
    v += lines / omega_ref_;
    if (kind_ == EnergyKind::Secondary) {
        v += 0.5 * (x.segment(m + n, n) - xbar.segment(m + n, n)).squaredNorm();
    }
    return v;
}

Vec EnergyFunction::coordinates(const NetworkState& state) const {
    const Eigen::Index m = gamma_.size();
    const Eigen::Index n = inertia_.size();
    const bool with_xi = kind_ == EnergyKind::Secondary;
    if (with_xi && !state.has_controller()) {
        throw InputError("energy: secondary energy needs controller states");
    }
    Vec x(static_cast<Eigen::Index>(dimension()));
    x.head(m) = incidence_.transpose() * state.theta();
    x.segment(m, n) = state.omega();
    if (with_xi) {
        x.segment(m + n, n) = state.xi();
    }
    return x;
}

ShiftedEnergy::ShiftedEnergy(EnergyFunction energy, const NetworkState& anchor)
    : energy_(std::move(energy)), anchor_(anchor) {
    anchor_x_ = energy_.coordinates(anchor_);
    anchor_gradient_ = energy_.gradient(anchor_x_);
}

ShiftedEnergy ShiftedEnergy::primary(const EquilibriumPrimary& eq, const NetworkModel& model) {
    const auto n = static_cast<Eigen::Index>(model.size());
    return ShiftedEnergy(EnergyFunction(EnergyKind::Primary, eq.omega_s, model),
                         NetworkState(eq.theta, Vec::Constant(n, eq.omega_s)));
}

ShiftedEnergy ShiftedEnergy::secondary(const EquilibriumSecondary& eq, const NetworkModel& model) {
    const auto n = static_cast<Eigen::Index>(model.size());
    return ShiftedEnergy(EnergyFunction(EnergyKind::Secondary, model.omega_star(), model),
                         NetworkState(eq.theta, Vec::Constant(n, eq.omega), eq.xi));
}

double ShiftedEnergy::value(const Vec& x) const { return energy_.divergence(x, anchor_x_); }

Vec ShiftedEnergy::gradient(const Vec& x) const {
    return energy_.gradient(x) - anchor_gradient_;
}

Neighborhood Neighborhood::resolved(const NetworkState& anchor) const {
    Neighborhood out = *this;
    if (anchor.has_controller() && out.xi < 0.0) {
        const Vec xi = anchor.xi();
        out.xi = 0.01 * (xi.size() ? xi.cwiseAbs().maxCoeff() : 0.0);
    }
    if (!(out.theta > 0.0) || !(out.omega > 0.0) || (anchor.has_controller() && !(out.xi > 0.0))) {
        throw InputError("degenerate neighborhood: every radius must be > 0");
    }
    return out;
}

bool Neighborhood::contains(const NetworkState& anchor, const NetworkState& state) const {
    const Neighborhood r = resolved(anchor);
    const Vec d = state.flat() - anchor.flat();
    const auto n = static_cast<Eigen::Index>(anchor.size());
    if (d.head(n).cwiseAbs().maxCoeff() > r.theta) return false;
    if (d.segment(n, n).cwiseAbs().maxCoeff() > r.omega) return false;
    if (anchor.has_controller() && d.segment(2 * n, n).cwiseAbs().maxCoeff() > r.xi) return false;
    return true;
}

Vec finite_difference_gradient(const ShiftedEnergy& vs, const Vec& x, double step) {
    Vec g(x.size());
    Vec probe = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        probe(i) = x(i) + step;
        const double up = vs.value(probe);
        probe(i) = x(i) - step;
        const double down = vs.value(probe);
        probe(i) = x(i);
        g(i) = (up - down) / (2.0 * step);
    }
    return g;
}

Vec second_differences(const ShiftedEnergy& vs, double step) {
    const Vec& base = vs.anchor().flat();
    const std::size_t n = vs.anchor().size();
    Vec d(base.size());
    Vec probe = base;
    const double center = vs(vs.anchor());
    for (Eigen::Index i = 0; i < base.size(); ++i) {
        probe(i) = base(i) + step;
        const double up = vs(NetworkState(probe, n));
        probe(i) = base(i) - step;
        const double down = vs(NetworkState(probe, n));
        probe(i) = base(i);
        d(i) = (up - 2.0 * center + down) / (step * step);
    }
    return d;
}

DecreaseReport check_decrease(const Trajectory& trajectory, const ShiftedEnergy& vs,
                              const Neighborhood& ball, double rel_tol) {
    if (!trajectory.completed()) {
        throw DomainError("trajectory aborted at t = " + std::to_string(trajectory.abort_time) +
                          " s: " + *trajectory.abort_reason);
    }
    DecreaseReport report;
    if (trajectory.sample_count() == 0) {
        return report;
    }
    report.values.reserve(trajectory.sample_count());
    for (std::size_t k = 0; k < trajectory.sample_count(); ++k) {
        report.values.push_back(vs(trajectory.state(k)));
    }
    report.starts_inside = ball.contains(vs.anchor(), trajectory.state(0));
    report.tolerance = rel_tol * (1.0 + std::abs(report.values.front()));
    for (std::size_t k = 1; k < report.values.size(); ++k) {
        const double inc = report.values[k] - report.values[k - 1];
        if (k == 1 || inc > report.max_increment) {
            report.max_increment = inc;
            report.worst_step = k;
        }
    }
    report.pass = report.max_increment <= report.tolerance;
    return report;
}

}  // namespace icisim
