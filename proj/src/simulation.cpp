#include "icisim/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "icisim/equilibrium.hpp"
#include "icisim/errors.hpp"
#include "icisim/integrator.hpp"

namespace icisim {

void IntegratorConfig::validate() const {
    if (!(step > 0.0)) throw InputError("integrator: step must be > 0");
    if (!(t_end > 0.0)) throw InputError("integrator: t_end must be > 0");
    if (record_every == 0) throw InputError("integrator: record_every must be >= 1");
    if (!(omega_min >= 0.0)) throw InputError("integrator: omega_min must be >= 0");
}

std::size_t IntegratorConfig::step_count() const {
    return static_cast<std::size_t>(std::llround(t_end / step));
}

namespace {

struct ScheduledEvent {
    std::size_t step;
    std::size_t node;
    double new_load;
};

std::vector<ScheduledEvent> schedule(const std::vector<LoadEvent>& events, std::size_t nodes,
                                     const IntegratorConfig& cfg) {
    std::vector<ScheduledEvent> out;
    out.reserve(events.size());
    for (const LoadEvent& e : events) {
        if (e.node >= nodes) {
            throw InputError("event: node " + std::to_string(e.node + 1) + " out of range");
        }
        if (!(e.time >= 0.0) || e.time > cfg.t_end) {
            throw InputError("event: time must lie in [0, t_end]");
        }
        out.push_back({static_cast<std::size_t>(std::llround(e.time / cfg.step)), e.node, e.new_load});
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.step < b.step; });
    return out;
}

Vec injection_of(const ControllerMode& mode, const NetworkState& state) {
    if (const auto* p = std::get_if<PrimaryControl>(&mode)) {
        return p->setpoints;
    }
    return std::get<SecondaryControl>(mode).injection(state.xi());
}

}  // namespace

NetworkState pre_event_equilibrium(const SimulationSetup& setup) {
    const auto n = static_cast<Eigen::Index>(setup.model.size());
    if (const auto* p = std::get_if<PrimaryControl>(&setup.controller)) {
        const EquilibriumPrimary eq = equilibrium_primary(setup.loads, p->setpoints, setup.model);
        return NetworkState(eq.theta, Vec::Constant(n, eq.omega_s));
    }
    const auto& c = std::get<SecondaryControl>(setup.controller);
    const EquilibriumSecondary eq = equilibrium_secondary(setup.loads, c.cost, setup.model);
    return NetworkState(eq.theta, Vec::Constant(n, eq.omega), eq.xi);
}

Vec final_loads(const SimulationSetup& setup) {
    Vec loads = setup.loads;
    for (const auto& e : schedule(setup.events, setup.model.size(), setup.integrator)) {
        loads(static_cast<Eigen::Index>(e.node)) = e.new_load;
    }
    return loads;
}

Trajectory simulate(const SimulationSetup& setup) {
    const IntegratorConfig& cfg = setup.integrator;
    cfg.validate();
    const std::size_t n = setup.model.size();
    if (setup.loads.size() != static_cast<Eigen::Index>(n)) {
        throw InputError("simulate: one load per node is required");
    }
    const auto events = schedule(setup.events, n, cfg);
    const bool secondary = std::holds_alternative<SecondaryControl>(setup.controller);

    NetworkState state = setup.initial_state ? *setup.initial_state : pre_event_equilibrium(setup);
    if (state.size() != n || state.has_controller() != secondary) {
        throw InputError("simulate: initial state does not match the controller");
    }
    Vec loads = setup.loads;

    Trajectory traj;
    traj.nodes = n;
    traj.secondary = secondary;
    auto record = [&](double t) {
        traj.times.push_back(t);
        traj.states.push_back(state.flat());
        traj.injections.push_back(injection_of(setup.controller, state));
        traj.loads.push_back(loads);
    };

    auto rhs = [&](const Vec& x) -> Vec {
        const NetworkState s(x, n);
        if (secondary) {
            return rhs_secondary(s, loads, std::get<SecondaryControl>(setup.controller), setup.model)
                .flat();
        }
        return rhs_primary(s, loads, std::get<PrimaryControl>(setup.controller).setpoints,
                           setup.model)
            .flat();
    };

    const std::size_t steps = cfg.step_count();
    std::size_t next_event = 0;
    auto apply_events = [&](std::size_t k) {
        while (next_event < events.size() && events[next_event].step == k) {
            loads(static_cast<Eigen::Index>(events[next_event].node)) = events[next_event].new_load;
            ++next_event;
        }
    };

    record(0.0);
    for (std::size_t k = 0; k < steps; ++k) {
        apply_events(k);
        const double t_next = static_cast<double>(k + 1) * cfg.step;
        try {
            state.flat() = rk4_step(rhs, state.flat(), cfg.step);
        } catch (const DomainError& e) {
            traj.abort_reason = e.what();
            traj.abort_time = t_next;
            return traj;
        }
        const double w_min = state.omega().minCoeff();
        if (!(w_min > cfg.omega_min) || !state.flat().allFinite()) {
            traj.abort_reason = "frequency fell below omega_min (min omega = " +
                                std::to_string(w_min) + " rad/s)";
            traj.abort_time = t_next;
            return traj;
        }
        if ((k + 1) % cfg.record_every == 0 || k + 1 == steps) {
            record(t_next);
        }
    }
    return traj;
}

SingleTrajectory simulate_single_secondary(const SingleSetup& setup) {
    const IntegratorConfig& cfg = setup.integrator;
    cfg.validate();
    const auto events = schedule(setup.events, 1, cfg);

    double load = setup.load;
    Eigen::Vector2d x(setup.initial.omega, setup.initial.chi);
    auto rhs = [&](const Eigen::Vector2d& s) -> Eigen::Vector2d {
        const SingleState d = secondary_rhs_single({s(0), s(1)}, load, setup.params, setup.omega_star);
        return {d.omega, d.chi};
    };

    SingleTrajectory traj;
    auto record = [&](double t) {
        traj.times.push_back(t);
        traj.states.push_back({x(0), x(1)});
    };

    const std::size_t steps = cfg.step_count();
    std::size_t next_event = 0;
    record(0.0);
    for (std::size_t k = 0; k < steps; ++k) {
        while (next_event < events.size() && events[next_event].step == k) {
            load = events[next_event++].new_load;
        }
        x = rk4_step(rhs, x, cfg.step);
        if (!(x(0) > cfg.omega_min)) {
            throw DomainError("single inverter: frequency fell below omega_min at t = " +
                              std::to_string(static_cast<double>(k + 1) * cfg.step) + " s");
        }
        if ((k + 1) % cfg.record_every == 0 || k + 1 == steps) {
            record(static_cast<double>(k + 1) * cfg.step);
        }
    }
    return traj;
}

}  // namespace icisim
