#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "icisim/inverter.hpp"
#include "icisim/network.hpp"
#include "icisim/trajectory.hpp"

namespace icisim {

/// Fixed-step RK4 settings. Events snap to the nearest step boundary.
struct IntegratorConfig {
    double step = 5e-5;            // s
    double t_end = 20.0;           // s
    std::size_t record_every = 20; // record interval = step * record_every
    double omega_min = 1.0;        // rad/s, abort threshold

    void validate() const;
    std::size_t step_count() const;
};

/// Sets the load at `node` to `new_load` (absolute, W) at `time`.
struct LoadEvent {
    double time;
    std::size_t node;
    double new_load;
};

struct PrimaryControl {
    Vec setpoints;  // P_l*, W
};

using ControllerMode = std::variant<PrimaryControl, SecondaryControl>;

struct SimulationSetup {
    NetworkModel model;
    Vec loads;  // before any event, W
    ControllerMode controller;
    std::vector<LoadEvent> events;
    IntegratorConfig integrator;
    std::optional<NetworkState> initial_state;  // default: equilibrium of `loads`
};

/// Equilibrium of the pre-event loads under the configured controller.
NetworkState pre_event_equilibrium(const SimulationSetup& setup);

/// Loads after every event has been applied.
Vec final_loads(const SimulationSetup& setup);

/// Integrates the networked system. A domain violation stops the run and is
/// reported through Trajectory::abort_reason; samples up to that point are kept.
Trajectory simulate(const SimulationSetup& setup);

struct SingleSetup {
    VirtualParams params;
    double omega_star;
    double load;  // W
    std::vector<LoadEvent> events;  // node index must be 0
    IntegratorConfig integrator;
    SingleState initial;
};

struct SingleTrajectory {
    std::vector<double> times;
    std::vector<SingleState> states;
};

/// Single inverter with the integral secondary controller.
SingleTrajectory simulate_single_secondary(const SingleSetup& setup);

}  // namespace icisim
