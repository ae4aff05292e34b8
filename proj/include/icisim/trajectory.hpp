#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "icisim/network.hpp"
#include "icisim/types.hpp"

namespace icisim {

/// Recorded samples of one simulation. `states` hold the flat network state;
/// `injections` hold P_m(t) (Q^{-1} xi under secondary control, the constant
/// setpoints under primary control).
struct Trajectory {
    std::size_t nodes = 0;
    bool secondary = false;
    std::vector<double> times;
    std::vector<Vec> states;
    std::vector<Vec> injections;
    std::vector<Vec> loads;

    /// Set when the run stopped early because the state left the model domain.
    std::optional<std::string> abort_reason;
    double abort_time = 0.0;

    std::size_t sample_count() const noexcept { return times.size(); }
    NetworkState state(std::size_t k) const { return NetworkState(states[k], nodes); }
    bool completed() const noexcept { return !abort_reason.has_value(); }
};

}  // namespace icisim
