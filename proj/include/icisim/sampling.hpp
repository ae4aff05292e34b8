#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "icisim/lyapunov.hpp"
#include "icisim/types.hpp"

namespace icisim {

/// Uniform draws of flat-state perturbations inside the box `ball` around
/// `anchor`. Deterministic for a given seed.
std::vector<Vec> draw_perturbations(const NetworkState& anchor, const Neighborhood& ball,
                                    std::size_t count, std::uint64_t seed);

struct PositivityReport {
    std::size_t draws = 0;
    std::size_t violations = 0;  // draws with V_s <= 0
    double min_value = 0.0;
    std::size_t worst_index = 0;

    bool pass() const noexcept { return draws > 0 && violations == 0; }
};

/// Serial reference: evaluates V_s(anchor + delta) for every perturbation.
PositivityReport certify_positive_serial(const ShiftedEnergy& vs, std::span<const Vec> perturbations);

/// OpenMP version of certify_positive_serial; returns the identical report.
PositivityReport certify_positive_parallel(const ShiftedEnergy& vs,
                                           std::span<const Vec> perturbations);

}  // namespace icisim
