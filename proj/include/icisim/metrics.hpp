#pragma once

#include "icisim/trajectory.hpp"
#include "icisim/types.hpp"

namespace icisim {

/// Frequency of every node in Hz at sample k.
Vec frequencies_hz(const Trajectory& trajectory, std::size_t k);

/// Largest |delta f / delta t| over nodes and consecutive recorded samples, Hz/s.
/// Throws InputError for fewer than two samples.
double rocof_max(const Trajectory& trajectory);

struct SharingReport {
    double max_pairwise = 0.0;     // max_ij |q_i P_i - q_j P_j| / mean(q P)
    double total_injection = 0.0;  // W
    double total_load = 0.0;       // W
};

/// Proportional-sharing discrepancy at the final sample. Throws InputError
/// for primary-control trajectories.
SharingReport sharing_ratios(const Trajectory& trajectory, const Vec& cost);

}  // namespace icisim
