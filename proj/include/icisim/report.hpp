#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "icisim/metrics.hpp"
#include "icisim/trajectory.hpp"

namespace icisim {

/// Header `t_s,theta_1..theta_n,omega_1..omega_n[,xi_1..xi_n,pm_1..pm_n],f_hz_min,f_hz_max`.
std::string csv_header(std::size_t nodes, bool secondary);

/// One row per recorded sample, SI units, 12 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

/// %.12g formatting.
std::string fmt12(double value);

struct SimulationSummary {
    Vec final_f_hz;
    double rocof_hz_per_s = 0.0;
    double total_injection = 0.0;  // W
    double total_load = 0.0;       // W
    std::optional<SharingReport> sharing;
};

SimulationSummary summarize(const Trajectory& trajectory, const Vec& cost);
void print_summary(std::ostream& out, const SimulationSummary& summary);

}  // namespace icisim
