#include "icisim/report.hpp"

#include <cstdio>

namespace icisim {

std::string fmt12(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

std::string csv_header(std::size_t nodes, bool secondary) {
    std::string h = "t_s";
    auto add = [&](const char* prefix) {
        for (std::size_t i = 1; i <= nodes; ++i) {
            h += ',';
            h += prefix;
            h += std::to_string(i);
        }
    };
    add("theta_");
    add("omega_");
    if (secondary) {
        add("xi_");
        add("pm_");
    }
    h += ",f_hz_min,f_hz_max";
    return h;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << csv_header(traj.nodes, traj.secondary) << '\n';
    for (std::size_t k = 0; k < traj.sample_count(); ++k) {
        const Vec& x = traj.states[k];
        out << fmt12(traj.times[k]);
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            out << ',' << fmt12(x(i));
        }
        if (traj.secondary) {
            for (Eigen::Index i = 0; i < traj.injections[k].size(); ++i) {
                out << ',' << fmt12(traj.injections[k](i));
            }
        }
        const Vec f = frequencies_hz(traj, k);
        out << ',' << fmt12(f.minCoeff()) << ',' << fmt12(f.maxCoeff()) << '\n';
    }
}

SimulationSummary summarize(const Trajectory& traj, const Vec& cost) {
    SimulationSummary s;
    const std::size_t last = traj.sample_count() - 1;
    s.final_f_hz = frequencies_hz(traj, last);
    s.rocof_hz_per_s = traj.sample_count() >= 2 ? rocof_max(traj) : 0.0;
    s.total_injection = traj.injections[last].sum();
    s.total_load = traj.loads[last].sum();
    if (traj.secondary) {
        s.sharing = sharing_ratios(traj, cost);
    }
    return s;
}

void print_summary(std::ostream& out, const SimulationSummary& s) {
    char buf[128];
    out << "final frequency (Hz):";
    for (Eigen::Index i = 0; i < s.final_f_hz.size(); ++i) {
        std::snprintf(buf, sizeof buf, " %.4f", s.final_f_hz(i));
        out << buf;
    }
    out << '\n';
    std::snprintf(buf, sizeof buf, "ROCOF_max: %.4f Hz/s\n", s.rocof_hz_per_s);
    out << buf;
    if (s.sharing) {
        std::snprintf(buf, sizeof buf, "sharing discrepancy: %.4f %%\n", 100.0 * s.sharing->max_pairwise);
        out << buf;
    }
    std::snprintf(buf, sizeof buf, "total injection: %.4f kW, total load: %.4f kW\n",
                  s.total_injection / 1e3, s.total_load / 1e3);
    out << buf;
}

}  // namespace icisim
