#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "icisim/grid.hpp"
#include "icisim/network.hpp"

namespace fixtures {

using icisim::Vec;

inline constexpr double kOmegaStar = 2.0 * 3.14159265358979323846 * 50.0;

// Five-inverter ring with the per-node values of the reference experiment.
inline icisim::GridTopology table1_topology() {
    return icisim::GridTopology(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}},
                                {0.08, 0.15, 0.08, 0.13, 0.10},
                                {300.7, 298.8, 299.7, 301.0, 300.3});
}

inline std::vector<icisim::InverterParams> table1_inverters() {
    const double c[] = {1.0e-3, 1.2e-3, 1.1e-3, 2.5e-3, 4.4e-3};
    const double g[] = {0.10, 0.09, 0.12, 0.12, 0.18};
    const double v[] = {1000.0, 900.0, 800.0, 1200.0, 1500.0};
    std::vector<icisim::InverterParams> out;
    for (int i = 0; i < 5; ++i) out.push_back({c[i], g[i], v[i], kOmegaStar});
    return out;
}

inline icisim::NetworkModel table1_model(Vec extra_damping = {}) {
    return icisim::NetworkModel(table1_topology(), table1_inverters(), kOmegaStar, extra_damping);
}

inline Vec table1_loads() {
    Vec p(5);
    p << 10e3, 12.5e3, 13.5e3, 16e3, 25e3;
    return p;
}

inline Vec table1_post_step_loads() {
    Vec p = table1_loads();
    p(0) *= 1.1;
    p(2) *= 1.1;
    p(4) *= 1.1;
    return p;
}

// $/kW^2 h as listed per node.
inline Vec table1_costs() {
    Vec q(5);
    q << 0.056, 0.028, 0.019, 0.014, 0.011;
    return q;
}

inline icisim::CommGraph table1_comm() {
    return icisim::CommGraph(5, {{0, 4}, {1, 4}, {3, 4}, {2, 3}});
}

inline Vec uniform(std::mt19937_64& rng, Eigen::Index n, double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = d(rng);
    return v;
}

}  // namespace fixtures
