#include "icisim/sampling.hpp"

#include <random>

#include "icisim/errors.hpp"

namespace icisim {

std::vector<Vec> draw_perturbations(const NetworkState& anchor, const Neighborhood& ball,
                                    std::size_t count, std::uint64_t seed) {
    const Neighborhood r = ball.resolved(anchor);
    const auto n = static_cast<Eigen::Index>(anchor.size());
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    std::vector<Vec> draws;
    draws.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        Vec d(anchor.flat().size());
        for (Eigen::Index i = 0; i < d.size(); ++i) {
            const double radius = i < n ? r.theta : (i < 2 * n ? r.omega : r.xi);
            d(i) = radius * unit(rng);
        }
        draws.push_back(std::move(d));
    }
    return draws;
}

namespace {

PositivityReport summarize(const std::vector<double>& values) {
    PositivityReport report;
    report.draws = values.size();
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (!(values[k] > 0.0)) {
            ++report.violations;
        }
        if (k == 0 || values[k] < report.min_value) {
            report.min_value = values[k];
            report.worst_index = k;
        }
    }
    return report;
}

}  // namespace

PositivityReport certify_positive_serial(const ShiftedEnergy& vs, std::span<const Vec> perturbations) {
    const NetworkState& anchor = vs.anchor();
    std::vector<double> values(perturbations.size());
    for (std::size_t k = 0; k < perturbations.size(); ++k) {
        values[k] = vs(NetworkState(anchor.flat() + perturbations[k], anchor.size()));
    }
    return summarize(values);
}

PositivityReport certify_positive_parallel(const ShiftedEnergy& vs,
                                           std::span<const Vec> perturbations) {
    const NetworkState& anchor = vs.anchor();
    const auto count = static_cast<long long>(perturbations.size());
    std::vector<double> values(perturbations.size());
#pragma omp parallel for schedule(static)
    for (long long k = 0; k < count; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        values[idx] = vs(NetworkState(anchor.flat() + perturbations[idx], anchor.size()));
    }
    return summarize(values);
}

}  // namespace icisim
