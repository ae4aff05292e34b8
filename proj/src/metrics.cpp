#include "icisim/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "icisim/errors.hpp"

namespace icisim {

Vec frequencies_hz(const Trajectory& trajectory, std::size_t k) {
    return trajectory.state(k).omega() / (2.0 * kPi);
}

double rocof_max(const Trajectory& trajectory) {
    if (trajectory.sample_count() < 2) {
        throw InputError("rocof: at least two samples are required");
    }
    double worst = 0.0;
    Vec prev = frequencies_hz(trajectory, 0);
    for (std::size_t k = 1; k < trajectory.sample_count(); ++k) {
        Vec cur = frequencies_hz(trajectory, k);
        const double dt = trajectory.times[k] - trajectory.times[k - 1];
        worst = std::max(worst, (cur - prev).cwiseAbs().maxCoeff() / dt);
        prev = std::move(cur);
    }
    return worst;
}

SharingReport sharing_ratios(const Trajectory& trajectory, const Vec& cost) {
    if (!trajectory.secondary) {
        throw InputError("sharing defined for secondary control");
    }
    if (trajectory.sample_count() == 0) {
        throw InputError("sharing: empty trajectory");
    }
    const Vec& p = trajectory.injections.back();
    const Vec weighted = cost.cwiseProduct(p);
    SharingReport r;
    r.max_pairwise = (weighted.maxCoeff() - weighted.minCoeff()) / std::abs(weighted.mean());
    r.total_injection = p.sum();
    r.total_load = trajectory.loads.back().sum();
    return r;
}

}  // namespace icisim
