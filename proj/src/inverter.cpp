#include "icisim/inverter.hpp"

#include <cmath>
#include <string>

#include "icisim/errors.hpp"

namespace icisim {
namespace {

void require_positive_frequency(double omega) {
    if (!(omega > 0.0)) {
        throw DomainError("frequency left positive half-line (omega = " + std::to_string(omega) +
                          " rad/s)");
    }
}

}  // namespace

VirtualParams derive_virtual_params(const InverterParams& p) {
    if (!(p.c_dc > 0 && p.g_dc > 0 && p.v_dc_star > 0 && p.omega_star > 0)) {
        throw InputError("inverter parameters must be strictly positive");
    }
    const double kappa = p.omega_star / p.v_dc_star;
    const double k2 = kappa * kappa;
    return {kappa, p.c_dc / k2, p.g_dc / k2};
}

double single_rhs(double omega, double p_ac, double u, const VirtualParams& vp) {
    require_positive_frequency(omega);
    return (-vp.damping * omega - p_ac / omega + u) / vp.inertia;
}

double primary_input(double omega, double p_m, const VirtualParams& vp, double omega_star,
                     double d_tilde) {
    require_positive_frequency(omega);
    return vp.damping * omega_star + p_m / omega - d_tilde * (omega - omega_star);
}

DroopEquilibria single_equilibria(double p_load, double p_load_star, const VirtualParams& vp,
                                  double omega_star) {
    const double delta = omega_star * omega_star - 4.0 * (p_load - p_load_star) / vp.damping;
    if (!(delta > 0.0)) {
        throw InfeasibleError(InfeasibleError::Kind::DroopCapacity,
                              "no equilibrium: power mismatch exceeds droop capability");
    }
    const double root = std::sqrt(delta);
    return {0.5 * (omega_star + root), 0.5 * (omega_star - root), delta};
}

SingleState secondary_rhs_single(const SingleState& state, double p_load, const VirtualParams& vp,
                                 double omega_star) {
    require_positive_frequency(state.omega);
    const double u = vp.damping * omega_star + state.chi / state.omega;
    return {single_rhs(state.omega, p_load, u, vp), -(state.omega - omega_star) / state.omega};
}

double nominal_injection(const InverterParams& p, double p_dc_star) {
    return p_dc_star - p.g_dc * p.v_dc_star * p.v_dc_star;
}

}  // namespace icisim
