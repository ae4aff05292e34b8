#pragma once

namespace icisim {

/// Physical DC-side parameters of one inverter with capacitive inertia (SI).
struct InverterParams {
    double c_dc;        // F
    double g_dc;        // S
    double v_dc_star;   // V
    double omega_star;  // rad/s
};

/// Swing-equation coefficients seen from the AC side.
/// inertia = c_dc / kappa^2, damping = g_dc / kappa^2.
struct VirtualParams {
    double kappa;    // rad/(s V)
    double inertia;  // W s^2 / rad^2
    double damping;  // W s / rad^2
};

/// Frequency and secondary integrator state of a single inverter.
struct SingleState {
    double omega;    // rad/s
    double chi = 0;  // W
};

struct DroopEquilibria {
    double stable;        // omega_s
    double unstable;      // omega_u
    double discriminant;  // Delta, rad^2/s^2
};

VirtualParams derive_virtual_params(const InverterParams& p);

/// d(omega)/dt of J w' = -D w - P_ac / w + u. Throws DomainError if omega <= 0.
double single_rhs(double omega, double p_ac, double u, const VirtualParams& vp);

/// Primary control input u = D w* + P_m / w - d_tilde (w - w*).
/// The extra proportional term raises the closed-loop damping to D + d_tilde.
double primary_input(double omega, double p_m, const VirtualParams& vp, double omega_star,
                     double d_tilde = 0.0);

/// Roots of D w (w - w*) = P_l* - P_l. Throws InfeasibleError when Delta <= 0.
DroopEquilibria single_equilibria(double p_load, double p_load_star, const VirtualParams& vp,
                                  double omega_star);

/// Time derivative of (omega, chi) under the integral controller
/// chi' = -(w - w*)/w, u = D w* + chi / w, with a constant power load.
SingleState secondary_rhs_single(const SingleState& state, double p_load, const VirtualParams& vp,
                                 double omega_star);

/// P_m = P*_dc - G_dc v*_dc^2.
double nominal_injection(const InverterParams& p, double p_dc_star);

}  // namespace icisim
