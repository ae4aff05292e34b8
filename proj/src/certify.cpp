#include "icisim/certify.hpp"

#include <variant>

#include "icisim/equilibrium.hpp"
#include "icisim/errors.hpp"

namespace icisim {

Certification certify(const SimulationSetup& setup, const CertifyOptions& options) {
    if (options.draws == 0) {
        throw InputError("certify: at least one sample draw is required");
    }
    Certification cert;
    cert.options = options;

    const NetworkModel& model = setup.model;
    const Vec loads = final_loads(setup);

    std::optional<ShiftedEnergy> vs;
    NetworkState derivative;
    if (const auto* p = std::get_if<PrimaryControl>(&setup.controller)) {
        cert.kind = EnergyKind::Primary;
        EquilibriumPrimary eq = equilibrium_primary(loads, p->setpoints, model);
        eq.omega_s += options.anchor_omega_shift;
        vs.emplace(ShiftedEnergy::primary(eq, model));
        derivative = rhs_primary(vs->anchor(), loads, p->setpoints, model);
    } else {
        const auto& c = std::get<SecondaryControl>(setup.controller);
        cert.kind = EnergyKind::Secondary;
        EquilibriumSecondary eq = equilibrium_secondary(loads, c.cost, model);
        eq.omega += options.anchor_omega_shift;
        vs.emplace(ShiftedEnergy::secondary(eq, model));
        derivative = rhs_secondary(vs->anchor(), loads, c, model);
    }
    cert.anchor_residual = equilibrium_residual(derivative, model);

    const Neighborhood ball = options.ball.resolved(vs->anchor());
    cert.anchor_gradient = finite_difference_gradient(*vs, vs->anchor_coordinates(),
                                                      options.gradient_step)
                               .cwiseAbs()
                               .maxCoeff();
    cert.min_second_difference = second_differences(*vs, 1e-3).minCoeff();

    const auto draws = draw_perturbations(vs->anchor(), ball, options.draws, options.seed);
    cert.positivity = options.parallel ? certify_positive_parallel(*vs, draws)
                                       : certify_positive_serial(*vs, draws);

    const Trajectory traj = simulate(setup);
    cert.decrease = check_decrease(traj, *vs, ball, options.rel_tol);
    const Vec x_end = vs->energy().coordinates(traj.state(traj.sample_count() - 1));
    cert.rest_gradient = vs->gradient(x_end).cwiseAbs().maxCoeff();
    return cert;
}

}  // namespace icisim
