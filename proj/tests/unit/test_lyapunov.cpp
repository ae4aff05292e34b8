#include <catch_amalgamated.hpp>

#include <random>

#include "fixtures.hpp"
#include "icisim/errors.hpp"
#include "icisim/lyapunov.hpp"
#include "icisim/simulation.hpp"

using namespace icisim;
using Catch::Approx;

namespace {

Vec sample_x(bool with_xi) {
    Vec x(with_xi ? 15 : 10);
    x.head(5) << 0.01, 0.02, -0.01, 0.03, -0.05;
    x.segment(5, 5) << 314.0, 315.0, 316.0, 317.0, 318.0;
    if (with_xi) x.tail(5) << 1.0, 2.0, 3.0, 4.0, 5.0;
    return x;
}

double max_abs(const Vec& v) { return v.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("energy values at a fixed point", "[lyapunov]") {
    const NetworkModel model = fixtures::table1_model();
    const EnergyFunction v(EnergyKind::Primary, 312.307049089, model);
    CHECK(v.dimension() == 10);
    CHECK(v.value(sample_x(false)) == Approx(-5982.086774017462).epsilon(1e-12));
    const EnergyFunction w(EnergyKind::Secondary, model.omega_star(), model);
    CHECK(w.dimension() == 15);
    CHECK(w.value(sample_x(true)) == Approx(-5870.685043160824).epsilon(1e-12));
}

TEST_CASE("energy gradient and divergence", "[lyapunov]") {
    const NetworkModel model = fixtures::table1_model();
    const EnergyFunction w(EnergyKind::Secondary, model.omega_star(), model);
    const Vec x = sample_x(true);
    const Vec g = w.gradient(x);
    Vec probe = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double h = 1e-5;
        probe(i) = x(i) + h;
        const double up = w.value(probe);
        probe(i) = x(i) - h;
        const double down = w.value(probe);
        probe(i) = x(i);
        CHECK(g(i) == Approx((up - down) / (2 * h)).epsilon(1e-6).margin(1e-5));
    }

    std::mt19937_64 rng(53);
    for (int k = 0; k < 200; ++k) {
        Vec y = x;
        y.head(5) += fixtures::uniform(rng, 5, -0.2, 0.2);
        y.segment(5, 5) += fixtures::uniform(rng, 5, -3.0, 3.0);
        y.tail(5) += fixtures::uniform(rng, 5, -3.0, 3.0);
        const double naive = w.value(y) - (y - x).dot(g) - w.value(x);
        CHECK(w.divergence(y, x) == Approx(naive).epsilon(1e-6).margin(1e-8));
    }
    CHECK(w.divergence(x, x) == 0.0);
}

TEST_CASE("coordinates map absolute angles to edge angles", "[lyapunov]") {
    const NetworkModel model = fixtures::table1_model();
    const EnergyFunction w(EnergyKind::Secondary, model.omega_star(), model);
    Vec theta(5);
    theta << 0.0, 0.1, 0.2, 0.3, 0.4;
    const NetworkState s(theta, Vec::Constant(5, 314.0), Vec::Constant(5, 2.0));
    const Vec x = w.coordinates(s);
    CHECK(x.size() == 15);
    CHECK((x.head(5) - model.edge_angles(theta)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((x.tail(5).array() == 2.0).all());
}

TEST_CASE("shifted energy at its anchor", "[lyapunov]") {
    const NetworkModel model = fixtures::table1_model();
    const Vec loads = fixtures::table1_post_step_loads();

    SECTION("primary") {
        const EquilibriumPrimary eq = equilibrium_primary(loads, fixtures::table1_loads(), model);
        const ShiftedEnergy vs = ShiftedEnergy::primary(eq, model);
        CHECK(vs(vs.anchor()) == 0.0);
        CHECK(max_abs(vs.gradient(vs.anchor_coordinates())) == 0.0);
        CHECK(max_abs(finite_difference_gradient(vs, vs.anchor_coordinates(), 1e-4)) <= 1e-6);
        CHECK(second_differences(vs, 1e-3).minCoeff() > 0.0);
    }
    SECTION("secondary") {
        const EquilibriumSecondary eq = equilibrium_secondary(loads, fixtures::table1_costs(), model);
        const ShiftedEnergy vs = ShiftedEnergy::secondary(eq, model);
        CHECK(vs(vs.anchor()) == 0.0);
        CHECK(max_abs(finite_difference_gradient(vs, vs.anchor_coordinates(), 1e-4)) <= 1e-6);
        CHECK(second_differences(vs, 1e-3).minCoeff() > 0.0);
    }
}

TEST_CASE("shifted energy gradient matches finite differences away from the anchor", "[lyapunov]") {
    const NetworkModel model = fixtures::table1_model();
    const EquilibriumSecondary eq =
        equilibrium_secondary(fixtures::table1_post_step_loads(), fixtures::table1_costs(), model);
    const ShiftedEnergy vs = ShiftedEnergy::secondary(eq, model);
    std::mt19937_64 rng(59);
    for (int k = 0; k < 50; ++k) {
        Vec x = vs.anchor_coordinates();
        x.head(5) += fixtures::uniform(rng, 5, -0.1, 0.1);
        x.segment(5, 5) += fixtures::uniform(rng, 5, -1.0, 1.0);
        x.tail(5) += fixtures::uniform(rng, 5, -1.0, 1.0);
        const Vec analytic = vs.gradient(x);
        const Vec numeric = finite_difference_gradient(vs, x, 1e-5);
        CHECK(max_abs(analytic - numeric) <= 1e-5 * std::max(1.0, max_abs(analytic)));
    }
}

TEST_CASE("neighbourhood radii", "[lyapunov]") {
    const NetworkState anchor(Vec::Zero(3), Vec::Constant(3, 314.0), Vec::Constant(3, -200.0));
    const Neighborhood r = Neighborhood{}.resolved(anchor);
    CHECK(r.xi == Approx(2.0));
    CHECK_THROWS_AS((Neighborhood{0.0, 1.0, 1.0}.resolved(anchor)), InputError);
    CHECK_THROWS_AS((Neighborhood{0.1, -1.0, 1.0}.resolved(anchor)), InputError);
    CHECK_THROWS_WITH((Neighborhood{0.1, 1.0, -1.0}.resolved(
                          NetworkState(Vec::Zero(3), Vec::Constant(3, 314.0), Vec::Zero(3)))),
                      Catch::Matchers::ContainsSubstring("degenerate neighborhood"));

    NetworkState inside = anchor;
    inside.theta()(1) = 0.09;
    inside.omega()(2) += 0.99;
    CHECK(r.contains(anchor, inside));
    NetworkState outside = inside;
    outside.xi()(0) += 2.5;
    CHECK_FALSE(r.contains(anchor, outside));
}

TEST_CASE("decrease check along a short secondary response", "[lyapunov]") {
    const NetworkModel model = fixtures::table1_model();
    const Vec q = fixtures::table1_costs() * 0.031622776601683794;
    SimulationSetup setup{model,
                          fixtures::table1_loads(),
                          SecondaryControl{q, laplacian(fixtures::table1_comm())},
                          {{0.0, 0, 11e3}, {0.0, 2, 14.85e3}, {0.0, 4, 27.5e3}},
                          {5e-5, 0.5, 20, 1.0},
                          std::nullopt};
    const Trajectory traj = simulate(setup);
    REQUIRE(traj.completed());
    const EquilibriumSecondary eq = equilibrium_secondary(final_loads(setup), q, model);
    const ShiftedEnergy vs = ShiftedEnergy::secondary(eq, model);
    const DecreaseReport report = check_decrease(traj, vs, Neighborhood{});
    CHECK(report.pass);
    CHECK(report.values.size() == traj.sample_count());
    CHECK(report.values.back() < report.values.front());

    SECTION("an aborted trajectory is refused") {
        Trajectory broken = traj;
        broken.abort_reason = "frequency left positive half-line";
        CHECK_THROWS_AS(check_decrease(broken, vs, Neighborhood{}), DomainError);
    }
}
