#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "icisim/equilibrium.hpp"
#include "icisim/errors.hpp"

using namespace icisim;
using Catch::Approx;

TEST_CASE("post-step synchronous frequencies", "[equilibrium]") {
    const NetworkModel model = fixtures::table1_model();
    const double d = delta_n(fixtures::table1_post_step_loads(), fixtures::table1_loads(), model.damping(),
                             model.omega_star());
    CHECK(d == Approx(96382.2032208).epsilon(1e-10));
    const SyncFrequencies f = sync_frequencies(d, model.omega_star());
    CHECK(f.stable == Approx(312.307049089).epsilon(1e-10));
    CHECK(f.unstable == Approx(1.8522162699).epsilon(1e-8));
}

TEST_CASE("sync frequencies satisfy Vieta's identities", "[equilibrium][property]") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(1.0, 9.8e4);
    const double w = fixtures::kOmegaStar;
    for (int k = 0; k < 1000; ++k) {
        const double d = dist(rng);
        const SyncFrequencies f = sync_frequencies(d, w);
        CHECK(f.stable + f.unstable == Approx(w).epsilon(1e-13));
        CHECK(f.stable * f.unstable == Approx((w * w - d) / 4).epsilon(1e-9));
        CHECK(f.stable > f.unstable);
    }
}

TEST_CASE("no synchronous equilibrium without a positive discriminant", "[equilibrium]") {
    CHECK_THROWS_AS(sync_frequencies(0.0, 314.0), InfeasibleError);
    CHECK_THROWS_AS(sync_frequencies(-1.0, 314.0), InfeasibleError);
    try {
        sync_frequencies(-1.0, 314.0);
    } catch (const InfeasibleError& e) {
        CHECK(e.kind() == InfeasibleError::Kind::DroopCapacity);
    }
    // a mismatch larger than w*^2 D / 4 exhausts the droop capability
    const NetworkModel model = fixtures::table1_model();
    const double limit = model.omega_star() * model.omega_star() * model.damping().sum() / 4;
    Vec loads = fixtures::table1_loads();
    loads(0) += 1.01 * limit;
    CHECK_THROWS_AS(equilibrium_primary(loads, fixtures::table1_loads(), model), InfeasibleError);
}

TEST_CASE("angle solve", "[equilibrium]") {
    const Mat b = incidence_matrix(GridTopology(2, {{0, 1}}, {1.0}, {1.0, 1.0}));
    const Vec gamma = Vec::Constant(1, 1000.0);

    SECTION("zero target gives zero angles") {
        const Vec theta = solve_angles(Vec::Zero(2), b, gamma);
        CHECK(theta.cwiseAbs().maxCoeff() == 0.0);
    }
    SECTION("single edge matches arcsine") {
        Vec r(2);
        r << -300.0, 300.0;
        const Vec theta = solve_angles(r, b, gamma);
        CHECK(theta(0) == 0.0);
        CHECK(theta(1) == Approx(std::asin(0.3)).epsilon(1e-12));
        CHECK(std::asin(0.3) == Approx(0.304692654).epsilon(1e-9));
    }
    SECTION("transfer beyond the line capacity is infeasible") {
        Vec r(2);
        r << -1500.0, 1500.0;
        try {
            solve_angles(r, b, gamma);
            FAIL("expected InfeasibleError");
        } catch (const InfeasibleError& e) {
            CHECK(e.kind() == InfeasibleError::Kind::SecurityConstraint);
        }
    }
    SECTION("unbalanced target is rejected") {
        Vec r(2);
        r << 10.0, 0.0;
        try {
            solve_angles(r, b, gamma);
            FAIL("expected InfeasibleError");
        } catch (const InfeasibleError& e) {
            CHECK(e.kind() == InfeasibleError::Kind::UnbalancedTarget);
        }
    }
}

TEST_CASE("ring angle solve reproduces random balanced flows", "[equilibrium][property]") {
    const NetworkModel model = fixtures::table1_model();
    std::mt19937_64 rng(41);
    for (int k = 0; k < 200; ++k) {
        Vec theta = fixtures::uniform(rng, 5, -0.2, 0.2);
        theta(0) = 0.0;
        const Vec r = line_power(theta, model.incidence(), model.gamma());
        const Vec solved = solve_angles(r, model.incidence(), model.gamma());
        CHECK((line_power(solved, model.incidence(), model.gamma()) - r).cwiseAbs().maxCoeff() <= 1e-6);
        CHECK(model.edge_angles(solved).cwiseAbs().maxCoeff() < kHalfPi);
    }
}

TEST_CASE("primary equilibrium", "[equilibrium]") {
    const NetworkModel model = fixtures::table1_model();
    const EquilibriumPrimary eq =
        equilibrium_primary(fixtures::table1_post_step_loads(), fixtures::table1_loads(), model);
    CHECK(eq.omega_s == Approx(312.307049089).epsilon(1e-10));
    CHECK(eq.theta(0) == 0.0);
    CHECK(eq.residual <= 1e-6);
    CHECK(eq.eta.cwiseAbs().maxCoeff() < kHalfPi);

    SECTION("balanced loads sit at nominal frequency with zero angles") {
        const EquilibriumPrimary nominal =
            equilibrium_primary(fixtures::table1_loads(), fixtures::table1_loads(), model);
        CHECK(nominal.omega_s == Approx(model.omega_star()).epsilon(1e-14));
        CHECK(nominal.theta.cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("optimal dispatch", "[equilibrium]") {
    const Vec p = optimal_injection(fixtures::table1_post_step_loads(), fixtures::table1_costs());
    const double expected[] = {5442.7776, 10885.5552, 16041.8708, 21771.1104, 27708.686};
    for (int i = 0; i < 5; ++i) CHECK(p(i) == Approx(expected[i]).epsilon(1e-7));
    CHECK(p.sum() == Approx(fixtures::table1_post_step_loads().sum()).epsilon(1e-14));

    SECTION("marginal costs are equal") {
        const Vec marginal = fixtures::table1_costs().cwiseProduct(p);
        CHECK(marginal.maxCoeff() - marginal.minCoeff() <= 1e-9 * marginal.mean());
    }
    SECTION("no feasible redistribution is cheaper") {
        const Vec q = fixtures::table1_costs();
        const double best = p.dot(q.cwiseProduct(p));
        std::mt19937_64 rng(43);
        for (int k = 0; k < 500; ++k) {
            Vec d = fixtures::uniform(rng, 5, -500.0, 500.0);
            d.array() -= d.mean();
            const Vec other = p + d;
            CHECK(other.dot(q.cwiseProduct(other)) >= best);
        }
    }
    SECTION("invariant to cost scaling") {
        const Vec scaled = optimal_injection(fixtures::table1_post_step_loads(), 1e-6 * fixtures::table1_costs());
        CHECK((scaled - p).cwiseAbs().maxCoeff() <= 1e-8);
    }
    SECTION("non-positive cost is an input error") {
        Vec q = fixtures::table1_costs();
        q(2) = 0.0;
        CHECK_THROWS_AS(optimal_injection(fixtures::table1_loads(), q), InputError);
    }
}

TEST_CASE("secondary equilibrium", "[equilibrium]") {
    const NetworkModel model = fixtures::table1_model();
    const Vec q = fixtures::table1_costs();
    const Vec loads = fixtures::table1_post_step_loads();
    const EquilibriumSecondary eq = equilibrium_secondary(loads, q, model);
    CHECK(eq.omega == model.omega_star());
    CHECK(eq.residual <= 1e-6);
    // xi agrees across nodes and reproduces the optimal dispatch
    CHECK(eq.xi.maxCoeff() - eq.xi.minCoeff() <= 1e-9 * eq.xi.maxCoeff());
    const Vec p = eq.xi.cwiseQuotient(q);
    CHECK((p - optimal_injection(loads, q)).cwiseAbs().maxCoeff() <= 1e-6);

    const NetworkState x(eq.theta, Vec::Constant(5, eq.omega), eq.xi);
    const SecondaryControl control{q, laplacian(fixtures::table1_comm())};
    CHECK(equilibrium_residual(rhs_secondary(x, loads, control, model), model) <= 1e-8);
}
