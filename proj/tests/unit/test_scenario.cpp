#include <catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "icisim/errors.hpp"
#include "icisim/scenario.hpp"

using namespace icisim;
using Catch::Approx;
using Catch::Matchers::ContainsSubstring;
using nlohmann::json;

namespace {

const std::string kDir = ICISIM_SCENARIO_DIR;

json table1_json() { return to_json(load_scenario(kDir + "/table1.scenario")); }

std::string error_of(const json& doc) {
    try {
        parse_scenario(doc);
    } catch (const InputError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("shipped scenario loads and converts to SI", "[scenario]") {
    const ScenarioFile s = load_scenario(kDir + "/table1.scenario");
    REQUIRE(s.node_count() == 5);
    CHECK(s.edges.size() == 5);
    CHECK(s.comm_edges.size() == 4);
    CHECK(s.controller.mode == ControlMode::Secondary);
    CHECK(s.controller.q_scale == kDefaultCostScale);
    CHECK(s.omega_star() == Approx(fixtures::kOmegaStar).epsilon(1e-15));

    const NetworkModel model = build_model(s);
    const NetworkModel reference = fixtures::table1_model();
    CHECK((model.inertia() - reference.inertia()).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK((model.gamma() - reference.gamma()).cwiseAbs().maxCoeff() <= 1e-6);
    CHECK((initial_loads_w(s) - fixtures::table1_loads()).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK((setpoints_w(s) - fixtures::table1_loads()).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK((dynamic_cost(s) - fixtures::table1_costs() * kDefaultCostScale).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK((laplacian(build_comm_graph(s)) - laplacian(fixtures::table1_comm())).cwiseAbs().maxCoeff() == 0.0);

    const SimulationSetup setup = build_setup(s);
    CHECK(std::holds_alternative<SecondaryControl>(setup.controller));
    CHECK((final_loads(setup) - fixtures::table1_post_step_loads()).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK(setup.integrator.step == 5e-5);
    CHECK(std::holds_alternative<PrimaryControl>(build_setup(s, ControlMode::Primary).controller));
}

TEST_CASE("scenario JSON round trip", "[scenario]") {
    for (const char* name : {"/table1.scenario", "/single_ici.scenario"}) {
        const ScenarioFile s = load_scenario(kDir + name);
        CHECK(parse_scenario(to_json(s)) == s);
        CHECK(parse_scenario_text(to_json(s).dump(2)) == s);
    }
    json doc = table1_json();
    doc["controller"]["d_tilde"] = {0.1, 0.2, 0.3, 0.4, 0.5};
    doc["controller"]["p_m_star_kW"] = {10, 12, 14, 16, 18};
    doc["comm_edges"][0]["weight"] = 2.5;
    const ScenarioFile s = parse_scenario(doc);
    CHECK(parse_scenario(to_json(s)) == s);
}

TEST_CASE("controller options", "[scenario]") {
    json doc = table1_json();
    doc["controller"]["d_tilde"] = 0.3;
    doc["controller"]["p_m_star_kW"] = {10, 12, 14, 16, 18};
    doc["controller"]["mode"] = "primary";
    const ScenarioFile s = parse_scenario(doc);
    CHECK(s.controller.d_tilde == std::vector<double>(5, 0.3));
    const SimulationSetup setup = build_setup(s);
    CHECK((setup.model.total_damping() - setup.model.damping()).cwiseAbs().minCoeff() == Approx(0.3));
    CHECK(std::get<PrimaryControl>(setup.controller).setpoints(4) == Approx(18e3));
    CHECK_THROWS_AS(parse_mode("tertiary"), InputError);
}

TEST_CASE("schema violations name the offending key", "[scenario]") {
    json doc = table1_json();
    doc["_note"] = "ignored";
    doc["topology"]["nodes"][0]["_why"] = "ignored";
    CHECK(error_of(doc).empty());

    SECTION("unknown key") {
        doc["integrator"]["method"] = "euler";
        CHECK_THAT(error_of(doc), ContainsSubstring("integrator.method: unknown key"));
    }
    SECTION("missing key") {
        doc["topology"]["nodes"][2].erase("c_dc_mF");
        CHECK_THAT(error_of(doc), ContainsSubstring("topology.nodes[2].c_dc_mF: missing required key"));
    }
    SECTION("non-positive reactance") {
        doc["topology"]["edges"][1]["reactance_ohm"] = 0.0;
        CHECK_THAT(error_of(doc), ContainsSubstring("reactance must be > 0 on edge 2 (2-3)"));
    }
    SECTION("node index out of range") {
        doc["events"][0]["node"] = 6;
        CHECK_THAT(error_of(doc), ContainsSubstring("events[0].node: node index 6 outside 1..5"));
    }
    SECTION("wrong list length") {
        doc["controller"]["d_tilde"] = {0.1, 0.2};
        CHECK_THAT(error_of(doc), ContainsSubstring("expected 5 entries"));
    }
    SECTION("negative extra damping") {
        doc["controller"]["d_tilde"] = -0.1;
        CHECK_THAT(error_of(doc), ContainsSubstring("must be >= 0"));
    }
    SECTION("event after the horizon") {
        doc["events"][0]["t_s"] = 25.0;
        CHECK_THAT(error_of(doc), ContainsSubstring("after t_end_s"));
    }
    SECTION("bad mode") {
        doc["controller"]["mode"] = "tertiary";
        CHECK_THAT(error_of(doc), ContainsSubstring("controller.mode"));
    }
}

TEST_CASE("topology errors surface when the model is built", "[scenario]") {
    json doc = table1_json();
    doc["topology"]["edges"] = json::array({{{"i", 1}, {"j", 2}, {"reactance_ohm", 0.1}}});
    CHECK_THROWS_AS(build_model(parse_scenario(doc)), InputError);
    doc = table1_json();
    doc["comm_edges"] = json::array({{{"i", 1}, {"j", 2}}});
    CHECK_THROWS_WITH(build_setup(parse_scenario(doc)), ContainsSubstring("not connected"));
}

TEST_CASE("unreadable input", "[scenario]") {
    CHECK_THROWS_AS(load_scenario(kDir + "/missing.scenario"), InputError);
    CHECK_THROWS_AS(parse_scenario_text("{ not json"), InputError);
}
