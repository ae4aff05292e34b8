#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "icisim/network.hpp"
#include "icisim/simulation.hpp"

namespace icisim {

/// Cost scale applied to the file's q (in $/kW^2 h) to obtain the Q used in
/// the controller dynamics. 1/sqrt(1000) makes the W-valued closed loop
/// identical to running the consensus integrator on kW-valued injections.
inline constexpr double kDefaultCostScale = 0.031622776601683794;

enum class ControlMode { Primary, Secondary };

const char* to_string(ControlMode mode);
ControlMode parse_mode(const std::string& text);

// File-side records; units follow the key suffixes.
struct NodeSpec {
    double vmag_V;
    double v_dc_star_kV;
    double c_dc_mF;
    double g_dc_S;
    double q_cost;
    double p_load_kW;
    bool operator==(const NodeSpec&) const = default;
};

struct LineSpec {
    std::size_t i;  // 1-based
    std::size_t j;
    double reactance_ohm;
    bool operator==(const LineSpec&) const = default;
};

struct CommLinkSpec {
    std::size_t i;
    std::size_t j;
    double weight = 1.0;
    bool operator==(const CommLinkSpec&) const = default;
};

struct ControllerSpec {
    ControlMode mode = ControlMode::Secondary;
    std::vector<double> p_m_star_kW;  // empty: pre-event loads
    std::vector<double> d_tilde;      // empty: no extra damping
    double q_scale = kDefaultCostScale;
    bool operator==(const ControllerSpec&) const = default;
};

struct EventSpec {
    double t_s;
    std::size_t node;  // 1-based
    double new_load_kW;
    bool operator==(const EventSpec&) const = default;
};

struct IntegratorSpec {
    double h_s = 5e-5;
    double t_end_s = 20.0;
    std::size_t record_every = 20;
    double omega_min = 1.0;
    bool operator==(const IntegratorSpec&) const = default;
};

struct ScenarioFile {
    double f_hz = 50.0;
    std::vector<NodeSpec> nodes;
    std::vector<LineSpec> edges;
    std::vector<CommLinkSpec> comm_edges;
    ControllerSpec controller;
    std::vector<EventSpec> events;
    IntegratorSpec integrator;
    bool operator==(const ScenarioFile&) const = default;

    double omega_star() const;
    std::size_t node_count() const { return nodes.size(); }
};

/// Validates against the schema; errors name the offending key path.
ScenarioFile parse_scenario(const nlohmann::json& doc);
ScenarioFile parse_scenario_text(const std::string& text);
ScenarioFile load_scenario(const std::filesystem::path& path);
nlohmann::json to_json(const ScenarioFile& scenario);

// Conversion to SI model objects.
NetworkModel build_model(const ScenarioFile& scenario);
Vec initial_loads_w(const ScenarioFile& scenario);
Vec dynamic_cost(const ScenarioFile& scenario);
Vec setpoints_w(const ScenarioFile& scenario);
CommGraph build_comm_graph(const ScenarioFile& scenario);
SimulationSetup build_setup(const ScenarioFile& scenario, std::optional<ControlMode> mode = {});

}  // namespace icisim
