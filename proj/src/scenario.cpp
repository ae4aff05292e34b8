#include "icisim/scenario.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include "icisim/errors.hpp"

namespace icisim {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw InputError(path + ": " + msg);
}

// Keys starting with '_' are free-form comments.
void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) fail(path, "expected an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& item : obj.items()) {
        if (!item.key().empty() && item.key()[0] == '_') continue;
        if (!ok.count(item.key())) fail(path + "." + item.key(), "unknown key");
    }
}

const json& require(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key)) fail(path + "." + key, "missing required key");
    return obj.at(key);
}

double number(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(path, "must be finite");
    return x;
}

double positive(const json& v, const std::string& path) {
    const double x = number(v, path);
    if (!(x > 0.0)) fail(path, "must be > 0");
    return x;
}

std::size_t index(const json& v, const std::string& path, std::size_t nodes) {
    if (!v.is_number_integer()) fail(path, "expected an integer node index");
    const auto i = v.get<long long>();
    if (i < 1 || static_cast<std::size_t>(i) > nodes) {
        fail(path, "node index " + std::to_string(i) + " outside 1.." + std::to_string(nodes));
    }
    return static_cast<std::size_t>(i);
}

std::vector<double> number_list(const json& v, const std::string& path, std::size_t expected) {
    if (!v.is_array()) fail(path, "expected an array");
    if (v.size() != expected) {
        fail(path, "expected " + std::to_string(expected) + " entries, got " + std::to_string(v.size()));
    }
    std::vector<double> out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        out.push_back(number(v[k], path + "[" + std::to_string(k) + "]"));
    }
    return out;
}

std::string at(const std::string& path, std::size_t k) {
    return path + "[" + std::to_string(k) + "]";
}

}  // namespace

const char* to_string(ControlMode mode) {
    return mode == ControlMode::Primary ? "primary" : "secondary";
}

ControlMode parse_mode(const std::string& text) {
    if (text == "primary") return ControlMode::Primary;
    if (text == "secondary") return ControlMode::Secondary;
    throw InputError("mode must be 'primary' or 'secondary', got '" + text + "'");
}

double ScenarioFile::omega_star() const { return 2.0 * kPi * f_hz; }

ScenarioFile parse_scenario(const json& doc) {
    ScenarioFile s;
    check_keys(doc, "scenario", {"nominal", "topology", "comm_edges", "controller", "events", "integrator"});

    if (doc.contains("nominal")) {
        const json& nominal = doc.at("nominal");
        check_keys(nominal, "nominal", {"f_hz"});
        s.f_hz = positive(require(nominal, "nominal", "f_hz"), "nominal.f_hz");
    }

    const json& topo = require(doc, "scenario", "topology");
    check_keys(topo, "topology", {"nodes", "edges"});
    const json& nodes = require(topo, "topology", "nodes");
    if (!nodes.is_array() || nodes.empty()) fail("topology.nodes", "expected a non-empty array");
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const std::string p = at("topology.nodes", k);
        const json& nd = nodes[k];
        check_keys(nd, p, {"vmag_V", "v_dc_star_kV", "c_dc_mF", "g_dc_S", "q_cost", "p_load_kW"});
        NodeSpec spec{};
        spec.vmag_V = positive(require(nd, p, "vmag_V"), p + ".vmag_V");
        spec.v_dc_star_kV = positive(require(nd, p, "v_dc_star_kV"), p + ".v_dc_star_kV");
        spec.c_dc_mF = positive(require(nd, p, "c_dc_mF"), p + ".c_dc_mF");
        spec.g_dc_S = positive(require(nd, p, "g_dc_S"), p + ".g_dc_S");
        spec.q_cost = positive(require(nd, p, "q_cost"), p + ".q_cost");
        spec.p_load_kW = number(require(nd, p, "p_load_kW"), p + ".p_load_kW");
        s.nodes.push_back(spec);
    }
    const std::size_t n = s.nodes.size();

    const json& edges = topo.contains("edges") ? topo.at("edges") : json::array();
    if (!edges.is_array()) fail("topology.edges", "expected an array");
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const std::string p = at("topology.edges", k);
        check_keys(edges[k], p, {"i", "j", "reactance_ohm"});
        LineSpec line{};
        line.i = index(require(edges[k], p, "i"), p + ".i", n);
        line.j = index(require(edges[k], p, "j"), p + ".j", n);
        const double x = number(require(edges[k], p, "reactance_ohm"), p + ".reactance_ohm");
        if (!(x > 0.0)) {
            fail(p + ".reactance_ohm", "reactance must be > 0 on edge " + std::to_string(k + 1) +
                                           " (" + std::to_string(line.i) + "-" +
                                           std::to_string(line.j) + ")");
        }
        line.reactance_ohm = x;
        s.edges.push_back(line);
    }

    if (doc.contains("comm_edges")) {
        const json& comm = doc.at("comm_edges");
        if (!comm.is_array()) fail("comm_edges", "expected an array");
        for (std::size_t k = 0; k < comm.size(); ++k) {
            const std::string p = at("comm_edges", k);
            check_keys(comm[k], p, {"i", "j", "weight"});
            CommLinkSpec link{};
            link.i = index(require(comm[k], p, "i"), p + ".i", n);
            link.j = index(require(comm[k], p, "j"), p + ".j", n);
            link.weight = comm[k].contains("weight") ? positive(comm[k].at("weight"), p + ".weight") : 1.0;
            s.comm_edges.push_back(link);
        }
    }

    if (doc.contains("controller")) {
        const json& c = doc.at("controller");
        check_keys(c, "controller", {"mode", "p_m_star_kW", "d_tilde", "q_scale"});
        if (c.contains("mode")) {
            if (!c.at("mode").is_string()) fail("controller.mode", "expected a string");
            try {
                s.controller.mode = parse_mode(c.at("mode").get<std::string>());
            } catch (const InputError& e) {
                fail("controller.mode", e.what());
            }
        }
        if (c.contains("p_m_star_kW")) {
            s.controller.p_m_star_kW = number_list(c.at("p_m_star_kW"), "controller.p_m_star_kW", n);
        }
        if (c.contains("d_tilde")) {
            const json& d = c.at("d_tilde");
            if (d.is_number()) {
                s.controller.d_tilde.assign(n, number(d, "controller.d_tilde"));
            } else {
                s.controller.d_tilde = number_list(d, "controller.d_tilde", n);
            }
            for (std::size_t k = 0; k < n; ++k) {
                if (s.controller.d_tilde[k] < 0.0) fail(at("controller.d_tilde", k), "must be >= 0");
            }
        }
        if (c.contains("q_scale")) {
            s.controller.q_scale = positive(c.at("q_scale"), "controller.q_scale");
        }
    }

    if (doc.contains("events")) {
        const json& ev = doc.at("events");
        if (!ev.is_array()) fail("events", "expected an array");
        for (std::size_t k = 0; k < ev.size(); ++k) {
            const std::string p = at("events", k);
            check_keys(ev[k], p, {"t_s", "node", "new_load_kW"});
            EventSpec e{};
            e.t_s = number(require(ev[k], p, "t_s"), p + ".t_s");
            if (e.t_s < 0.0) fail(p + ".t_s", "must be >= 0");
            e.node = index(require(ev[k], p, "node"), p + ".node", n);
            e.new_load_kW = number(require(ev[k], p, "new_load_kW"), p + ".new_load_kW");
            s.events.push_back(e);
        }
    }

    if (doc.contains("integrator")) {
        const json& in = doc.at("integrator");
        check_keys(in, "integrator", {"h_s", "t_end_s", "record_every", "omega_min"});
        if (in.contains("h_s")) s.integrator.h_s = positive(in.at("h_s"), "integrator.h_s");
        if (in.contains("t_end_s")) s.integrator.t_end_s = positive(in.at("t_end_s"), "integrator.t_end_s");
        if (in.contains("record_every")) {
            const json& r = in.at("record_every");
            if (!r.is_number_integer() || r.get<long long>() < 1) {
                fail("integrator.record_every", "expected an integer >= 1");
            }
            s.integrator.record_every = r.get<std::size_t>();
        }
        if (in.contains("omega_min")) {
            s.integrator.omega_min = number(in.at("omega_min"), "integrator.omega_min");
            if (s.integrator.omega_min < 0.0) fail("integrator.omega_min", "must be >= 0");
        }
    }
    for (std::size_t k = 0; k < s.events.size(); ++k) {
        if (s.events[k].t_s > s.integrator.t_end_s) fail(at("events", k) + ".t_s", "after t_end_s");
    }
    return s;
}

ScenarioFile parse_scenario_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("scenario: ") + e.what());
    }
    return parse_scenario(doc);
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open scenario file '" + path.string() + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_scenario_text(buf.str());
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

json to_json(const ScenarioFile& s) {
    json doc;
    doc["nominal"] = {{"f_hz", s.f_hz}};
    json nodes = json::array();
    for (const auto& nd : s.nodes) {
        nodes.push_back({{"vmag_V", nd.vmag_V},
                         {"v_dc_star_kV", nd.v_dc_star_kV},
                         {"c_dc_mF", nd.c_dc_mF},
                         {"g_dc_S", nd.g_dc_S},
                         {"q_cost", nd.q_cost},
                         {"p_load_kW", nd.p_load_kW}});
    }
    json edges = json::array();
    for (const auto& e : s.edges) {
        edges.push_back({{"i", e.i}, {"j", e.j}, {"reactance_ohm", e.reactance_ohm}});
    }
    doc["topology"] = {{"nodes", nodes}, {"edges", edges}};
    json comm = json::array();
    for (const auto& c : s.comm_edges) {
        comm.push_back({{"i", c.i}, {"j", c.j}, {"weight", c.weight}});
    }
    doc["comm_edges"] = comm;
    json ctrl = {{"mode", to_string(s.controller.mode)}, {"q_scale", s.controller.q_scale}};
    if (!s.controller.p_m_star_kW.empty()) ctrl["p_m_star_kW"] = s.controller.p_m_star_kW;
    if (!s.controller.d_tilde.empty()) ctrl["d_tilde"] = s.controller.d_tilde;
    doc["controller"] = ctrl;
    json events = json::array();
    for (const auto& e : s.events) {
        events.push_back({{"t_s", e.t_s}, {"node", e.node}, {"new_load_kW", e.new_load_kW}});
    }
    doc["events"] = events;
    doc["integrator"] = {{"h_s", s.integrator.h_s},
                         {"t_end_s", s.integrator.t_end_s},
                         {"record_every", s.integrator.record_every},
                         {"omega_min", s.integrator.omega_min}};
    return doc;
}

NetworkModel build_model(const ScenarioFile& s) {
    std::vector<Edge> edges;
    std::vector<double> reactance;
    for (const auto& e : s.edges) {
        edges.push_back({e.i - 1, e.j - 1});
        reactance.push_back(e.reactance_ohm);
    }
    std::vector<double> vmag;
    std::vector<InverterParams> inverters;
    for (const auto& nd : s.nodes) {
        vmag.push_back(nd.vmag_V);
        inverters.push_back({nd.c_dc_mF * 1e-3, nd.g_dc_S, nd.v_dc_star_kV * 1e3, s.omega_star()});
    }
    Vec extra;
    if (!s.controller.d_tilde.empty()) {
        extra = Eigen::Map<const Vec>(s.controller.d_tilde.data(),
                                      static_cast<Eigen::Index>(s.controller.d_tilde.size()));
    }
    return NetworkModel(GridTopology(s.node_count(), std::move(edges), std::move(reactance),
                                     std::move(vmag)),
                        inverters, s.omega_star(), extra);
}

Vec initial_loads_w(const ScenarioFile& s) {
    Vec loads(static_cast<Eigen::Index>(s.node_count()));
    for (std::size_t i = 0; i < s.node_count(); ++i) {
        loads(static_cast<Eigen::Index>(i)) = s.nodes[i].p_load_kW * 1e3;
    }
    return loads;
}

Vec dynamic_cost(const ScenarioFile& s) {
    Vec q(static_cast<Eigen::Index>(s.node_count()));
    for (std::size_t i = 0; i < s.node_count(); ++i) {
        q(static_cast<Eigen::Index>(i)) = s.nodes[i].q_cost * s.controller.q_scale;
    }
    return q;
}

Vec setpoints_w(const ScenarioFile& s) {
    if (s.controller.p_m_star_kW.empty()) {
        return initial_loads_w(s);
    }
    Vec p(static_cast<Eigen::Index>(s.node_count()));
    for (std::size_t i = 0; i < s.node_count(); ++i) {
        p(static_cast<Eigen::Index>(i)) = s.controller.p_m_star_kW[i] * 1e3;
    }
    return p;
}

CommGraph build_comm_graph(const ScenarioFile& s) {
    std::vector<Edge> links;
    std::vector<double> weights;
    for (const auto& c : s.comm_edges) {
        links.push_back({c.i - 1, c.j - 1});
        weights.push_back(c.weight);
    }
    return CommGraph(s.node_count(), std::move(links), std::move(weights));
}

SimulationSetup build_setup(const ScenarioFile& s, std::optional<ControlMode> mode) {
    const ControlMode m = mode.value_or(s.controller.mode);
    ControllerMode controller;
    if (m == ControlMode::Primary) {
        controller = PrimaryControl{setpoints_w(s)};
    } else {
        controller = SecondaryControl{dynamic_cost(s), laplacian(build_comm_graph(s))};
    }
    std::vector<LoadEvent> events;
    for (const auto& e : s.events) {
        events.push_back({e.t_s, e.node - 1, e.new_load_kW * 1e3});
    }
    IntegratorConfig cfg;
    cfg.step = s.integrator.h_s;
    cfg.t_end = s.integrator.t_end_s;
    cfg.record_every = s.integrator.record_every;
    cfg.omega_min = s.integrator.omega_min;
    return SimulationSetup{build_model(s), initial_loads_w(s), std::move(controller),
                           std::move(events), cfg, std::nullopt};
}

}  // namespace icisim
