#include "icisim/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "icisim/certify.hpp"
#include "icisim/equilibrium.hpp"
#include "icisim/errors.hpp"
#include "icisim/log.hpp"
#include "icisim/report.hpp"
#include "icisim/scenario.hpp"

namespace icisim {
namespace fs = std::filesystem;

namespace {

struct Options {
    std::string scenario;
    std::string out;
    std::string mode;
    std::optional<double> step;
    std::optional<double> t_end;
    int jobs = 1;

    // lyapunov
    std::size_t draws = 10000;
    std::uint64_t seed = 20180101;
    double anchor_shift = 0.0;
    double radius_theta = 0.1;
    double radius_omega = 1.0;
    double radius_xi = -1.0;
};

std::string format(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

std::string vec_text(const Vec& v, const char* fmt, double scale = 1.0) {
    std::string s;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        s += (i ? " " : "") + format(fmt, v(i) * scale);
    }
    return s;
}

ScenarioFile load_with_overrides(const Options& o, const fs::path& path) {
    ScenarioFile s = load_scenario(path);
    if (!o.mode.empty()) s.controller.mode = parse_mode(o.mode);
    if (o.step) {
        if (!(*o.step > 0.0)) throw InputError("--h must be > 0");
        s.integrator.h_s = *o.step;
    }
    if (o.t_end) {
        if (!(*o.t_end > 0.0)) throw InputError("--t-end must be > 0");
        s.integrator.t_end_s = *o.t_end;
    }
    return s;
}

// Runs `body`, mapping the error taxonomy onto exit codes.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return kExitDomain;
    }
}

int simulate_one(const Options& o, const fs::path& scenario_path, const fs::path& out_path,
                 std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ScenarioFile s = load_with_overrides(o, scenario_path);
        const SimulationSetup setup = build_setup(s);
        log(LogLevel::Info, "simulating " + scenario_path.string() + " (" +
                                std::to_string(setup.integrator.step_count()) + " steps)");
        const auto start = std::chrono::steady_clock::now();
        const Trajectory traj = simulate(setup);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        log(LogLevel::Info, "integration took " + format("%.3f", secs) + " s");

        if (!out_path.empty()) {
            std::ofstream csv(out_path);
            if (!csv) throw InputError("cannot write '" + out_path.string() + "'");
            write_trajectory_csv(csv, traj);
        }
        out << "scenario: " << scenario_path.string() << '\n';
        if (!traj.completed()) {
            err << "domain abort at t = " << fmt12(traj.abort_time) << " s: " << *traj.abort_reason
                << '\n';
            return static_cast<int>(kExitDomain);
        }
        print_summary(out, summarize(traj, dynamic_cost(s)));
        return static_cast<int>(kExitOk);
    });
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
    const fs::path input(o.scenario);
    if (!fs::is_directory(input)) {
        return simulate_one(o, input, o.out.empty() ? fs::path() : fs::path(o.out), out, err);
    }

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(input)) {
        if (entry.is_regular_file() && entry.path().extension() == ".scenario") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    if (o.out.empty()) {
        err << "input error: --out must name a directory for batch runs\n";
        return kExitInput;
    }
    fs::create_directories(o.out);

    std::vector<std::string> outs(files.size()), errs(files.size());
    std::vector<int> codes(files.size(), 0);
    const auto count = static_cast<long long>(files.size());
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, o.jobs))
    for (long long k = 0; k < count; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        std::ostringstream so, se;
        const fs::path csv = fs::path(o.out) / (files[idx].stem().string() + ".csv");
        codes[idx] = simulate_one(o, files[idx], csv, so, se);
        outs[idx] = so.str();
        errs[idx] = se.str();
    }
    int worst = kExitOk;
    for (std::size_t k = 0; k < files.size(); ++k) {
        out << outs[k];
        err << errs[k];
        worst = std::max(worst, codes[k]);
    }
    return worst;
}

int cmd_equilibrium(const Options& o, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ScenarioFile s = load_with_overrides(o, o.scenario);
        const SimulationSetup setup = build_setup(s);
        const NetworkModel& model = setup.model;
        const Vec loads = final_loads(setup);
        const auto n = static_cast<Eigen::Index>(model.size());
        out << "mode: " << to_string(s.controller.mode) << " (post-event loads)\n";
        if (const auto* p = std::get_if<PrimaryControl>(&setup.controller)) {
            const double dn = delta_n(loads, p->setpoints, model.total_damping(), model.omega_star());
            out << "Delta_N: " << fmt12(dn) << " rad^2/s^2\n";
            const EquilibriumPrimary eq = equilibrium_primary(loads, p->setpoints, model);
            const NetworkState x(eq.theta, Vec::Constant(n, eq.omega_s));
            out << "omega_s: " << fmt12(eq.omega_s) << " rad/s ("
                << format("%.6f", eq.omega_s / (2 * kPi)) << " Hz)\n";
            out << "omega_u: " << fmt12(eq.omega_u) << " rad/s\n";
            out << "eta_s (rad): " << vec_text(eq.eta, "%.9g") << '\n';
            out << "angle residual: " << fmt12(eq.residual) << " W\n";
            out << "rhs residual: "
                << fmt12(equilibrium_residual(rhs_primary(x, loads, p->setpoints, model), model))
                << '\n';
        } else {
            const auto& c = std::get<SecondaryControl>(setup.controller);
            const EquilibriumSecondary eq = equilibrium_secondary(loads, c.cost, model);
            const NetworkState x(eq.theta, Vec::Constant(n, eq.omega), eq.xi);
            out << "omega_bar: " << fmt12(eq.omega) << " rad/s\n";
            out << "xi_bar: " << vec_text(eq.xi, "%.9g") << '\n';
            out << "P_m* (kW): " << vec_text(c.injection(eq.xi), "%.6f", 1e-3) << '\n';
            out << "eta_bar (rad): " << vec_text(eq.eta, "%.9g") << '\n';
            out << "angle residual: " << fmt12(eq.residual) << " W\n";
            out << "rhs residual: "
                << fmt12(equilibrium_residual(rhs_secondary(x, loads, c, model), model)) << '\n';
        }
        return static_cast<int>(kExitOk);
    });
}

int cmd_lyapunov(const Options& o, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ScenarioFile s = load_with_overrides(o, o.scenario);
        const SimulationSetup setup = build_setup(s);
        CertifyOptions opts;
        opts.draws = o.draws;
        opts.seed = o.seed;
        opts.anchor_omega_shift = o.anchor_shift;
        opts.ball.theta = o.radius_theta;
        opts.ball.omega = o.radius_omega;
        opts.ball.xi = o.radius_xi;
        const Certification c = certify(setup, opts);

        auto verdict = [](bool ok) { return ok ? "PASS" : "FAIL"; };
        out << "energy: " << (c.kind == EnergyKind::Primary ? "V_s (primary)" : "W_s (secondary)")
            << '\n';
        out << "anchor residual: " << fmt12(c.anchor_residual) << " [" << verdict(c.anchor_ok())
            << "]\n";
        out << "grad V_s at anchor (FD): " << fmt12(c.anchor_gradient) << " ["
            << verdict(c.gradient_ok()) << "]\n";
        out << "grad V_s at simulated rest point: " << fmt12(c.rest_gradient) << '\n';
        out << "min second difference: " << fmt12(c.min_second_difference) << " ["
            << verdict(c.min_second_difference > 0.0) << "]\n";
        out << "positivity: " << c.positivity.draws - c.positivity.violations << "/"
            << c.positivity.draws << " draws, min V_s " << fmt12(c.positivity.min_value) << " ["
            << verdict(c.positivity.pass()) << "]\n";
        out << "decrease: max increment " << fmt12(c.decrease.max_increment) << " (tolerance "
            << fmt12(c.decrease.tolerance) << ", start inside ball: "
            << (c.decrease.starts_inside ? "yes" : "no") << ") [" << verdict(c.decrease.pass)
            << "]\n";
        out << "certification: " << verdict(c.pass()) << '\n';
        return static_cast<int>(kExitOk);
    });
}

int cmd_dispatch(const Options& o, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ScenarioFile s = load_with_overrides(o, o.scenario);
        const SimulationSetup setup = build_setup(s, ControlMode::Secondary);
        const Vec loads = final_loads(setup);
        const Vec cost = dynamic_cost(s);
        const Vec p = optimal_injection(loads, cost);
        out << "total load: " << format("%.6f", loads.sum() / 1e3) << " kW\n";
        out << "node,q_cost,p_m_star_kW,share\n";
        for (Eigen::Index i = 0; i < p.size(); ++i) {
            out << i + 1 << ',' << fmt12(s.nodes[static_cast<std::size_t>(i)].q_cost) << ','
                << format("%.6f", p(i) / 1e3) << ',' << format("%.6f", p(i) / p.sum()) << '\n';
        }
        return static_cast<int>(kExitOk);
    });
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Inverters with capacitive inertia: simulation and stability analysis", "icisim"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        // --h is the step size, so help is long-form only
        sub->set_help_flag("--help", "print this help and exit");
        sub->add_option("--scenario", o.scenario, "scenario file (JSON)")->required();
        sub->add_option("--mode", o.mode, "primary|secondary (overrides the scenario)");
        sub->add_option("--h", o.step, "integration step in s");
        sub->add_option("--t-end", o.t_end, "horizon in s");
    };
    auto* sim = app.add_subcommand("simulate", "integrate a scenario and write the trajectory CSV");
    add_common(sim);
    sim->add_option("--out", o.out, "CSV path (directory for batch runs)");
    sim->add_option("--jobs", o.jobs, "parallel scenarios for batch directories");

    auto* eq = app.add_subcommand("equilibrium", "equilibrium of the post-event loads");
    add_common(eq);
    auto* lyap = app.add_subcommand("lyapunov", "numerical Lyapunov certification");
    add_common(lyap);
    lyap->add_option("--draws", o.draws, "positivity sample count");
    lyap->add_option("--seed", o.seed, "sampling seed");
    lyap->add_option("--anchor-shift", o.anchor_shift, "offset added to the anchor frequency (rad/s)");
    lyap->add_option("--radius-theta", o.radius_theta, "ball radius for angles (rad)");
    lyap->add_option("--radius-omega", o.radius_omega, "ball radius for frequencies (rad/s)");
    lyap->add_option("--radius-xi", o.radius_xi, "ball radius for controller states (<0: 1% of xi_bar)");
    auto* disp = app.add_subcommand("dispatch", "optimal injections for the post-event loads");
    add_common(disp);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "input error: " << e.what() << '\n';
        return kExitInput;
    }

    if (sim->parsed()) return cmd_simulate(o, out, err);
    if (eq->parsed()) return cmd_equilibrium(o, out, err);
    if (lyap->parsed()) return cmd_lyapunov(o, out, err);
    return cmd_dispatch(o, out, err);
}

}  // namespace icisim
