// nemfilm: solvers for nematic axisymmetric films spanning two coaxial rings.
//
// Subcommands: constants | classify | catenary | solve | minimize | sweep |
// mesh | envelope | director-check. All file outputs are deterministic
// (12 significant digits, atomic write-then-rename).
//
// Exit codes: 0 success, 2 usage/parse error, 3 no solution, 4 certification
// failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nemfilm/catenary.hpp"
#include "nemfilm/elsolver.hpp"
#include "nemfilm/energy.hpp"
#include "nemfilm/geometry.hpp"
#include "nemfilm/io.hpp"
#include "nemfilm/minimizer.hpp"
#include "nemfilm/profile.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace nemfilm;

namespace {

struct Opts {
    double h = 1.0;
    double r = 3.5;
    double c = 0.0;
    double step = 0.0;    // 0 -> solver default 2h/8000
    double tol = 1e-12;
    double gamma = 1.0;
    double kappa = 0.0;
    double alpha0 = 0.0;
    double gtol = 0.0;  // 0 = scale-aware default
    int nodes = 401;      // node count; cells = nodes - 1 must be even
    int azimuthal = 128;
    int nphi = 128;
    int iters = 20000;
    int envelope_every = 25;
    std::string out = ".";
    std::string config;
    std::string input;
    std::string which = "stable";
    std::string init = "catenary";
    std::string alpha_mode = "constant";
    std::string source = "catenary";
    std::string c_list = "0,1,2,10,30,100";
};

// Defers config-file values to flags given on the command line. The same
// variable may back options of several subcommands; a config value applies
// only when no flag anywhere set it.
class ConfigBinder {
  public:
    template <typename T>
    void bind(CLI::Option* opt, std::string key, T* target) {
        if (key.empty()) return;
        auto it = index_.find(target);
        if (it != index_.end()) {
            entries_[it->second].opts.push_back(opt);
            return;
        }
        index_[target] = entries_.size();
        Entry e;
        e.opts.push_back(opt);
        e.apply = [key = std::move(key), target](const json& j) {
            if (j.contains(key)) *target = j.at(key).get<T>();
        };
        entries_.push_back(std::move(e));
    }
    void apply(const json& j) const {
        for (const Entry& e : entries_) {
            bool set_by_flag = false;
            for (const CLI::Option* opt : e.opts)
                if (opt->count() > 0) set_by_flag = true;
            if (!set_by_flag) e.apply(j);
        }
    }

  private:
    struct Entry {
        std::vector<CLI::Option*> opts;
        std::function<void(const json&)> apply;
    };
    std::vector<Entry> entries_;
    std::map<void*, size_t> index_;
};

void apply_config(const Opts& opts, const ConfigBinder& binder) {
    if (opts.config.empty()) return;
    std::ifstream is(opts.config);
    if (!is) throw std::invalid_argument("cannot open config file " + opts.config);
    json j = json::parse(is);  // throws json::parse_error on malformed input
    if (!j.contains("schema") || j.at("schema") != 1)
        throw std::invalid_argument("config file must declare \"schema\": 1");
    binder.apply(j);
}

int cells_from_nodes(int nodes) {
    if (nodes < 3 || (nodes - 1) % 2 != 0)
        throw std::invalid_argument("--nodes must be odd and >= 3 (so x = 0 is a node)");
    return nodes - 1;
}

void warn_standing_assumption(const Parameters& params) {
    if (params.outside_standing_assumption())
        std::cerr << "warning: h/r = " << format_sig(params.ratio())
                  << " exceeds omega = " << format_sig(model_constants().omega)
                  << "; outside the standing assumption h/r <= omega, results are best-effort\n";
}

void write_file(const fs::path& dir, const std::string& name, const std::string& content) {
    fs::create_directories(dir);
    atomic_write(dir / name, content);
}

std::vector<double> parse_c_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t pos = 0;
        double v = std::stod(item, &pos);
        if (pos != item.size())
            throw std::invalid_argument("bad entry in c list: '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty c list");
    return out;
}

ProfileCurve profile_from_source(const Opts& o) {
    if (o.source == "csv") {
        if (o.input.empty()) throw std::invalid_argument("--source csv requires --input");
        std::ifstream is(o.input);
        if (!is) throw std::invalid_argument("cannot open " + o.input);
        return read_profile_csv(is);
    }
    int cells = cells_from_nodes(o.nodes);
    Grid g(o.h, cells);
    if (o.source == "chord") return constant_profile(g, o.r);
    if (o.source == "catenary") {
        CatenarySolution sol = solve_pi(o.h, o.r, o.tol);
        if (!sol.has_roots())
            throw no_solution_error("no catenary spans the rings (regime " +
                                    std::string(to_string(sol.regime)) + ")");
        return sample_catenary(g, catenary_profile(sol, Branch::stable));
    }
    if (o.source == "solve") {
        Parameters params(o.h, o.r, o.c);
        warn_standing_assumption(params);
        return shoot(params, o.tol, o.step).to_profile(cells);
    }
    if (o.source == "minimize") {
        Parameters params(o.h, o.r, o.c);
        warn_standing_assumption(params);
        MinimizeOptions mo;
        mo.n_cells = cells;
        return minimize(params, mo).profile;
    }
    throw std::invalid_argument("unknown --source '" + o.source + "'");
}

int cmd_constants(const Opts& o) {
    ModelConstants k = compute_constants(o.tol > 1e-6 ? 1e-12 : o.tol);
    std::cout << JsonWriter()
                     .field("xi_star", k.xi_star)
                     .field("omega", k.omega)
                     .field("phi_min", k.phi_min)
                     .field("phi_argmin", k.phi_argmin)
                     .field("inv_phi_min", 1.0 / k.phi_min)
                     .field("z0", k.z0)
                     .field("beta", k.beta)
                     .str();
    return 0;
}

int cmd_classify(const Opts& o) {
    CatenarySolution sol = solve_pi(o.h, o.r, o.tol);
    JsonWriter w;
    w.field("h", o.h).field("r", o.r).field("ratio", sol.ratio);
    w.field("regime", to_string(sol.regime));
    w.field("goldschmidt", o.r * o.r);
    if (sol.pi0) {
        w.field("pi0", *sol.pi0).field("e0_stable", e0_closed_form(o.h, o.r, *sol.pi0));
        w.field("pi1", *sol.pi1).field("e0_unstable", e0_closed_form(o.h, o.r, *sol.pi1));
    }
    std::cout << w.str();
    return 0;
}

int cmd_catenary(const Opts& o) {
    CatenarySolution sol = solve_pi(o.h, o.r, o.tol);
    Branch branch = (o.which == "unstable") ? Branch::unstable : Branch::stable;
    if (!sol.has_roots())
        throw no_solution_error("no catenary spans the rings (regime " +
                                std::string(to_string(sol.regime)) + ")");
    CatenaryProfile prof = catenary_profile(sol, branch);
    ProfileCurve p = sample_catenary(Grid(o.h, cells_from_nodes(o.nodes)), prof);

    std::ostringstream csv;
    write_profile_csv(csv, p);
    write_file(o.out, "profile.csv", csv.str());

    std::string summary = JsonWriter()
                              .field("h", o.h)
                              .field("r", o.r)
                              .field("which", o.which)
                              .field("pi", prof.pi)
                              .field("e0", e0_closed_form(o.h, o.r, prof.pi))
                              .field("regime", to_string(sol.regime))
                              .str();
    write_file(o.out, "summary.json", summary);
    std::cout << summary;
    return 0;
}

int cmd_solve(const Opts& o) {
    Parameters params(o.h, o.r, o.c);
    warn_standing_assumption(params);
    ShootingSolution sol = shoot(params, o.tol, o.step);

    std::ostringstream profile_csv;
    write_profile_csv(profile_csv, sol.to_profile(cells_from_nodes(o.nodes)));
    write_file(o.out, "profile.csv", profile_csv.str());

    std::ostringstream traj_csv;
    write_trajectory_csv(traj_csv, sol);
    write_file(o.out, "trajectory.csv", traj_csv.str());

    std::string summary = JsonWriter()
                              .field("h", o.h)
                              .field("r", o.r)
                              .field("c", o.c)
                              .field("apex", sol.apex)
                              .field("boundary_residual", sol.boundary_residual)
                              .field("max_slope", sol.max_slope)
                              .field("drift", sol.drift)
                              .field("n_roots", static_cast<int>(sol.all_apexes.size()))
                              .field("outside_standing_assumption",
                                     params.outside_standing_assumption())
                              .str();
    write_file(o.out, "summary.json", summary);
    std::cout << summary;
    return 0;
}

int cmd_minimize(const Opts& o) {
    Parameters params(o.h, o.r, o.c);
    warn_standing_assumption(params);
    MinimizeOptions mo;
    mo.n_cells = cells_from_nodes(o.nodes);
    mo.max_iters = o.iters;
    mo.grad_tol = o.gtol;
    mo.envelope_every = o.envelope_every;
    if (o.init == "chord")
        mo.init = InitProfile::chord;
    else if (o.init != "catenary")
        throw std::invalid_argument("--init must be catenary or chord");

    MinimizeResult res = minimize(params, mo);
    TheoremChecklist chk = verify_theorem_properties(res, params);

    std::ostringstream csv;
    write_profile_csv(csv, res.profile);
    write_file(o.out, "profile.csv", csv.str());

    std::string checklist = JsonWriter()
                                .field("h", o.h)
                                .field("r", o.r)
                                .field("c", o.c)
                                .field("converged", res.converged)
                                .field("iterations", res.iterations)
                                .field("grad_sup", res.grad_sup)
                                .raw_field("energy", energy_json(res.energy))
                                .field("evenness_ok", chk.evenness_ok)
                                .field("evenness_sup", chk.evenness_sup)
                                .field("convexity_ok", chk.convexity_ok)
                                .field("min_second_diff", chk.min_second_diff)
                                .field("barrier_applicable", chk.barrier_applicable)
                                .field("barrier_ok", chk.barrier_ok)
                                .field("barrier_margin_low", chk.barrier_margin_low)
                                .field("barrier_margin_high", chk.barrier_margin_high)
                                .field("el_ok", chk.el_ok)
                                .field("el_residual", chk.el_res)
                                .field("drift", chk.drift)
                                .field("all_ok", chk.all_ok())
                                .str();
    write_file(o.out, "checklist.json", checklist);
    std::cout << checklist;
    return res.converged ? 0 : 4;
}

int cmd_sweep(const Opts& o) {
    Parameters base(o.h, o.r, 0.0);
    warn_standing_assumption(base);
    std::vector<double> cs = parse_c_list(o.c_list);
    MinimizeOptions mo;
    mo.n_cells = cells_from_nodes(o.nodes);
    mo.max_iters = o.iters;
    mo.grad_tol = o.gtol;
    std::vector<SweepEntry> entries = sweep_c(base, cs, mo);

    std::ostringstream csv;
    write_sweep_csv(csv, entries);
    write_file(o.out, "sweep.csv", csv.str());
    std::cout << csv.str();
    for (const SweepEntry& e : entries)
        if (!e.ok) return 4;
    return 0;
}

int cmd_mesh(const Opts& o) {
    ProfileCurve p = profile_from_source(o);
    RevolutionMesh m = build_mesh(p, o.azimuthal);
    std::ostringstream obj;
    write_obj(obj, m);
    write_file(o.out, "mesh.obj", obj.str());

    std::ostringstream curv;
    write_curvature_csv(curv, curvatures(p));
    write_file(o.out, "curvature.csv", curv.str());

    std::cout << JsonWriter()
                     .field("vertices", static_cast<int>(m.vertices.size()))
                     .field("faces", static_cast<int>(m.faces.size()))
                     .field("file", (fs::path(o.out) / "mesh.obj").string())
                     .field("curvature_file", (fs::path(o.out) / "curvature.csv").string())
                     .str();
    return 0;
}

int cmd_envelope(const Opts& o) {
    if (o.input.empty()) throw std::invalid_argument("envelope requires --input profile.csv");
    std::ifstream is(o.input);
    if (!is) throw std::invalid_argument("cannot open " + o.input);
    ProfileCurve p = read_profile_csv(is);
    ProfileCurve env = convex_envelope(p);

    std::ostringstream csv;
    write_profile_csv(csv, env);
    write_file(o.out, "envelope.csv", csv.str());

    std::cout << JsonWriter()
                     .field("c", o.c)
                     .field("energy_before", evaluate(p, o.c).total)
                     .field("energy_after", evaluate(env, o.c).total)
                     .str();
    return 0;
}

int cmd_director_check(const Opts& o) {
    ProfileCurve p = profile_from_source(o);
    PhysicalParams phys(o.gamma, o.kappa);

    auto alpha = [&](double x, double phi) -> double {
        if (o.alpha_mode == "constant") return o.alpha0;
        if (o.alpha_mode == "sin-phi") return std::sin(phi);
        if (o.alpha_mode == "mixed") return 0.3 * x + 0.2 * std::cos(phi);
        throw std::invalid_argument("--alpha-mode must be constant, sin-phi or mixed");
    };
    DirectorField field = DirectorField::from_function(p.grid(), alpha, o.nphi);
    DirectorEnergy d = director_energy(p, field, phys);
    EnergyBreakdown e = evaluate(p, phys.c());

    std::cout << JsonWriter()
                     .field("alpha_mode", o.alpha_mode)
                     .field("gamma", o.gamma)
                     .field("kappa", o.kappa)
                     .field("c", phys.c())
                     .field("i1", d.i1)
                     .field("i2", d.i2)
                     .field("i3", d.i3)
                     .field("i4", d.i4)
                     .field("total", d.total)
                     .field("two_pi_gamma_ec", 2.0 * std::numbers::pi * o.gamma * e.total)
                     .str();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nemfilm: variational solvers for nematic axisymmetric films"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help");  // frees -h for the --h flag

    Opts o;
    ConfigBinder binder;

    auto make_sub = [&](const std::string& name, const std::string& desc) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->set_help_flag("--help", "print help");
        return sub;
    };

    auto add_common = [&](CLI::App* sub, bool with_instance) {
        binder.bind(sub->add_option("--config", o.config, "JSON config file (schema 1)"),
                    "", &o.config);  // config path itself never comes from config
        if (with_instance) {
            binder.bind(sub->add_option("--h", o.h, "half-distance between the rings"), "h", &o.h);
            binder.bind(sub->add_option("--r", o.r, "ring radius"), "r", &o.r);
            binder.bind(sub->add_option("--c", o.c, "nematic coupling kappa/(2 gamma)"), "c", &o.c);
        }
        binder.bind(sub->add_option("--tol", o.tol, "root tolerance"), "tol", &o.tol);
        binder.bind(sub->add_option("--out", o.out, "output directory"), "out", &o.out);
        binder.bind(sub->add_option("--nodes", o.nodes, "node count (odd)"), "nodes", &o.nodes);
    };

    CLI::App* constants = make_sub("constants", "print the model constants");
    binder.bind(constants->add_option("--tol", o.tol, "root tolerance"), "tol", &o.tol);

    CLI::App* classify = make_sub("classify", "classify the (h, r) regime");
    binder.bind(classify->add_option("--h", o.h, "half-distance"), "h", &o.h);
    binder.bind(classify->add_option("--r", o.r, "ring radius"), "r", &o.r);
    binder.bind(classify->add_option("--tol", o.tol, "root tolerance"), "tol", &o.tol);
    binder.bind(classify->add_option("--config", o.config, "JSON config file"), "", &o.config);

    CLI::App* catenary = make_sub("catenary", "sample a catenary profile");
    add_common(catenary, true);
    binder.bind(catenary->add_option("--which", o.which, "stable | unstable"), "which", &o.which);

    CLI::App* solve = make_sub("solve", "shoot the Euler-Lagrange problem");
    add_common(solve, true);
    binder.bind(solve->add_option("--step", o.step, "RK4 step (default 2h/8000)"), "step", &o.step);

    CLI::App* minimize_ = make_sub("minimize", "direct energy minimization");
    add_common(minimize_, true);
    binder.bind(minimize_->add_option("--iters", o.iters, "max iterations"), "iters", &o.iters);
    binder.bind(minimize_->add_option("--gtol", o.gtol, "gradient sup-norm tolerance"), "gtol",
                &o.gtol);
    binder.bind(minimize_->add_option("--envelope-every", o.envelope_every,
                                      "envelope projection cadence"),
                "envelope_every", &o.envelope_every);
    binder.bind(minimize_->add_option("--init", o.init, "catenary | chord"), "init", &o.init);

    CLI::App* sweep = make_sub("sweep", "minimize across a list of c values");
    add_common(sweep, false);
    binder.bind(sweep->add_option("--h", o.h, "half-distance between the rings"), "h", &o.h);
    binder.bind(sweep->add_option("--r", o.r, "ring radius"), "r", &o.r);
    binder.bind(sweep->add_option("--c", o.c_list, "comma-separated c values"), "c_list",
                &o.c_list);
    binder.bind(sweep->add_option("--iters", o.iters, "max iterations"), "iters", &o.iters);
    binder.bind(sweep->add_option("--gtol", o.gtol, "gradient tolerance"), "gtol", &o.gtol);

    CLI::App* mesh = make_sub("mesh", "export the revolution surface mesh");
    add_common(mesh, true);
    binder.bind(mesh->add_option("--azimuthal", o.azimuthal, "azimuthal segments (>= 8)"),
                "azimuthal", &o.azimuthal);
    binder.bind(mesh->add_option("--source", o.source, "catenary | chord | solve | minimize | csv"),
                "source", &o.source);
    binder.bind(mesh->add_option("--input", o.input, "profile CSV for --source csv"), "input",
                &o.input);
    binder.bind(mesh->add_option("--step", o.step, "RK4 step for --source solve"), "step", &o.step);

    CLI::App* envelope = make_sub("envelope", "convex envelope of a profile CSV");
    binder.bind(envelope->add_option("--input", o.input, "input profile CSV"), "input", &o.input);
    binder.bind(envelope->add_option("--c", o.c, "coupling for the energy report"), "c", &o.c);
    binder.bind(envelope->add_option("--out", o.out, "output directory"), "out", &o.out);
    binder.bind(envelope->add_option("--config", o.config, "JSON config file"), "", &o.config);

    CLI::App* director = make_sub("director-check", "evaluate the director energy");
    add_common(director, true);
    binder.bind(director->add_option("--gamma", o.gamma, "surface tension"), "gamma", &o.gamma);
    binder.bind(director->add_option("--kappa", o.kappa, "nematic constant"), "kappa", &o.kappa);
    binder.bind(director->add_option("--alpha-mode", o.alpha_mode, "constant | sin-phi | mixed"),
                "alpha_mode", &o.alpha_mode);
    binder.bind(director->add_option("--alpha0", o.alpha0, "angle for --alpha-mode constant"),
                "alpha0", &o.alpha0);
    binder.bind(director->add_option("--nphi", o.nphi, "azimuthal sample cells"), "nphi", &o.nphi);
    binder.bind(director->add_option("--source", o.source, "catenary | chord | solve | csv"),
                "source", &o.source);
    binder.bind(director->add_option("--input", o.input, "profile CSV for --source csv"), "input",
                &o.input);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        apply_config(o, binder);
        if (app.got_subcommand(constants)) return cmd_constants(o);
        if (app.got_subcommand(classify)) return cmd_classify(o);
        if (app.got_subcommand(catenary)) return cmd_catenary(o);
        if (app.got_subcommand(solve)) return cmd_solve(o);
        if (app.got_subcommand(minimize_)) return cmd_minimize(o);
        if (app.got_subcommand(sweep)) return cmd_sweep(o);
        if (app.got_subcommand(mesh)) return cmd_mesh(o);
        if (app.got_subcommand(envelope)) return cmd_envelope(o);
        if (app.got_subcommand(director)) return cmd_director_check(o);
    } catch (const no_solution_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const certification_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
