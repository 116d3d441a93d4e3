// plectic: verification suites and the string simulator over spec files.
//
// Subcommands:
//   verify           plectic certificates, bracket laws, Lie 2-algebra suites
//   lie2             coherence + homomorphism suites only
//   bracket          print a hemi/semi bracket of two named forms
//   string sim       integrate the worldsheet, write CSV + summary
//   string residual  per-slice multisymplectic residual series
//
// Exit codes: 0 all checks pass, 1 verification failure or numeric
// abort, 2 malformed spec / bad arguments.

#include "plectic/workbench.hpp"

#include "support/rk4_reference.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

namespace {

struct CommonOpts {
    std::string spec_path;
    int samples = 20;
    double tol = 1e-9;
    std::uint64_t seed = 0;
    int jobs = 1;
    std::string out_path;
    bool samples_set = false;
    bool tol_set = false;
    bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--spec", o.spec_path, "spec file")->required();
    cmd->add_option("--samples", o.samples, "sample points for numeric checks")
        ->each([&o](const std::string&) { o.samples_set = true; });
    cmd->add_option("--tol", o.tol, "zero-test tolerance")
        ->each([&o](const std::string&) { o.tol_set = true; });
    cmd->add_option("--seed", o.seed, "RNG seed")
        ->each([&o](const std::string&) { o.seed_set = true; });
    cmd->add_option("--jobs", o.jobs, "parallel workers for sample-point checks");
    cmd->add_option("--out", o.out_path, "write the report/CSV to this file");
}

plectic::Workbench load(const CommonOpts& o) {
    auto spec = plectic::SpecFile::parse_file(o.spec_path);
    plectic::SampleConfig cfg = plectic::sample_config_from(spec);
    if (o.samples_set) cfg.points = o.samples;
    if (o.tol_set) cfg.tol = o.tol;
    if (o.seed_set) cfg.seed = o.seed;
    cfg.jobs = o.jobs;
    return plectic::build_workbench(spec, cfg);
}

void write_output(const CommonOpts& o, const std::string& text) {
    if (o.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(o.out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + o.out_path);
    out << text;
}

plectic::Point parse_point(const std::string& text) {
    plectic::Point p;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("bad --point entry '" + item + "' (need name=value)");
        p[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    }
    return p;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"2-plectic geometry workbench and bosonic string simulator"};
    app.require_subcommand(1);

    CommonOpts opts;

    auto* verify = app.add_subcommand("verify", "run all verification suites");
    add_common(verify, opts);

    auto* lie2 = app.add_subcommand("lie2", "Lie 2-algebra suites only");
    add_common(lie2, opts);

    auto* bracket = app.add_subcommand("bracket", "print a bracket of two named forms");
    add_common(bracket, opts);
    std::string kind = "hemi", fname, gname, point_text;
    bracket->add_option("--kind", kind, "hemi | semi")
        ->check(CLI::IsMember({"hemi", "semi"}));
    bracket->add_option("--f", fname, "name of F in [forms]")->required();
    bracket->add_option("--g", gname, "name of G in [forms]")->required();
    bracket->add_option("--point", point_text, "evaluate coefficients at x=..,y=..");

    auto* string_cmd = app.add_subcommand("string", "worldsheet simulator");
    string_cmd->require_subcommand(1);
    auto* sim = string_cmd->add_subcommand("sim", "integrate and write CSV + summary");
    add_common(sim, opts);
    int refine = 1;
    bool crosscheck = false;
    sim->add_option("--refine", refine, "refinement levels for the convergence study");
    sim->add_flag("--crosscheck", crosscheck,
                  "compare against the fourth-order reference integrator");
    auto* residual = string_cmd->add_subcommand("residual", "bivector residual series");
    add_common(residual, opts);

    CLI11_PARSE(app, argc, argv);

    const auto started = std::chrono::steady_clock::now();
    int exit_code = 0;
    try {
        if (verify->parsed() || lie2->parsed()) {
            auto w = load(opts);
            auto reports = verify->parsed() ? plectic::run_verify(w) : plectic::run_lie2(w);
            write_output(opts, plectic::reports_to_string(reports));
            exit_code = plectic::reports_passed(reports) ? 0 : 1;
        } else if (bracket->parsed()) {
            auto w = load(opts);
            std::optional<plectic::Point> pt;
            if (!point_text.empty()) pt = parse_point(point_text);
            auto out = plectic::run_bracket(w, kind, fname, gname, pt);
            write_output(opts, out.text);
            exit_code = out.ok ? 0 : 1;
        } else if (sim->parsed()) {
            auto w = load(opts);
            auto result = plectic::run_string_sim(w, refine);
            if (crosscheck) {
                const auto& sp = w.string_params;
                const double ds = 2.0 * M_PI / sp.nsigma;
                const double dt = sp.dt > 0 ? sp.dt : ds / 2;
                const int steps = sp.steps > 0
                                      ? sp.steps
                                      : static_cast<int>(std::llround(2.0 * M_PI / dt));
                std::optional<plectic::BField> B;
                std::optional<plectic::KalbRamondForce> force;
                if (sp.bfield_literal) {
                    B = plectic::make_bfield(sp.d, *sp.bfield_literal);
                    force.emplace(*B, sp.d);
                }
                auto s0 = plectic::detail::initial_state(sp, sp.nsigma);
                std::vector<plectic::WorldsheetState> ours{s0};
                for (int i = 0; i < steps; ++i)
                    ours.push_back(plectic::step(ours.back(), dt, force ? &*force : nullptr));
                auto ref =
                    plectic::testing::rk4_trajectory(s0, dt, steps, force ? &*force : nullptr);
                auto rep = plectic::euler_lagrange_crosscheck(ours, ref);
                plectic::CheckEntry e;
                e.id = "crosscheck-max-difference";
                e.verdict.kind = plectic::ZeroVerdict::Kind::Sampled;
                e.verdict.max_abs = rep.max_difference;
                result.report.entries.push_back(e);
            }
            write_output(opts, result.csv);
            std::cout << result.report.to_string();
            exit_code = 0;
        } else if (residual->parsed()) {
            auto w = load(opts);
            auto result = plectic::run_string_residual(w);
            write_output(opts, result.csv);
            std::cout << result.report.to_string();
            exit_code = 0;
        }
    } catch (const plectic::SpecError& e) {
        std::cerr << "spec error: " << e.what() << "\n";
        return 2;
    } catch (const plectic::ParseError& e) {
        std::cerr << "expression error: " << e.what() << "\n";
        return 2;
    } catch (const plectic::CflError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const plectic::CertificationError& e) {
        std::cerr << "certification failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    const auto elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started);
    std::cerr << "wall time: " << elapsed.count() << " s\n";
    return exit_code;
}
