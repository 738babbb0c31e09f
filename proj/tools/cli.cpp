#include "cli.hpp"

#include "recteig/config.hpp"
#include "recteig/report.hpp"
#include "recteig/scenarios.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace recteig::cli {

namespace {

struct Common {
    int example = 0;
    std::string config_path;
    std::string out;
    std::string solver;
};

RunConfig resolve_config(const Common& c)
{
    RunConfig cfg;
    if (!c.config_path.empty()) {
        cfg = load_config(c.config_path);
        if (c.example != 0 && c.example != cfg.example) {
            throw std::invalid_argument("--example disagrees with the config file");
        }
    } else if (c.example != 0) {
        cfg.example = c.example;
    } else {
        throw std::invalid_argument("give --example or --config");
    }
    if (!c.solver.empty()) cfg.solver = c.solver;
    default_params(cfg.example);  // rejects unknown ids
    return cfg;
}

// Writes `text` to `path`, or to `fallback` when no path is given.
void emit(const std::string& path, const std::string& text, std::ostream& fallback)
{
    if (path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot write '" + path + "'");
    f << text;
}

int cmd_run(const Common& c, const std::string& format, bool with_reference, std::ostream& out)
{
    const RunConfig cfg = resolve_config(c);
    const Scenario scenario = build_example(cfg.example, cfg.overrides);
    const RunResult result = run_scenario(scenario, run_options(cfg));
    std::optional<ReferenceSpectrum> ref;
    if (with_reference) ref = reference_for(build_example(cfg.example));
    const RunReport report = make_report(scenario, result, ref, cfg);

    if (format == "csv") {
        std::ostringstream os;
        write_report_csv(os, report);
        emit(c.out, os.str(), out);
    } else {
        emit(c.out, report_json(report), out);
    }
    return ok;
}

int cmd_sweep(int fig, const std::string& out_dir, std::ostream& out, std::ostream& err)
{
    const SweepResult sweep = fig == 1 ? sweep_fig1() : sweep_fig6();
    const std::filesystem::path dir = out_dir.empty() ? "." : out_dir;
    std::filesystem::create_directories(dir);
    for (const auto& curve : sweep.curves) {
        const auto path = dir / ("fig" + std::to_string(fig) + "_" + curve.name + ".csv");
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::invalid_argument("cannot write '" + path.string() + "'");
        write_curve_csv(f, curve);
        out << path.string() << '\n';
    }
    for (const auto& note : sweep.notes) err << "note: " << note << '\n';
    return ok;
}

int cmd_eval(const Common& c, std::size_t mode, double spacing, std::ostream& out)
{
    const RunConfig cfg = resolve_config(c);
    if (mode < 1) throw std::invalid_argument("--mode is 1-based");
    if (!(spacing > 0.0)) throw std::invalid_argument("--spacing must be positive");
    const Scenario scenario = build_example(cfg.example, cfg.overrides);
    const RunResult result = run_scenario(scenario, run_options(cfg));

    const Mode* chosen = nullptr;
    std::size_t seen = 0;
    for (const auto& m : result.spectrum.modes) {
        if (m.spurious) continue;
        if (++seen == mode) {
            chosen = &m;
            break;
        }
    }
    if (!chosen) {
        throw std::invalid_argument("--mode " + std::to_string(mode) + " is beyond the " + std::to_string(seen) +
                                    " computed modes");
    }

    const auto& family = scenario.problem.basis.family;
    std::ostringstream os;
    os.precision(17);
    if (const auto* iv = std::get_if<Interval>(&scenario.domain)) {
        const auto count = static_cast<std::size_t>(std::floor((iv->b - iv->a) / spacing + 1e-9)) + 1;
        const auto pts = equispaced_interval(iv->a, iv->b, std::max<std::size_t>(count, 2));
        const CVector u = evaluate_eigenfunction(family, chosen->coefficients, std::span<const double>(pts.points));
        const Eigen::VectorXd re = u.real();
        Eigen::Index big = 0;
        const double scale = re.cwiseAbs().maxCoeff(&big) * (re(big) < 0 ? -1.0 : 1.0);
        os << "x,u\n";
        for (std::size_t i = 0; i < pts.size(); ++i) os << pts.points[i] << ',' << re(static_cast<Eigen::Index>(i)) / scale << '\n';
    } else {
        const auto grid = grid_in_domain(scenario.domain, spacing);
        const CVector u = evaluate_eigenfunction(family, chosen->coefficients, std::span<const Point2>(grid.points),
                                                 &scenario.domain);
        const Eigen::VectorXd re = u.real();
        Eigen::Index big = 0;
        const double scale = re.cwiseAbs().maxCoeff(&big) * (re(big) < 0 ? -1.0 : 1.0);
        std::vector<double> vals(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = re(static_cast<Eigen::Index>(i)) / scale;
        write_field_csv(os, grid.points, vals);
    }
    emit(c.out, os.str(), out);
    return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Rectangular eigenvalue solver: worked examples, sweeps and eigenfunction samples", "recteig"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    Common common;
    std::string format = "json";
    bool no_reference = false;
    int fig = 0;
    std::size_t mode = 1;
    double spacing = 0.05;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--example", common.example, "Example id (1-8)");
        sub->add_option("--config", common.config_path, "Flat key=value config file");
        sub->add_option("--solver", common.solver, "qr | svd | normal")->check(CLI::IsMember({"qr", "svd", "normal"}));
        sub->add_option("--out", common.out, "Output file (default: stdout)");
    };

    auto* run_cmd = app.add_subcommand("run", "Solve one example and write a report");
    add_common(run_cmd);
    run_cmd->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    run_cmd->add_flag("--no-reference", no_reference, "Skip the reference spectrum (and digits)");

    auto* sweep_cmd = app.add_subcommand("sweep", "Run a convergence sweep, one CSV per curve");
    sweep_cmd->add_option("--fig", fig, "1 or 6")->required()->check(CLI::IsMember({1, 6}));
    sweep_cmd->add_option("--out", common.out, "Output directory (default: .)");

    auto* eval_cmd = app.add_subcommand("eval", "Sample one eigenfunction on a grid clipped to the domain");
    add_common(eval_cmd);
    eval_cmd->add_option("--mode", mode, "1-based index among non-spurious modes");
    eval_cmd->add_option("--spacing", spacing, "Grid spacing");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : bad_input;
    }

    try {
        if (*run_cmd) return cmd_run(common, format, !no_reference, out);
        if (*sweep_cmd) return cmd_sweep(fig, common.out, out, err);
        if (*eval_cmd) return cmd_eval(common, mode, spacing, out);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return bad_input;
    } catch (const std::exception& e) {
        err << "solver failure: " << e.what() << '\n';
        return solver_failure;
    }
    return bad_input;
}

}  // namespace recteig::cli
