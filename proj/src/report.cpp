#include "recteig/report.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace recteig {

namespace {

// %.17g, with inf/nan spelled out so CSV readers see a token.
std::string fmt(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::uint64_t fnv1a(const std::string& bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string config_hash(const RunConfig& config)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(emit_config(config))));
    return buf;
}

RunReport make_report(const Scenario& scenario, const RunResult& result,
                      const std::optional<ReferenceSpectrum>& reference, const RunConfig& config)
{
    RunReport r;
    r.scenario = scenario.name;
    r.example = scenario.id;
    r.rows = scenario.rows();
    r.cols = scenario.cols();
    r.eigenvalues = result.values;
    r.residuals = residual_report(result.spectrum);
    r.wall_seconds = result.seconds;
    r.config = config;
    r.warnings = scenario.notes;
    r.warnings.insert(r.warnings.end(), result.spectrum.warnings.begin(), result.spectrum.warnings.end());

    if (const auto flagged = result.spectrum.spurious_count(); flagged > 0) {
        r.warnings.push_back(std::to_string(flagged) + " mode(s) flagged as suspected spurious");
    }
    if (result.values.size() < scenario.n_modes) {
        r.warnings.push_back("only " + std::to_string(result.values.size()) + " of " +
                             std::to_string(scenario.n_modes) + " requested modes were not spurious");
    }
    if (reference) {
        const std::size_t k = std::min(result.values.size(), reference->values.size());
        r.reference.assign(reference->values.begin(), reference->values.begin() + static_cast<std::ptrdiff_t>(k));
        for (std::size_t i = 0; i < k; ++i) r.provenance.push_back(to_string(reference->provenance[i]));
        r.digits = digits_of_accuracy({result.values.begin(), result.values.begin() + static_cast<std::ptrdiff_t>(k)},
                                      r.reference);
    }
    return r;
}

std::string report_json(const RunReport& r)
{
    using nlohmann::json;
    json residuals = json::array();
    for (const auto& row : r.residuals) {
        residuals.push_back({{"index", row.index},
                             {"re", row.value.real()},
                             {"im", row.value.imag()},
                             {"interior_residual", row.interior},
                             {"boundary_residual", row.boundary},
                             {"spurious", row.spurious}});
    }
    json modes = json::array();
    for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
        json m{{"index", i + 1}, {"eigenvalue", r.eigenvalues[i]}};
        if (i < r.reference.size()) {
            m["reference"] = r.reference[i];
            m["provenance"] = r.provenance[i];
            m["digits"] = r.digits[i];
        }
        modes.push_back(std::move(m));
    }
    json config{{"example", r.config.example}, {"solver", r.config.solver}};
    for (const auto& [k, v] : r.config.overrides) config["overrides"][k] = v;

    json doc{{"tool_version", kToolVersion},
             {"config_hash", config_hash(r.config)},
             {"scenario", r.scenario},
             {"example", r.example},
             {"dimensions", {{"rows", r.rows}, {"cols", r.cols}}},
             {"eigenvalues", modes},
             {"residuals", residuals},
             {"wall_seconds", r.wall_seconds},
             {"config", config},
             {"warnings", r.warnings}};
    return doc.dump(2) + "\n";
}

void write_report_csv(std::ostream& os, const RunReport& r)
{
    os << "index,eigenvalue,digits\n";
    for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
        os << i + 1 << ',' << fmt(r.eigenvalues[i]) << ',' << (i < r.digits.size() ? fmt(r.digits[i]) : "") << '\n';
    }
}

void write_curve_csv(std::ostream& os, const SweepCurve& curve)
{
    os << "parameter,max_rel_error\n";
    for (std::size_t i = 0; i < curve.parameter.size(); ++i) {
        os << fmt(curve.parameter[i]) << ',' << fmt(curve.max_rel_error[i]) << '\n';
    }
}

void write_field_csv(std::ostream& os, const std::vector<Point2>& points, const std::vector<double>& u)
{
    os << "x,y,u\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        os << fmt(points[i].x) << ',' << fmt(points[i].y) << ',' << fmt(u[i]) << '\n';
    }
}

}  // namespace recteig
