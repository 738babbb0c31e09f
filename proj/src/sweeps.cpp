#include "recteig/scenarios.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace recteig {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Error of one sweep point, +inf when the configuration cannot produce
// enough modes (e.g. fewer columns than boundary conditions).
double point_error(int id, const Params& overrides, const std::vector<double>& ref, const RunOptions& opts,
                   std::vector<std::string>& notes)
{
    auto note = [&](const std::string& why) {
        std::ostringstream os;
        os << "example " << id << ":";
        for (const auto& [k, v] : overrides) os << ' ' << k << '=' << v;
        os << ": " << why;
        notes.push_back(os.str());
    };
    try {
        const Scenario s = build_example(id, overrides);
        const auto result = run_scenario(s, opts);
        if (result.values.size() < ref.size()) {
            note("only " + std::to_string(result.values.size()) + " clean modes");
            return kInf;
        }
        return max_relative_error(result.values, ref);
    } catch (const std::exception& e) {
        note(e.what());
        return kInf;
    }
}

}  // namespace

SweepResult sweep_fig1(int max_param, const RunOptions& opts)
{
    if (max_param < 0) throw std::invalid_argument("sweep_fig1: max_param must be >= 0");
    const Scenario base = build_example(4);
    const ReferenceSpectrum ref = reference_for(base);

    SweepResult out;
    out.curves = {{"poly_only", {}, {}}, {"poles_only", {}, {}}, {"poles_and_poly", {}, {}}};
    for (int p = 0; p <= max_param; ++p) {
        const double v = p;
        const Params configs[3] = {
            {{"n_poles", 0}, {"n_poly", v}},
            {{"n_poles", v}, {"n_poly", 0}},
            {{"n_poles", v}, {"n_poly", v}},
        };
        for (int c = 0; c < 3; ++c) {
            out.curves[c].parameter.push_back(v);
            out.curves[c].max_rel_error.push_back(point_error(4, configs[c], ref.values, opts, out.notes));
        }
    }
    std::ostringstream os;
    os << "reference: " << ref.note;
    out.notes.insert(out.notes.begin(), os.str());
    return out;
}

SweepResult sweep_fig6(const RunOptions& opts)
{
    SweepResult out;

    const ReferenceSpectrum disk_ref = bessel_disk_reference(8);
    SweepCurve disk{"disk_degree_sum", {}, {}};
    for (int d = 2; d <= 20; ++d) {
        disk.parameter.push_back(d);
        disk.max_rel_error.push_back(point_error(6, {{"degree_sum", d}}, disk_ref.values, opts, out.notes));
    }

    const ReferenceSpectrum ellipse_ref = reference_for(build_example(7));
    SweepCurve ellipse{"ellipse_K", {}, {}};
    for (int k = 2; k <= 14; ++k) {
        ellipse.parameter.push_back(k);
        ellipse.max_rel_error.push_back(point_error(7, {{"K", k}}, ellipse_ref.values, opts, out.notes));
    }

    out.curves = {std::move(disk), std::move(ellipse)};
    out.notes.insert(out.notes.begin(), "ellipse reference: " + ellipse_ref.note);
    return out;
}

LogLinearFit fit_descent(const SweepCurve& curve, double floor_band)
{
    const auto& e = curve.max_rel_error;
    LogLinearFit fit;
    fit.floor = kInf;
    for (double v : e) fit.floor = std::min(fit.floor, v);
    if (!std::isfinite(fit.floor)) throw std::invalid_argument("fit_descent: no finite errors");

    std::size_t first = 0;
    while (first < e.size() && !(e[first] < 1.0)) ++first;
    std::size_t last = first;
    while (last < e.size() && !(e[last] <= floor_band * fit.floor)) ++last;
    if (last >= e.size() || last < first + 2) {
        throw std::invalid_argument("fit_descent: descent has fewer than three points");
    }
    fit.first = first;
    fit.last = last;

    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    const double n = static_cast<double>(last - first + 1);
    for (std::size_t i = first; i <= last; ++i) {
        if (!std::isfinite(e[i]) || e[i] <= 0.0) throw std::invalid_argument("fit_descent: gap in the descent");
        const double x = curve.parameter[i];
        const double y = std::log10(e[i]);
        sx += x, sy += y, sxx += x * x, syy += y * y, sxy += x * y;
    }
    const double cxx = sxx - sx * sx / n;
    const double cyy = syy - sy * sy / n;
    const double cxy = sxy - sx * sy / n;
    fit.slope = cxy / cxx;
    fit.correlation = cyy > 0.0 ? cxy / std::sqrt(cxx * cyy) : -1.0;

    const double step = std::pow(10.0, std::abs(fit.slope));
    double best = e[first];
    fit.monotone = true;
    for (std::size_t i = first + 1; i <= last; ++i) {
        if (e[i] > best * step) fit.monotone = false;
        best = std::min(best, e[i]);
    }
    return fit;
}

}  // namespace recteig
