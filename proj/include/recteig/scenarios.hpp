#pragma once

// Reproductions of the eight worked examples, their reference spectra, and
// the two convergence sweeps.

#include "recteig/basis.hpp"
#include "recteig/geometry.hpp"
#include "recteig/solver.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace recteig {

enum class Provenance { analytic, bessel, self_convergence };

std::string to_string(Provenance p);

struct ReferenceSpectrum {
    std::vector<double> values;
    std::vector<Provenance> provenance;  ///< one entry per value
    /// Largest relative change seen in the confirming run (self-convergence only).
    double stability = 0.0;
    std::string note;
};

/// Named numeric parameters of a scenario, e.g. {"n", 40}, {"m", 100}.
using Params = std::map<std::string, double>;

struct Scenario {
    int id = 0;
    std::string name;
    DomainSpec domain;
    OperatorSpec op;
    RectEigProblem problem;
    Params params;                  ///< every parameter, defaults filled in
    std::size_t n_modes = 0;        ///< how many eigenvalues are scored
    double digit_target = 0.0;      ///< lower end of the published range
    /// Problem size published with the example (rows may be absent).
    std::optional<std::size_t> published_rows;
    std::optional<std::size_t> published_cols;
    std::vector<std::string> notes;  ///< dimension discrepancies and inferences

    std::size_t rows() const;
    std::size_t cols() const;
};

/// Default parameters for an example. Throws std::invalid_argument for an
/// unknown id.
Params default_params(int id);

/// Builds example `id` (1..8) with `overrides` applied on top of the
/// defaults. Unknown keys, out-of-range ids and invalid values throw
/// std::invalid_argument.
Scenario build_example(int id, const Params& overrides = {});

/// Squares of the Bessel zeros j_{k,s}; k >= 1 values appear twice.
ReferenceSpectrum bessel_disk_reference(std::size_t n_modes);

/// Zero of J_order in (lo, hi) by bracketed bisection refined with Newton.
double bessel_zero(int order, int index);

/// Solves at `enriched`, confirms against `confirm`, and accepts when the
/// first n_modes agree to `tol` relative. `enriched` must dominate the
/// scenario's parameters, and `confirm` must dominate `enriched`.
ReferenceSpectrum self_convergence_reference(const Scenario& scenario, const Params& enriched,
                                             const Params& confirm, double tol);

/// Analytic, Bessel or self-convergence reference, whichever applies.
ReferenceSpectrum reference_for(const Scenario& scenario);

/// -log10 of the relative error (absolute when the reference is 0),
/// capped at 16. Throws std::invalid_argument on a length mismatch.
std::vector<double> digits_of_accuracy(const std::vector<double>& computed, const std::vector<double>& reference);

double max_relative_error(const std::vector<double>& computed, const std::vector<double>& reference);

struct RunOptions {
    SolveOptions solve;
    bool normal = false;
};

struct RunResult {
    Spectrum spectrum;
    std::vector<double> values;  ///< first n_modes non-spurious real parts
    double seconds = 0.0;
};

RunResult run_scenario(const Scenario& scenario, const RunOptions& opts = {});

struct SweepCurve {
    std::string name;
    std::vector<double> parameter;
    std::vector<double> max_rel_error;  ///< +inf where too few modes came back
};

struct SweepResult {
    std::vector<SweepCurve> curves;
    std::vector<std::string> notes;
};

/// Example 4 three ways for p = 0..max_param: polynomial only, poles only,
/// both. Error in the first six eigenvalues against a 30/35 self-convergence
/// reference.
SweepResult sweep_fig1(int max_param = 30, const RunOptions& opts = {});

/// Example 6 over degree_sum and Example 7 over K, first eight eigenvalues.
SweepResult sweep_fig6(const RunOptions& opts = {});

struct LogLinearFit {
    double slope = 0.0;        ///< d log10(error) / d parameter
    double correlation = 0.0;  ///< Pearson r of (parameter, log10 error)
    double floor = 0.0;        ///< smallest error on the curve
    std::size_t first = 0;     ///< descent points used: [first, last]
    std::size_t last = 0;
    /// No descent point rises above the running minimum by more than one
    /// step of the fitted rate.
    bool monotone = false;
};

/// Fits log10(error) against the parameter over the descent: from the first
/// finite error below 1 up to the first point within `floor_band` (a factor)
/// of the curve's minimum.
LogLinearFit fit_descent(const SweepCurve& curve, double floor_band = 10.0);

}  // namespace recteig
