#pragma once

// Machine-readable run reports (JSON) and CSV emitters for spectra, sweep
// curves and eigenfunction samples. Doubles are written with 17
// significant digits.

#include "recteig/config.hpp"
#include "recteig/scenarios.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace recteig {

inline constexpr const char* kToolVersion = "1.0.0";

struct RunReport {
    std::string scenario;
    int example = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> eigenvalues;  ///< first n_modes non-spurious
    std::vector<double> reference;
    std::vector<std::string> provenance;
    std::vector<double> digits;
    std::vector<ResidualRow> residuals;
    double wall_seconds = 0.0;
    RunConfig config;
    std::vector<std::string> warnings;
};

/// 64-bit FNV-1a of the emitted config, as 16 hex digits.
std::string config_hash(const RunConfig& config);
std::uint64_t fnv1a(const std::string& bytes);

RunReport make_report(const Scenario& scenario, const RunResult& result,
                      const std::optional<ReferenceSpectrum>& reference, const RunConfig& config);

std::string report_json(const RunReport& report);

/// index,eigenvalue,digits
void write_report_csv(std::ostream& os, const RunReport& report);
/// parameter,max_rel_error
void write_curve_csv(std::ostream& os, const SweepCurve& curve);
/// x,y,u
void write_field_csv(std::ostream& os, const std::vector<Point2>& points, const std::vector<double>& u);

}  // namespace recteig
