#pragma once

// Flat key=value run configuration:
//
//   # comment
//   example = 6
//   solver = qr          (qr | svd | normal)
//   degree_sum = 12      (any parameter of the chosen example)

#include "recteig/scenarios.hpp"

#include <iosfwd>
#include <string>

namespace recteig {

struct RunConfig {
    int example = 0;
    std::string solver = "qr";
    Params overrides;

    bool operator==(const RunConfig&) const = default;
};

/// Throws std::invalid_argument with the offending line number on malformed
/// input, unknown solver names, or a missing example id.
RunConfig parse_config(std::istream& in);
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

/// Emits keys in a fixed order with 17 significant digits, so parsing the
/// output reproduces the config exactly.
std::string emit_config(const RunConfig& config);

RunOptions run_options(const RunConfig& config);

}  // namespace recteig
