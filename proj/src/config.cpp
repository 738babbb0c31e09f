#include "recteig/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace recteig {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(std::size_t line, const std::string& msg)
{
    throw std::invalid_argument("config line " + std::to_string(line) + ": " + msg);
}

double parse_number(const std::string& text, std::size_t line)
{
    double v = 0.0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) fail(line, "'" + text + "' is not a number");
    return v;
}

}  // namespace

RunConfig parse_config(std::istream& in)
{
    RunConfig cfg;
    bool have_example = false;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) fail(line, "expected key = value");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty() || value.empty()) fail(line, "empty key or value");

        if (key == "example") {
            const double id = parse_number(value, line);
            if (id != static_cast<int>(id)) fail(line, "example id must be an integer");
            cfg.example = static_cast<int>(id);
            have_example = true;
        } else if (key == "solver") {
            if (value != "qr" && value != "svd" && value != "normal") fail(line, "solver must be qr, svd or normal");
            cfg.solver = value;
        } else {
            if (cfg.overrides.count(key)) fail(line, "duplicate key '" + key + "'");
            cfg.overrides[key] = parse_number(value, line);
        }
    }
    if (!have_example) throw std::invalid_argument("config: missing 'example'");
    return cfg;
}

RunConfig parse_config_text(const std::string& text)
{
    std::istringstream in(text);
    return parse_config(in);
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    return parse_config(in);
}

std::string emit_config(const RunConfig& config)
{
    std::ostringstream os;
    os.precision(17);
    os << "example = " << config.example << '\n';
    os << "solver = " << config.solver << '\n';
    for (const auto& [key, value] : config.overrides) os << key << " = " << value << '\n';
    return os.str();
}

RunOptions run_options(const RunConfig& config)
{
    RunOptions opts;
    if (config.solver == "svd") opts.solve.orthogonalization = Orthogonalization::svd;
    else if (config.solver == "normal") opts.normal = true;
    else if (config.solver != "qr") throw std::invalid_argument("unknown solver '" + config.solver + "'");
    return opts;
}

}  // namespace recteig
