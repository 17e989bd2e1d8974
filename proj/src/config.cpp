#include "gcorner/config.hpp"

#include "gcorner/error.hpp"
#include "gcorner/eval.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gcorner {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(std::string_view key, std::string_view text) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError("invalid number for " + std::string(key) + ": '" + std::string(text) + "'");
    }
    return v;
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view text) {
    Int v{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError("invalid integer for " + std::string(key) + ": '" + std::string(text) + "'");
    }
    return v;
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
    std::vector<double> out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        out.push_back(parse_double(key, trim(text.substr(0, comma))));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    if (out.empty()) {
        throw ConfigError("empty list for " + std::string(key));
    }
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ec == std::errc() ? ptr : buf);
}

std::vector<std::pair<std::string, std::string>> detector_fields(const DetectorConfig& c) {
    std::string scales;
    for (std::size_t i = 0; i < c.scales.size(); ++i) {
        scales += (i ? "," : "") + format_double(c.scales[i]);
    }
    return {
        {"scales", scales},
        {"directions", std::to_string(c.directions)},
        {"gamma", format_double(c.gamma)},
        {"eta", format_double(c.eta)},
        {"window_n", std::to_string(c.window_n)},
        {"nms_p", std::to_string(c.nms_p)},
        {"nms_q", std::to_string(c.nms_q)},
        {"threshold", format_double(c.threshold)},
        {"rho", format_double(c.rho)},
        {"boundary", std::string(to_string(c.boundary))},
        {"engine", std::string(to_string(c.engine))},
        {"nms_scale", c.anchor.to_string()},
    };
}

std::string detector_text(const DetectorConfig& config) {
    std::string text;
    for (const auto& [k, v] : detector_fields(config)) {
        text += k + " = " + v + "\n";
    }
    return text;
}

std::string config_hash(const DetectorConfig& config) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : detector_text(config)) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void RunConfig::set(std::string_view key, std::string_view value) {
    DetectorConfig& d = detector;
    if (key == "scales") d.scales = parse_list(key, value);
    else if (key == "directions") d.directions = parse_int<int>(key, value);
    else if (key == "gamma") d.gamma = parse_double(key, value);
    else if (key == "eta") d.eta = parse_double(key, value);
    else if (key == "window_n") d.window_n = parse_int<int>(key, value);
    else if (key == "nms_p") d.nms_p = parse_int<int>(key, value);
    else if (key == "nms_q") d.nms_q = parse_int<int>(key, value);
    else if (key == "threshold") d.threshold = parse_double(key, value);
    else if (key == "rho") d.rho = parse_double(key, value);
    else if (key == "boundary") d.boundary = parse_boundary(value);
    else if (key == "engine") d.engine = parse_engine(value);
    else if (key == "nms_scale") d.anchor = NmsAnchor::parse(std::string(value));
    else if (key == "seed") seed = parse_int<std::uint64_t>(key, value);
    else if (key == "format") {
        if (value != "json" && value != "csv") {
            throw ConfigError("format must be json or csv");
        }
        format = std::string(value);
    } else if (key == "tau") tau = parse_double(key, value);
    else if (key == "repeat_radius") repeat_radius = parse_double(key, value);
    else throw ConfigError("unknown config key '" + std::string(key) + "'");
}

std::string RunConfig::to_text() const {
    std::string text = detector_text(detector);
    text += "seed = " + std::to_string(seed) + "\n";
    text += "format = " + format + "\n";
    text += "tau = " + format_double(tau) + "\n";
    text += "repeat_radius = " + format_double(repeat_radius) + "\n";
    return text;
}

void RunConfig::validate() const {
    detector.validate();
    if (!(tau > 0.0)) throw ConfigError("tau must be positive");
    if (!(repeat_radius > 0.0)) throw ConfigError("repeat_radius must be positive");
}

RunConfig parse_config(std::string_view text, RunConfig base) {
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + " is not key = value");
        }
        base.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), std::move(base));
}

}  // namespace gcorner
