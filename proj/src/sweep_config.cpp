#include "harqee/sweep_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

namespace harqee {

namespace {

std::string trim(std::string_view s)
{
    auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && is_space(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && is_space(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return std::string(s);
}

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

double parse_number(const std::string& text)
{
    const std::string t = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(value))
        throw std::invalid_argument("'" + t + "' is not a number");
    return value;
}

std::uint64_t parse_count(const std::string& text)
{
    const double v = parse_number(text);
    if (v < 0.0 || v != std::floor(v) || v > 1.8e19) throw std::invalid_argument("'" + text + "' is not a count");
    return static_cast<std::uint64_t>(v);
}

bool parse_bool(const std::string& text)
{
    const std::string t = lower(trim(text));
    if (t == "true" || t == "yes" || t == "1" || t == "on") return true;
    if (t == "false" || t == "no" || t == "0" || t == "off") return false;
    throw std::invalid_argument("'" + text + "' is not a boolean");
}

SweepAxis parse_axis(const std::string& text)
{
    const std::string t = lower(trim(text));
    if (t == "epsilon" || t == "eps") return SweepAxis::Epsilon;
    if (t == "t0") return SweepAxis::T0;
    if (t == "l" || t == "rounds") return SweepAxis::Rounds;
    if (t == "rho") return SweepAxis::Rho;
    throw std::invalid_argument("unknown axis '" + text + "' (expected epsilon, t0, L or rho)");
}

struct Entry {
    std::string value;
    int line = 0;
};

using Section = std::map<std::string, Entry>;

void apply(SweepConfig& cfg, const std::string& key, const Entry& e)
{
    try {
        if (key == "schemes" || key == "scheme") {
            cfg.schemes.clear();
            for (const auto& s : split_list(e.value)) cfg.schemes.push_back(parse_scheme(s));
            if (cfg.schemes.empty()) throw std::invalid_argument("at least one scheme is required");
        } else if (key == "l" || key == "rounds") {
            const double v = parse_number(e.value);
            if (v != std::floor(v)) throw std::invalid_argument("L must be an integer");
            cfg.rounds = static_cast<int>(v);
        } else if (key == "rho") {
            cfg.rho = parse_number(e.value);
        } else if (key == "sigma2") {
            cfg.sigma2 = parse_number_list(e.value);
        } else if (key == "eps" || key == "epsilon") {
            cfg.qos.epsilon = parse_number(e.value);
        } else if (key == "t0") {
            cfg.qos.t0 = parse_number(e.value);
        } else if (key == "axis") {
            cfg.axis = parse_axis(e.value);
        } else if (key == "values") {
            cfg.values = parse_number_list(e.value);
        } else if (key == "out") {
            cfg.output_path = trim(e.value);
        } else if (key == "seed") {
            cfg.seed = parse_count(e.value);
        } else if (key == "trials") {
            cfg.trials = parse_count(e.value);
        } else if (key == "uniform") {
            cfg.uniform = parse_bool(e.value);
        } else {
            throw std::invalid_argument("unknown key");
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& ex) {
        throw ConfigError(e.line, key, ex.what());
    }
}

void validate(const SweepConfig& cfg, const Section& keys)
{
    auto line_of = [&](const char* key) {
        const auto it = keys.find(key);
        return it != keys.end() ? it->second.line : cfg.line;
    };
    if (cfg.values.empty()) throw ConfigError(line_of("values"), "values", "at least one axis value is required");
    for (std::size_t i = 1; i < cfg.values.size(); ++i)
        if (!(cfg.values[i] > cfg.values[i - 1]))
            throw ConfigError(line_of("values"), "values", "axis values must be strictly increasing");
    if (cfg.sigma2.size() != 1 && cfg.axis == SweepAxis::Rounds) {
        const double largest = cfg.values.back();
        if (static_cast<double>(cfg.sigma2.size()) < largest)
            throw ConfigError(line_of("sigma2"), "sigma2", "need a variance for every round up to the largest L");
    }
    for (double v : cfg.values) {
        try {
            if (cfg.axis == SweepAxis::Rounds && v != std::floor(v))
                throw std::invalid_argument("L values must be integers");
            const QosSpec q = cfg.qos_at(v);
            // epsilon <= 0 is reported per row as infeasible, not as a config error
            if (q.epsilon > 0.0) q.validate();
            cfg.channel_at(v).validate();
        } catch (const std::exception& ex) {
            throw ConfigError(line_of("values"), "values",
                              "value " + std::to_string(v) + " is invalid for this sweep: " + ex.what());
        }
    }
}

}  // namespace

std::string_view to_string(SweepAxis axis)
{
    switch (axis) {
    case SweepAxis::Epsilon: return "epsilon";
    case SweepAxis::T0: return "t0";
    case SweepAxis::Rounds: return "L";
    case SweepAxis::Rho: return "rho";
    }
    return "unknown";
}

ConfigError::ConfigError(int line, std::string field, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", field '" + field + "': " + message)
    , line_(line)
    , field_(std::move(field))
{
}

ChannelSpec SweepConfig::channel_at(double value) const
{
    ChannelSpec spec;
    spec.rounds = axis == SweepAxis::Rounds ? static_cast<int>(value) : rounds;
    spec.rho = axis == SweepAxis::Rho ? value : rho;
    if (sigma2.size() == 1) spec.sigma2.assign(static_cast<std::size_t>(std::max(spec.rounds, 0)), sigma2.front());
    else spec.sigma2.assign(sigma2.begin(), sigma2.begin() + std::min<std::ptrdiff_t>(sigma2.size(), std::max(spec.rounds, 0)));
    return spec;
}

QosSpec SweepConfig::qos_at(double value) const
{
    QosSpec q = qos;
    if (axis == SweepAxis::Epsilon) q.epsilon = value;
    if (axis == SweepAxis::T0) q.t0 = value;
    return q;
}

std::vector<double> parse_number_list(const std::string& text)
{
    std::vector<double> out;
    for (const auto& item : split_list(text)) out.push_back(parse_number(item));
    if (out.empty()) throw std::invalid_argument("empty list");
    return out;
}

std::vector<SweepConfig> parse_sweep_config(std::istream& in)
{
    Section defaults;
    std::vector<std::pair<SweepConfig, Section>> sections;
    Section* current = &defaults;

    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(line_no, "section", "unterminated section header");
            std::string inner = trim(std::string_view(line).substr(1, line.size() - 2));
            if (lower(inner.substr(0, 5)) != "sweep")
                throw ConfigError(line_no, "section", "expected [sweep <name>]");
            SweepConfig cfg;
            cfg.name = trim(std::string_view(inner).substr(5));
            if (cfg.name.empty()) cfg.name = "sweep" + std::to_string(sections.size() + 1);
            cfg.line = line_no;
            for (const auto& [other, keys] : sections)
                if (other.name == cfg.name) throw ConfigError(line_no, "section", "duplicate sweep name '" + cfg.name + "'");
            sections.emplace_back(cfg, Section{});
            current = &sections.back().second;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(line_no, trim(line), "expected key = value");
        const std::string key = lower(trim(std::string_view(line).substr(0, eq)));
        if (key.empty()) throw ConfigError(line_no, "", "missing key before '='");
        if (current->count(key)) throw ConfigError(line_no, key, "key given twice in the same section");
        (*current)[key] = Entry{trim(std::string_view(line).substr(eq + 1)), line_no};
    }
    if (sections.empty()) throw ConfigError(line_no, "section", "no [sweep ...] section found");

    std::vector<SweepConfig> out;
    for (auto& [cfg, keys] : sections) {
        Section merged = defaults;
        for (const auto& [k, v] : keys) merged[k] = v;
        for (const auto& [k, v] : merged) apply(cfg, k, v);
        validate(cfg, merged);
        out.push_back(cfg);
    }
    return out;
}

std::vector<SweepConfig> load_sweep_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError(0, "config", "cannot open '" + path + "'");
    return parse_sweep_config(in);
}

}  // namespace harqee
