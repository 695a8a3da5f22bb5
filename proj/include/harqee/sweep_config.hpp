#pragma once

// Sweep description files.
//
//   # comment
//   seed = 7                 keys before the first section are defaults
//   [sweep eps_L4]
//   schemes = typei, cc, ir
//   L = 4
//   rho = 0.5
//   sigma2 = 1               scalar, or one value per round
//   eps = 1e-2
//   t0 = 2
//   axis = epsilon           epsilon | t0 | L | rho
//   values = 1e-4, 1e-3, 1e-2, 0.1
//   out = eps_L4.csv
//   trials = 0               Monte Carlo trials per point, 0 = none
//   uniform = false          also solve the equal-power baseline

#include "harqee/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace harqee {

enum class SweepAxis { Epsilon, T0, Rounds, Rho };

std::string_view to_string(SweepAxis axis);

class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, std::string field, const std::string& message);

    int line() const { return line_; }
    const std::string& field() const { return field_; }

private:
    int line_;
    std::string field_;
};

struct SweepConfig {
    std::string name;
    std::vector<Scheme> schemes{Scheme::TypeI, Scheme::CC, Scheme::IR};
    int rounds = 1;
    double rho = 0.0;
    std::vector<double> sigma2{1.0};  // a single entry applies to every round
    QosSpec qos;
    SweepAxis axis = SweepAxis::Epsilon;
    std::vector<double> values;
    std::string output_path;  // empty = caller decides
    std::uint64_t seed = 1;
    std::uint64_t trials = 0;
    bool uniform = false;
    int line = 0;  // line of the section header

    /// Channel and QoS at one axis value.
    ChannelSpec channel_at(double value) const;
    QosSpec qos_at(double value) const;
};

/// Parses every [sweep ...] section. Throws ConfigError naming the line and key.
std::vector<SweepConfig> parse_sweep_config(std::istream& in);
std::vector<SweepConfig> load_sweep_config(const std::string& path);

/// Parses "1, 2.5,3" into numbers; throws std::invalid_argument on junk.
std::vector<double> parse_number_list(const std::string& text);

}  // namespace harqee
