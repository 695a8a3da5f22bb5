#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace harqee {

/// HARQ combining discipline. The ordering is used for reporting only.
enum class Scheme { TypeI = 0, CC = 1, IR = 2 };

inline constexpr Scheme kAllSchemes[] = {Scheme::TypeI, Scheme::CC, Scheme::IR};

/// Largest number of HARQ rounds the closed forms accept.
inline constexpr int kMaxRounds = 64;

std::string_view to_string(Scheme scheme);

/// Accepts "typei", "cc", "ir" (case-insensitive; "type1" and "i" also map to Type I).
Scheme parse_scheme(std::string_view text);

/// Raised when the constraint set of the energy-efficiency problem is empty.
class InfeasibleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Fading statistics of the time-correlated Rayleigh channel.
///
/// Round l (1-based) has h_l = sigma_l * (sqrt(1 - rho^(2(l-1))) * w_l + rho^(l-1) * w_0)
/// with i.i.d. unit complex Gaussians w_0..w_L. sigma2[l-1] stores sigma_l^2.
struct ChannelSpec {
    int rounds = 1;
    double rho = 0.0;
    std::vector<double> sigma2{1.0};

    static ChannelSpec uniform(int rounds, double rho, double sigma2 = 1.0);

    /// Invariants for the asymptotic closed forms: 1 <= rounds <= kMaxRounds,
    /// 0 <= rho < 1, sigma2 of length rounds with positive entries.
    void validate() const;

    /// Same as validate() except that rho = 1 (quasi-static fading) is allowed
    /// and there is no upper bound on rounds.
    void validate_for_simulation() const;

    /// The first `l` rounds of this channel.
    ChannelSpec prefix(int l) const;
};

/// QoS constraints: outage tolerance and minimum goodput (bits/s/Hz).
struct QosSpec {
    double epsilon = 1e-2;
    double t0 = 1.0;

    void validate() const;
};

/// Transmit powers P_1..P_L in linear, noise-normalized SNR units.
struct PowerLadder {
    std::vector<double> powers;

    int rounds() const { return static_cast<int>(powers.size()); }
    double operator[](std::size_t i) const { return powers[i]; }
};

}  // namespace harqee
