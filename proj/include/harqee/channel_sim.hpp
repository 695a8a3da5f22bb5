#pragma once

// Monte Carlo link simulation over time-correlated Rayleigh fading.
//
// Trials are generated in fixed-size blocks. Block b draws from its own
// mt19937_64 stream keyed by (seed, b), so results do not depend on the number
// of worker threads, and trial t sees the same channel for every scheme,
// ladder and rate.

#include "harqee/types.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace harqee {

inline constexpr std::size_t kTrialsPerBlock = 1u << 15;

/// Row-major trials x rounds matrix of channel power gains |h_l|^2.
struct GainMatrix {
    std::size_t trials = 0;
    int rounds = 0;
    std::vector<double> values;

    double operator()(std::size_t trial, int round) const
    {
        return values[trial * static_cast<std::size_t>(rounds) + static_cast<std::size_t>(round)];
    }
};

/// Complex channel coefficients h_1..h_L for n trials (row-major).
std::vector<std::complex<double>> draw_complex_channels(const ChannelSpec& spec, std::uint64_t seed,
                                                        std::size_t n);

/// Power gains |h_l|^2 for n trials. rho = 1 is accepted here.
GainMatrix draw_channels(const ChannelSpec& spec, std::uint64_t seed, std::size_t n);

struct MonteCarloReport {
    Scheme scheme = Scheme::TypeI;
    double rate = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> failures;    // trials still in outage after round l
    std::vector<double> outage;             // p_out,l for l = 1..L
    std::vector<double> outage_halfwidth;   // 95% normal-approximation half-widths
    std::vector<bool> unreliable;           // fewer than 10 outage events behind the estimate
    double avg_power = 0.0;
    double energy_efficiency = 0.0;         // bits/J
    double goodput = 0.0;                   // bits/s/Hz
    double spectral_efficiency = 0.0;       // bits per channel use

    double final_outage() const { return outage.back(); }
    double final_halfwidth() const { return outage_halfwidth.back(); }
};

/// Empirical outage after each round under the scheme's decoding rule:
/// max_k P_k|h_k|^2 (Type I), sum P_k|h_k|^2 (CC) or sum log2(1 + P_k|h_k|^2)
/// (IR) must exceed the threshold implied by `rate`. Also fills the average
/// power, goodput, spectral and energy efficiency implied by those estimates.
MonteCarloReport estimate_outage(Scheme scheme, const ChannelSpec& spec, const PowerLadder& ladder, double rate,
                                 std::uint64_t seed, std::uint64_t trials, unsigned workers = 0);

/// Same simulation as estimate_outage(); the energy efficiency field is the
/// quantity of interest.
MonteCarloReport estimate_ee(Scheme scheme, const ChannelSpec& spec, const PowerLadder& ladder, double rate,
                             std::uint64_t seed, std::uint64_t trials, unsigned workers = 0);

}  // namespace harqee
