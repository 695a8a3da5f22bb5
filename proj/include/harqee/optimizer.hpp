#pragma once

// Joint choice of rate, target outage and power ladder that maximises the
// energy efficiency R(1 - alpha) / Pbar subject to an outage tolerance and a
// minimum goodput.

#include "harqee/allocator.hpp"
#include "harqee/types.hpp"

#include <string>

namespace harqee {

struct Solution {
    Scheme scheme = Scheme::TypeI;
    PowerLadder ladder;
    double rate = 0.0;
    // (R - t0) / t0. Kept alongside the rate because alpha = excess / (1 + excess)
    // loses all precision if formed from R when the bracket is below ulp(t0).
    double rate_excess = 0.0;
    double alpha = 0.0;
    double avg_power = 0.0;
    double ee = 0.0;
    double goodput = 0.0;
    double spectral_efficiency = 0.0;
    bool feasible = false;
    std::string reason;  // why feasible is false
};

/// Rate on the bracket t0 < R <= t0 / (1 - Delta), in both representations.
struct RateChoice {
    double rate = 0.0;
    double excess = 0.0;
};

/// alpha* = min{epsilon, 1 - t0/R, 2^-L}. Throws InfeasibleError when R <= t0.
double optimal_alpha(int rounds, const QosSpec& qos, double rate);

/// Stationarity functions whose zero gives the unconstrained optimal rate.
///   varphi(R)  = ln2 R (R - t0) 2^R - c t0 (2^R - 1)              (Type I, CC)
///   upsilon(R) = (R - t0)(2^R ln2 R + 2^R - 1) - 2^(1-L)(2^R - 1) R  (IR)
double varphi(int rounds, double t0, double rate);
double upsilon(int rounds, double t0, double rate);

RateChoice rate_choice_typei_cc(int rounds, const QosSpec& qos);
RateChoice rate_choice_ir(int rounds, const QosSpec& qos);
inline double optimal_rate_typei_cc(int rounds, const QosSpec& qos) { return rate_choice_typei_cc(rounds, qos).rate; }
inline double optimal_rate_ir(int rounds, const QosSpec& qos) { return rate_choice_ir(rounds, qos).rate; }

/// IR rate objective
///   Lambda(R) = (1 - t0/R)^-c * (prod_k (g_k/g_{k-1})^(2^-k))^(1/(1-2^-L)).
/// The excess overload takes R = t0 (1 + excess).
double log_lambda(int rounds, double t0, double rate);
double log_lambda_excess(int rounds, double t0, double excess);

/// Surrogate used for IR rate selection: varpi(R) = (R - t0)^(-2^(1-L)) (2^R - 1) R.
double varpi(int rounds, double t0, double rate);

/// Golden-section minimiser of Lambda over the rate bracket.
RateChoice lambda_direct_choice_ir(int rounds, const QosSpec& qos);
inline double lambda_direct_rate_ir(const ChannelSpec& spec, const QosSpec& qos)
{
    spec.validate();
    return lambda_direct_choice_ir(spec.rounds, qos).rate;
}

/// Asymptotic spectral efficiency R(1 - p_out,L) / sum_{l=0}^{L-1} p_out,l.
double spectral_efficiency(Scheme scheme, const ChannelSpec& spec, const PowerLadder& ladder, double rate);

/// Fills a Solution for a fixed design point (R = t0 (1 + excess), alpha) using the
/// closed-form ladder. Does not check the QoS constraints.
Solution evaluate_design(Scheme scheme, const ChannelSpec& spec, const RateChoice& rate, double alpha);

/// Full solve: rate from the scheme's stationarity condition, alpha* from the
/// rate, closed-form ladder. Non-positive epsilon gives feasible = false;
/// t0 below 1e-9 is raised to 1e-9.
Solution solve(Scheme scheme, const ChannelSpec& spec, const QosSpec& qos);

/// Same as solve() with the IR rate taken from the direct Lambda search.
Solution solve_ir_direct(const ChannelSpec& spec, const QosSpec& qos);

/// Returns an empty string when `s` satisfies the QoS constraints and its own
/// bookkeeping identities, otherwise a description of the first violation.
std::string check_solution(const Solution& s, const QosSpec& qos);

inline constexpr double kMinGoodput = 1e-9;

}  // namespace harqee
