#pragma once

// Special functions and scheme-dependent coefficients of the asymptotic
// outage model p_out,L ~= phi_L / (P_1 * ... * P_L).
//
// Everything here is a pure function of its arguments. Products with
// exponents 2^-k are accumulated as sums of logarithms.

#include "harqee/types.hpp"

#include <vector>

namespace harqee {

/// IR accumulated-information tail coefficient
///   g_L(R) = (-1)^L + 2^R * sum_{k=0}^{L-1} (-1)^k (R ln2)^(L-k-1) / (L-k-1)!
/// with g_0(0) = 0 and g_0(R) = 1 for R > 0.
///
/// The alternating form cancels badly for small R or large L. It is evaluated
/// through the equivalent positive series
///   g_L(R) = x^L / L! * sum_{n>=0} L/(L+n) * x^n / n!,   x = R ln2,
/// obtained by integrating g_L'(R) = ln2 * x^(L-1)/(L-1)! * 2^R from 0.
double g(int rounds, double rate);

/// ln g_L(R); -inf where g vanishes.
double log_g(int rounds, double rate);

/// g_k(R) / g_{k-1}(R) for k >= 1 and R > 0, without forming either factor.
double g_ratio(int k, double rate);

/// d g_L / dR = ln2 * (R ln2)^(L-1) / (L-1)! * 2^R, for L >= 1 and R > 0.
double g_prime(int rounds, double rate);

/// Time-correlation factor l(L, rho) = prod_{k=2}^{L} (1 - rho^(2(k-1))).
/// The k = 1 factor of the defining product is a 0 * inf form whose limit
/// removes it; l(0, rho) = l(1, rho) = 1.
double ell(int rounds, double rho);
double log_ell(int rounds, double rho);

/// varsigma_l = 1 / (l(l, rho) * prod_{k<=l} sigma_k^2); varsigma_0 = 1.
double varsigma(const ChannelSpec& spec, int l);
inline double varsigma(const ChannelSpec& spec) { return varsigma(spec, spec.rounds); }

/// Outage coefficient phi_l for 0 <= l <= L and R > 0:
///   Type I: varsigma_l (2^R - 1)^l
///   CC:     varsigma_l (2^R - 1)^l / l!
///   IR:     varsigma_l g_l(R)
double phi(Scheme scheme, const ChannelSpec& spec, int l, double rate);

/// r_k = ln(phi_k / phi_{k-1}) for k = 1..L (index k-1 of the result).
/// This is the representation the allocator and optimizer work with.
std::vector<double> log_phi_ratios(Scheme scheme, const ChannelSpec& spec, double rate);

/// theta_L = (prod_{k=1}^{L} (varsigma_{k-1}/varsigma_k)^(2^-k))^(1/(1-2^-L)).
double theta(const ChannelSpec& spec);

/// kappa_L = prod_{k=1}^{L} k^(2^-k).
double kappa(int rounds);

/// c = 1 / (2^L - 1).
double outage_exponent(int rounds);

/// Delta = min(epsilon, 2^-L).
double outage_cap(int rounds, double epsilon);

/// f(alpha) = (1 - alpha) * alpha^c, maximised at alpha = 2^-L.
double f_alpha(double alpha, int rounds);

/// psi = 2^(L/(1-2^-L) - 2) / (2^L - 1); tends to 1/4.
double psi(int rounds);

}  // namespace harqee
