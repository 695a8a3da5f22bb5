#include "harqee/corefns.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace harqee {

namespace {

constexpr double kLn2 = std::numbers::ln2;
// keeps sum_n x^n/n! finite
constexpr double kMaxExponent = 600.0;

void require_rounds(int rounds, int min_rounds, const char* what)
{
    if (rounds < min_rounds || rounds > kMaxRounds)
        throw std::domain_error(std::string(what) + ": number of rounds out of range");
}

void require_rho(double rho, const char* what)
{
    if (!(rho >= 0.0 && rho < 1.0)) throw std::domain_error(std::string(what) + ": rho must lie in [0, 1)");
}

// S_L(x) = sum_{n>=0} L/(L+n) x^n/n!, so that g_L = x^L/L! * S_L(x).
double tail_series(int rounds, double x)
{
    const double l = rounds;
    double power = 1.0;  // x^n / n!
    double sum = 1.0;
    for (int n = 1; n < 100000; ++n) {
        power *= x / n;
        const double term = power * l / (l + n);
        sum += term;
        if (n > x && term < sum * 1e-17) break;
    }
    return sum;
}

double scaled_rate(double rate, const char* what)
{
    if (!(rate >= 0.0) || !std::isfinite(rate)) throw std::domain_error(std::string(what) + ": rate must be >= 0");
    const double x = rate * kLn2;
    if (x > kMaxExponent) throw std::domain_error(std::string(what) + ": rate too large");
    return x;
}

// ln(1 - rho^(2(k-1))) for k >= 2
double log_ell_factor(int k, double rho)
{
    return std::log1p(-std::pow(rho, 2.0 * (k - 1)));
}

// ln(varsigma_k / varsigma_{k-1})
double log_varsigma_step(const ChannelSpec& spec, int k)
{
    double s = -std::log(spec.sigma2[static_cast<std::size_t>(k - 1)]);
    if (k >= 2) s -= log_ell_factor(k, spec.rho);
    return s;
}

}  // namespace

double log_g(int rounds, double rate)
{
    if (rounds < 0) throw std::domain_error("g: L must be >= 0");
    const double x = scaled_rate(rate, "g");
    if (rate == 0.0) return -std::numeric_limits<double>::infinity();
    if (rounds == 0) return 0.0;
    if (rounds == 1) return std::log(std::expm1(x));
    return rounds * std::log(x) - std::lgamma(rounds + 1.0) + std::log(tail_series(rounds, x));
}

double g(int rounds, double rate)
{
    if (rounds < 0) throw std::domain_error("g: L must be >= 0");
    const double x = scaled_rate(rate, "g");
    if (rate == 0.0) return 0.0;
    if (rounds == 0) return 1.0;
    if (rounds == 1) return std::expm1(x);
    return std::exp(log_g(rounds, rate));
}

double g_ratio(int k, double rate)
{
    if (k < 1) throw std::domain_error("g_ratio: k must be >= 1");
    const double x = scaled_rate(rate, "g_ratio");
    if (!(rate > 0.0)) throw std::domain_error("g_ratio: rate must be > 0");
    if (k == 1) return std::expm1(x);
    return x / k * (tail_series(k, x) / tail_series(k - 1, x));
}

double g_prime(int rounds, double rate)
{
    if (rounds < 1) throw std::domain_error("g_prime: L must be >= 1");
    const double x = scaled_rate(rate, "g_prime");
    if (!(rate > 0.0)) throw std::domain_error("g_prime: rate must be > 0");
    return kLn2 * std::exp((rounds - 1) * std::log(x) - std::lgamma(static_cast<double>(rounds)) + x);
}

double log_ell(int rounds, double rho)
{
    if (rounds < 0) throw std::domain_error("ell: L must be >= 0");
    require_rho(rho, "ell");
    double s = 0.0;
    for (int k = 2; k <= rounds; ++k) s += log_ell_factor(k, rho);
    return s;
}

double ell(int rounds, double rho)
{
    return std::exp(log_ell(rounds, rho));
}

double varsigma(const ChannelSpec& spec, int l)
{
    spec.validate();
    if (l < 0 || l > spec.rounds) throw std::domain_error("varsigma: l out of range");
    double s = 0.0;
    for (int k = 1; k <= l; ++k) s += log_varsigma_step(spec, k);
    return std::exp(s);
}

std::vector<double> log_phi_ratios(Scheme scheme, const ChannelSpec& spec, double rate)
{
    spec.validate();
    if (!(rate > 0.0)) throw std::domain_error("phi: rate must be > 0");
    const double x = scaled_rate(rate, "phi");
    const double log_snr = std::log(std::expm1(x));  // ln(2^R - 1)

    std::vector<double> r(static_cast<std::size_t>(spec.rounds));
    for (int k = 1; k <= spec.rounds; ++k) {
        double step = log_varsigma_step(spec, k);
        switch (scheme) {
        case Scheme::TypeI: step += log_snr; break;
        case Scheme::CC: step += log_snr - std::log(static_cast<double>(k)); break;
        case Scheme::IR: step += std::log(g_ratio(k, rate)); break;
        }
        r[static_cast<std::size_t>(k - 1)] = step;
    }
    return r;
}

double phi(Scheme scheme, const ChannelSpec& spec, int l, double rate)
{
    if (l < 0 || l > spec.rounds) throw std::domain_error("phi: l out of range");
    const auto r = log_phi_ratios(scheme, spec, rate);
    double s = 0.0;
    for (int k = 0; k < l; ++k) s += r[static_cast<std::size_t>(k)];
    return std::exp(s);
}

double theta(const ChannelSpec& spec)
{
    spec.validate();
    double s = 0.0;
    for (int k = 1; k <= spec.rounds; ++k) s -= std::ldexp(log_varsigma_step(spec, k), -k);
    return std::exp(s / -std::expm1(-spec.rounds * kLn2));
}

double kappa(int rounds)
{
    require_rounds(rounds, 1, "kappa");
    double s = 0.0;
    for (int k = 2; k <= rounds; ++k) s += std::ldexp(std::log(static_cast<double>(k)), -k);
    return std::exp(s);
}

double outage_exponent(int rounds)
{
    require_rounds(rounds, 1, "outage_exponent");
    return 1.0 / (std::ldexp(1.0, rounds) - 1.0);
}

double outage_cap(int rounds, double epsilon)
{
    require_rounds(rounds, 1, "outage_cap");
    return std::min(epsilon, std::ldexp(1.0, -rounds));
}

double f_alpha(double alpha, int rounds)
{
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("f_alpha: alpha must lie in (0, 1)");
    return (1.0 - alpha) * std::pow(alpha, outage_exponent(rounds));
}

double psi(int rounds)
{
    require_rounds(rounds, 1, "psi");
    const double l = rounds;
    const double keep = -std::expm1(-l * kLn2);  // 1 - 2^-L
    // ln(2^L - 1) = L ln2 + ln(1 - 2^-L)
    return std::exp((l / keep - 2.0) * kLn2 - (l * kLn2 + std::log(keep)));
}

}  // namespace harqee
