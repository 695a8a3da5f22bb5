#pragma once

// Independent reference computations used only by the tests. None of these
// call into the library's numerical code.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

inline constexpr double kLn2 = std::numbers::ln2;

/// g_L(R) from the alternating finite sum, in long double.
inline double g_alternating(int L, double R)
{
    if (L == 0) return R == 0.0 ? 0.0 : 1.0;
    const long double x = static_cast<long double>(R) * std::numbers::ln2_v<long double>;
    long double sum = 0.0L;
    for (int k = 0; k < L; ++k) {
        const int n = L - k - 1;
        long double term = 1.0L;
        for (int j = 1; j <= n; ++j) term *= x / j;
        sum += (k % 2 == 0 ? term : -term);
    }
    const long double sign = (L % 2 == 0) ? 1.0L : -1.0L;
    return static_cast<double>(sign + std::pow(2.0L, static_cast<long double>(R)) * sum);
}

/// g_L(R) as (1/2 pi i) times the contour integral of 2^(R s) / (s (s - 1)^L)
/// over |s - 1/2| = radius, by the trapezoidal rule.
inline double g_contour(int L, double R, double radius = 1.5, int nodes = 8192)
{
    std::complex<double> acc = 0.0;
    for (int j = 0; j < nodes; ++j) {
        const double t = 2.0 * std::numbers::pi * (j + 0.5) / nodes;
        const std::complex<double> w = std::polar(radius, t);
        const std::complex<double> s = 0.5 + w;
        acc += std::exp(R * kLn2 * s) / (s * std::pow(s - 1.0, L)) * w;
    }
    return (acc / static_cast<double>(nodes)).real();
}

/// Centered finite difference.
template <class F>
double derivative(F&& f, double x, double h)
{
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// Direct product prod_{k=1}^{L} k^(2^-k).
inline double kappa_product(int L)
{
    double p = 1.0;
    for (int k = 1; k <= L; ++k) p *= std::pow(static_cast<double>(k), std::pow(0.5, k));
    return p;
}

/// Largest-root-of-a-monotone-function by scanning a grid for the first sign change.
template <class F>
double first_sign_change(F&& f, double lo, double hi, double step)
{
    double prev = lo;
    for (double x = lo + step; x <= hi; x += step) {
        if (f(x) >= 0.0) return 0.5 * (prev + x);
        prev = x;
    }
    return hi;
}

/// Pearson correlation of two samples.
inline double pearson(const std::vector<double>& a, const std::vector<double>& b)
{
    const double n = static_cast<double>(a.size());
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

/// Deterministic parameter sampler for property tests.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed)
        : gen_(seed)
    {
    }
    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen_); }
    double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }
    int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(gen_); }

private:
    std::mt19937_64 gen_;
};

}  // namespace oracle
