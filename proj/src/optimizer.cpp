#include "harqee/optimizer.hpp"

#include "harqee/corefns.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace harqee {

namespace {

constexpr double kLn2 = std::numbers::ln2;

QosSpec effective_qos(const QosSpec& qos)
{
    QosSpec q = qos;
    if (q.t0 >= 0.0 && q.t0 < kMinGoodput) q.t0 = kMinGoodput;
    q.validate();
    return q;
}

double alpha_from_excess(int rounds, double epsilon, double excess)
{
    return std::min({epsilon, excess / (1.0 + excess), std::ldexp(1.0, -rounds)});
}

// Largest admissible excess: R = t0 / (1 - Delta).
double excess_cap(int rounds, double epsilon)
{
    const double delta = outage_cap(rounds, epsilon);
    return delta / (1.0 - delta);
}

// varphi / t0 and upsilon / t0 at R = t0 (1 + u).
double varphi_scaled(int rounds, double t0, double u)
{
    const double rate = t0 * (1.0 + u);
    const double snr = std::expm1(rate * kLn2);
    return kLn2 * rate * u * (snr + 1.0) - outage_exponent(rounds) * snr;
}

double upsilon_scaled(int rounds, double t0, double u)
{
    const double rate = t0 * (1.0 + u);
    const double snr = std::expm1(rate * kLn2);
    return u * ((snr + 1.0) * kLn2 * rate + snr) - std::ldexp(snr * (1.0 + u), 1 - rounds);
}

// min{cap, zero of f} for an increasing f with f(0) < 0, by bisection on the excess.
template <class F>
RateChoice capped_root(double t0, double cap, F&& f)
{
    double lo = 0.0;
    double hi = cap;
    const double at_cap = f(cap);
    if (at_cap <= 0.0 || std::abs(at_cap) < 1e-12) return {t0 * (1.0 + cap), cap};
    for (int it = 0; it < 4000; ++it) {
        const double mid = lo + 0.5 * (hi - lo);
        if (!(mid > lo && mid < hi)) break;
        if (f(mid) < 0.0) lo = mid;
        else hi = mid;
    }
    return {t0 * (1.0 + hi), hi};
}

void require_rounds(int rounds)
{
    if (rounds < 1 || rounds > kMaxRounds) throw std::domain_error("number of rounds out of range");
}

}  // namespace

double optimal_alpha(int rounds, const QosSpec& qos, double rate)
{
    require_rounds(rounds);
    if (!(rate > qos.t0)) throw InfeasibleError("rate must exceed the goodput threshold t0");
    return std::min({qos.epsilon, 1.0 - qos.t0 / rate, std::ldexp(1.0, -rounds)});
}

double varphi(int rounds, double t0, double rate)
{
    require_rounds(rounds);
    const double snr = std::expm1(rate * kLn2);
    return kLn2 * rate * (rate - t0) * (snr + 1.0) - outage_exponent(rounds) * t0 * snr;
}

double upsilon(int rounds, double t0, double rate)
{
    require_rounds(rounds);
    const double snr = std::expm1(rate * kLn2);
    return (rate - t0) * ((snr + 1.0) * kLn2 * rate + snr) - std::ldexp(snr * rate, 1 - rounds);
}

RateChoice rate_choice_typei_cc(int rounds, const QosSpec& qos)
{
    require_rounds(rounds);
    const QosSpec q = effective_qos(qos);
    return capped_root(q.t0, excess_cap(rounds, q.epsilon),
                       [&](double u) { return varphi_scaled(rounds, q.t0, u); });
}

RateChoice rate_choice_ir(int rounds, const QosSpec& qos)
{
    require_rounds(rounds);
    const QosSpec q = effective_qos(qos);
    return capped_root(q.t0, excess_cap(rounds, q.epsilon),
                       [&](double u) { return upsilon_scaled(rounds, q.t0, u); });
}

double log_lambda_excess(int rounds, double t0, double excess)
{
    require_rounds(rounds);
    if (!(excess > 0.0)) return std::numeric_limits<double>::infinity();
    const double rate = t0 * (1.0 + excess);
    double weighted = 0.0;
    for (int k = 1; k <= rounds; ++k) weighted += std::ldexp(std::log(g_ratio(k, rate)), -k);
    const double keep = -std::expm1(-rounds * kLn2);
    return -outage_exponent(rounds) * std::log(excess / (1.0 + excess)) + weighted / keep;
}

double log_lambda(int rounds, double t0, double rate)
{
    if (!(t0 > 0.0)) throw std::domain_error("log_lambda: t0 must be > 0");
    return log_lambda_excess(rounds, t0, (rate - t0) / t0);
}

double varpi(int rounds, double t0, double rate)
{
    require_rounds(rounds);
    if (!(rate > t0)) throw std::domain_error("varpi: rate must exceed t0");
    return std::pow(rate - t0, -std::ldexp(1.0, 1 - rounds)) * std::expm1(rate * kLn2) * rate;
}

RateChoice lambda_direct_choice_ir(int rounds, const QosSpec& qos)
{
    require_rounds(rounds);
    const QosSpec q = effective_qos(qos);
    const double cap = excess_cap(rounds, q.epsilon);
    auto f = [&](double u) { return log_lambda_excess(rounds, q.t0, u); };

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 0.0;
    double b = cap;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < 300 && (b - a) > 1e-15 * cap; ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    double best = f1 <= f2 ? x1 : x2;
    if (f(cap) <= std::min(f1, f2)) best = cap;
    return {q.t0 * (1.0 + best), best};
}

double spectral_efficiency(Scheme scheme, const ChannelSpec& spec, const PowerLadder& ladder, double rate)
{
    if (!(rate > 0.0)) throw std::domain_error("spectral_efficiency: rate must be > 0");
    const auto p = asymptotic_outage(scheme, spec, ladder, rate);
    double rounds_used = 0.0;
    for (int l = 0; l < spec.rounds; ++l) rounds_used += p[static_cast<std::size_t>(l)];
    return rate * (1.0 - p.back()) / rounds_used;
}

Solution evaluate_design(Scheme scheme, const ChannelSpec& spec, const RateChoice& rate, double alpha)
{
    const auto alloc = allocate(scheme, spec, rate.rate, alpha);
    Solution s;
    s.scheme = scheme;
    s.rate = rate.rate;
    s.rate_excess = rate.excess;
    s.alpha = alpha;
    s.avg_power = alloc.avg_power;
    s.goodput = rate.rate * (1.0 - alpha);
    s.ee = s.goodput / s.avg_power;
    s.spectral_efficiency = spectral_efficiency(scheme, spec, alloc.ladder, rate.rate);
    s.ladder = alloc.ladder;
    s.feasible = true;
    return s;
}

namespace {

Solution solve_with(Scheme scheme, const ChannelSpec& spec, const QosSpec& qos, bool direct_ir)
{
    if (!(qos.epsilon > 0.0)) {
        Solution s;
        s.scheme = scheme;
        s.reason = "outage tolerance epsilon must be > 0";
        return s;
    }
    spec.validate();
    const QosSpec q = effective_qos(qos);
    RateChoice rate;
    if (scheme == Scheme::IR) rate = direct_ir ? lambda_direct_choice_ir(spec.rounds, q) : rate_choice_ir(spec.rounds, q);
    else rate = rate_choice_typei_cc(spec.rounds, q);
    return evaluate_design(scheme, spec, rate, alpha_from_excess(spec.rounds, q.epsilon, rate.excess));
}

}  // namespace

Solution solve(Scheme scheme, const ChannelSpec& spec, const QosSpec& qos)
{
    return solve_with(scheme, spec, qos, false);
}

Solution solve_ir_direct(const ChannelSpec& spec, const QosSpec& qos)
{
    return solve_with(Scheme::IR, spec, qos, true);
}

std::string check_solution(const Solution& s, const QosSpec& qos)
{
    std::ostringstream why;
    why.precision(17);
    const double t0 = std::max(qos.t0, kMinGoodput);
    const int rounds = s.ladder.rounds();
    if (!s.feasible) why << "not feasible: " << s.reason;
    else if (rounds < 1) why << "empty power ladder";
    else if (!(s.alpha > 0.0 && s.alpha <= qos.epsilon)) why << "alpha " << s.alpha << " violates 0 < alpha <= epsilon";
    else if (s.alpha > std::ldexp(1.0, -rounds) + 1e-12) why << "alpha " << s.alpha << " exceeds 2^-L";
    else if (!(s.goodput >= t0 - 1e-12 * std::max(1.0, t0))) why << "goodput " << s.goodput << " below t0 " << t0;
    else if (!(s.rate >= t0 && s.rate_excess > 0.0)) why << "rate " << s.rate << " not above t0";
    else if (s.rate > t0 / (1.0 - outage_cap(rounds, qos.epsilon)) + 1e-12 * std::max(1.0, t0))
        why << "rate " << s.rate << " beyond t0/(1-Delta)";
    else if (std::abs(s.goodput - s.rate * (1.0 - s.alpha)) > 1e-12 * s.goodput)
        why << "goodput inconsistent with rate and alpha";
    else if (!(s.avg_power > 0.0) || std::abs(s.ee - s.goodput / s.avg_power) > 1e-12 * s.ee)
        why << "ee inconsistent with goodput / avg_power";
    else {
        for (double p : s.ladder.powers)
            if (!(p > 0.0) || !std::isfinite(p)) {
                why << "power " << p << " not positive and finite";
                break;
            }
    }
    return why.str();
}

}  // namespace harqee
