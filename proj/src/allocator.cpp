#include "harqee/allocator.hpp"

#include "harqee/corefns.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace harqee {

namespace {

constexpr double kLn2 = std::numbers::ln2;

void require_design(const ChannelSpec& spec, double rate, double alpha)
{
    spec.validate();
    if (!(rate > 0.0)) throw std::domain_error("allocate: rate must be > 0");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("allocate: alpha must lie in (0, 1)");
}

void require_positive_ladder(const ChannelSpec& spec, const PowerLadder& ladder)
{
    if (ladder.rounds() != spec.rounds) throw std::invalid_argument("ladder length must equal L");
    for (double p : ladder.powers)
        if (!(p > 0.0) || !std::isfinite(p))
            throw std::domain_error("asymptotic outage needs strictly positive finite powers");
}

// 1 - 2^-L
double keep_fraction(int rounds)
{
    return -std::expm1(-rounds * kLn2);
}

}  // namespace

AllocationResult allocate(Scheme scheme, const ChannelSpec& spec, double rate, double alpha)
{
    require_design(spec, rate, alpha);
    const auto r = log_phi_ratios(scheme, spec, rate);
    const int rounds = spec.rounds;

    // Final-round power.
    double bracket = r[static_cast<std::size_t>(rounds - 1)] - (rounds - 1) * kLn2 - std::log(alpha);
    for (int k = 2; k <= rounds; ++k) bracket += std::ldexp(kLn2 + r[static_cast<std::size_t>(k - 2)], 1 - k);
    const double log_last = bracket / (2.0 * keep_fraction(rounds));

    // Back-substitution: ln P_l = sum_{k>l} 2^(l-k) (ln2 + r_{k-1}) + 2^(l-L) ln P_L.
    std::vector<double> log_power(static_cast<std::size_t>(rounds));
    log_power.back() = log_last;
    double tail = 0.0;  // sum_{k=l+1}^{L} 2^(l-k) (ln2 + r_{k-1})
    for (int l = rounds - 1; l >= 1; --l) {
        tail = 0.5 * (tail + kLn2 + r[static_cast<std::size_t>(l - 1)]);
        log_power[static_cast<std::size_t>(l - 1)] = tail + std::ldexp(log_last, l - rounds);
    }

    AllocationResult out;
    out.alpha = alpha;
    out.ladder.powers.reserve(log_power.size());
    for (double lp : log_power) out.ladder.powers.push_back(std::exp(lp));
    out.avg_power = std::exp(log_min_avg_power(scheme, spec, rate, alpha));
    return out;
}

double log_min_avg_power(Scheme scheme, const ChannelSpec& spec, double rate, double alpha)
{
    require_design(spec, rate, alpha);
    const auto r = log_phi_ratios(scheme, spec, rate);
    const int rounds = spec.rounds;
    const double keep = keep_fraction(rounds);
    double weighted = 0.0;
    for (int k = 1; k <= rounds; ++k) weighted += std::ldexp(r[static_cast<std::size_t>(k - 1)], -k);
    const double log_rounds_term = rounds * kLn2 + std::log(keep);  // ln(2^L - 1)
    return log_rounds_term - outage_exponent(rounds) * std::log(alpha) - (rounds / keep - 2.0) * kLn2 +
           weighted / keep;
}

std::vector<double> asymptotic_outage(Scheme scheme, const ChannelSpec& spec, const PowerLadder& ladder,
                                      double rate)
{
    spec.validate();
    require_positive_ladder(spec, ladder);
    const auto r = log_phi_ratios(scheme, spec, rate);
    std::vector<double> p{1.0};
    double log_p = 0.0;
    for (int l = 1; l <= spec.rounds; ++l) {
        log_p += r[static_cast<std::size_t>(l - 1)] - std::log(ladder.powers[static_cast<std::size_t>(l - 1)]);
        p.push_back(std::exp(log_p));
    }
    return p;
}

double avg_power_of_ladder(Scheme scheme, const ChannelSpec& spec, const PowerLadder& ladder, double rate)
{
    const auto p = asymptotic_outage(scheme, spec, ladder, rate);
    double total = 0.0;
    for (int l = 1; l <= spec.rounds; ++l)
        total += p[static_cast<std::size_t>(l - 1)] * ladder.powers[static_cast<std::size_t>(l - 1)];
    return total;
}

}  // namespace harqee
