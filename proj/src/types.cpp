#include "harqee/types.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace harqee {

std::string_view to_string(Scheme scheme)
{
    switch (scheme) {
    case Scheme::TypeI: return "typei";
    case Scheme::CC: return "cc";
    case Scheme::IR: return "ir";
    }
    return "unknown";
}

Scheme parse_scheme(std::string_view text)
{
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "typei" || lower == "type1" || lower == "i") return Scheme::TypeI;
    if (lower == "cc") return Scheme::CC;
    if (lower == "ir") return Scheme::IR;
    throw std::invalid_argument("unknown HARQ scheme '" + std::string(text) + "' (expected typei, cc or ir)");
}

ChannelSpec ChannelSpec::uniform(int rounds, double rho, double sigma2)
{
    ChannelSpec spec;
    spec.rounds = rounds;
    spec.rho = rho;
    spec.sigma2.assign(rounds > 0 ? static_cast<std::size_t>(rounds) : 0, sigma2);
    return spec;
}

void ChannelSpec::validate_for_simulation() const
{
    if (rounds < 1) throw std::invalid_argument("channel: L must be >= 1");
    if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("channel: rho must lie in [0, 1]");
    if (sigma2.size() != static_cast<std::size_t>(rounds))
        throw std::invalid_argument("channel: sigma2 must hold exactly L variances");
    for (double s : sigma2)
        if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("channel: every sigma2 must be positive");
}

void ChannelSpec::validate() const
{
    validate_for_simulation();
    if (rounds > kMaxRounds)
        throw std::invalid_argument("channel: L must be <= " + std::to_string(kMaxRounds));
    if (!(rho < 1.0))
        throw std::invalid_argument("channel: rho must be < 1 for the asymptotic outage model");
}

ChannelSpec ChannelSpec::prefix(int l) const
{
    if (l < 0 || l > rounds) throw std::out_of_range("channel prefix length out of range");
    ChannelSpec out;
    out.rounds = l;
    out.rho = rho;
    out.sigma2.assign(sigma2.begin(), sigma2.begin() + l);
    return out;
}

void QosSpec::validate() const
{
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("qos: epsilon must lie in (0, 1]");
    if (!(t0 > 0.0) || !std::isfinite(t0)) throw std::invalid_argument("qos: t0 must be positive");
}

}  // namespace harqee
