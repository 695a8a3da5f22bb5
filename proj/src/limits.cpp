#include "harqee/limits.hpp"

#include "harqee/corefns.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace harqee {

namespace {

constexpr double kLn2 = std::numbers::ln2;

ChannelSpec channel_of(double rho, const VarianceSequence& sigma2, int rounds)
{
    ChannelSpec spec;
    spec.rounds = rounds;
    spec.rho = rho;
    spec.sigma2.clear();
    for (int l = 1; l <= rounds; ++l) spec.sigma2.push_back(sigma2(l));
    return spec;
}

}  // namespace

double kappa_inf()
{
    return kappa(kKappaInfRounds);
}

double theta_inf(double rho, const VarianceSequence& sigma2, double tol, int min_rounds)
{
    if (!(tol > 0.0)) throw std::domain_error("theta_inf: tol must be > 0");
    if (min_rounds < 2 || min_rounds > kMaxRounds) throw std::domain_error("theta_inf: min_rounds out of range");
    double previous = theta(channel_of(rho, sigma2, min_rounds - 1));
    for (int rounds = min_rounds; rounds <= kMaxRounds; ++rounds) {
        const double current = theta(channel_of(rho, sigma2, rounds));
        if (std::abs(current - previous) < tol * current) return current;
        previous = current;
    }
    return previous;
}

AsymptoticReport ee_limit(Scheme scheme, double rho, double t0, const VarianceSequence& sigma2)
{
    if (!(t0 > 0.0)) throw std::domain_error("ee_limit: t0 must be > 0");
    AsymptoticReport rep;
    rep.scheme = scheme;
    rep.theta_inf = theta_inf(rho, sigma2);
    rep.kappa_inf = kappa_inf();

    const double snr = std::expm1(t0 * kLn2);
    const double type_i = rep.theta_inf * t0 / (4.0 * snr);
    const double root = std::sqrt(t0 / (kLn2 * snr));
    switch (scheme) {
    case Scheme::TypeI:
        rep.ee_limit = rep.ee_lower = type_i;
        rep.ceiling = 1.0 / (4.0 * kLn2);
        break;
    case Scheme::CC:
        rep.ee_limit = rep.ee_lower = rep.kappa_inf * type_i;
        rep.ceiling = rep.kappa_inf / (4.0 * kLn2);
        break;
    case Scheme::IR:
        rep.ee_limit = rep.kappa_inf * rep.theta_inf / 4.0 * root;
        rep.ee_lower = std::max(std::sqrt(rep.kappa_inf) * rep.theta_inf / 4.0 * root, rep.kappa_inf * type_i);
        rep.ceiling = rep.kappa_inf / (4.0 * kLn2);
        break;
    }
    return rep;
}

}  // namespace harqee
