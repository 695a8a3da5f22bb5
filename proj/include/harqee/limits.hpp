#pragma once

// Behaviour of the optimal energy efficiency as the number of rounds grows
// without bound.

#include "harqee/types.hpp"

#include <functional>

namespace harqee {

/// sigma_l^2 as a function of the 1-based round index.
using VarianceSequence = std::function<double(int)>;

inline double unit_variance(int) { return 1.0; }

struct AsymptoticReport {
    Scheme scheme = Scheme::TypeI;
    double theta_inf = 0.0;
    double kappa_inf = 0.0;
    double ee_limit = 0.0;  // exact for Type I and CC, upper bound for IR
    double ee_lower = 0.0;  // IR lower bound; equals ee_limit for Type I and CC
    double ceiling = 0.0;   // supremum over t0 (t0 -> 0)
};

inline constexpr int kKappaInfRounds = 20;

/// kappa_20, within 3e-6 of the infinite product.
double kappa_inf();

/// theta_L at the first L >= min_rounds with |theta_L - theta_{L-1}| < tol * theta_L.
double theta_inf(double rho, const VarianceSequence& sigma2 = unit_variance, double tol = 1e-8,
                 int min_rounds = 20);

/// Limits of the optimal energy efficiency as L -> infinity at goodput
/// threshold t0 > 0.
AsymptoticReport ee_limit(Scheme scheme, double rho, double t0, const VarianceSequence& sigma2 = unit_variance);

}  // namespace harqee
