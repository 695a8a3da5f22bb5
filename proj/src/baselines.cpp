#include "harqee/baselines.hpp"

#include "harqee/allocator.hpp"
#include "harqee/corefns.hpp"
#include "harqee/detail/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace harqee {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kLn10 = std::numbers::ln10;
constexpr double kInf = std::numeric_limits<double>::infinity();

// rates far above this overflow 2^R in the outage coefficients
constexpr double kMaxRateSpan = 64.0;

double grid_point(double lo, double hi, int i, int n)
{
    return lo + ((hi - lo) * i) / (n - 1);
}

struct Box2 {
    double x_lo, x_hi, y_lo, y_hi;
};

struct Best2 {
    double x = 0.0, y = 0.0, value = -kInf;
};

// Maximises f over an n x n grid and then over `rounds` zoomed grids of the same
// size centred on the incumbent. make_row(x) returns a callable y -> value so
// that work depending only on x is done once per row. Ties keep the lowest index.
template <class MakeRow>
Best2 grid_maximize(const Box2& box, int n, int rounds, unsigned workers, MakeRow&& make_row)
{
    Best2 best;
    Box2 cur = box;
    for (int round = 0; round <= rounds; ++round) {
        std::vector<Best2> rows(static_cast<std::size_t>(n));
        detail::parallel_for(static_cast<std::size_t>(n), workers, [&](std::size_t i) {
            const double x = grid_point(cur.x_lo, cur.x_hi, static_cast<int>(i), n);
            auto row = make_row(x);
            Best2 b;
            for (int j = 0; j < n; ++j) {
                const double y = grid_point(cur.y_lo, cur.y_hi, j, n);
                const double v = row(y);
                if (v > b.value) b = {x, y, v};
            }
            rows[i] = b;
        });
        for (const auto& b : rows)
            if (b.value > best.value) best = b;
        if (!(best.value > -kInf)) break;
        const double hx = 2.0 * (cur.x_hi - cur.x_lo) / (n - 1);
        const double hy = 2.0 * (cur.y_hi - cur.y_lo) / (n - 1);
        cur = {std::max(box.x_lo, best.x - hx), std::min(box.x_hi, best.x + hx),
               std::max(box.y_lo, best.y - hy), std::min(box.y_hi, best.y + hy)};
    }
    return best;
}

template <class F>
double golden_maximize(double a, double b, double& fbest, F&& f)
{
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < 200 && (b - a) > 1e-13 * std::max(1.0, std::abs(a)); ++it) {
        if (f1 >= f2) {
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
    fbest = std::max(f1, f2);
    return f1 >= f2 ? x1 : x2;
}

std::vector<double> log_phi_prefix(Scheme scheme, const ChannelSpec& spec, double rate)
{
    const auto r = log_phi_ratios(scheme, spec, rate);
    std::vector<double> out{0.0};
    for (double v : r) out.push_back(out.back() + v);
    return out;
}

// Uniform design at rate R and target alpha; returns ln Pbar and the common ln P.
struct UniformPoint {
    double log_power = 0.0;
    double avg_power = 0.0;
};

UniformPoint uniform_point(const std::vector<double>& log_phi, double alpha)
{
    const int rounds = static_cast<int>(log_phi.size()) - 1;
    UniformPoint u;
    u.log_power = (log_phi.back() - std::log(alpha)) / rounds;
    for (int l = 1; l <= rounds; ++l)
        u.avg_power += std::exp(log_phi[static_cast<std::size_t>(l - 1)] - (l - 2) * u.log_power);
    return u;
}

QosSpec effective_qos(const QosSpec& qos)
{
    QosSpec q = qos;
    if (q.t0 >= 0.0 && q.t0 < kMinGoodput) q.t0 = kMinGoodput;
    q.validate();
    return q;
}

double alpha_max(double epsilon, double excess)
{
    return std::min(epsilon, excess / (1.0 + excess));
}

BaselineSolution infeasible(Scheme scheme, BaselineMethod method, const char* why)
{
    BaselineSolution b;
    b.method = method;
    b.solution.scheme = scheme;
    b.solution.reason = why;
    return b;
}

void require_oracle_size(const ChannelSpec& spec, int resolution)
{
    spec.validate();
    if (spec.rounds > kOracleMaxRounds) throw std::invalid_argument("grid oracle: L must be <= 3");
    if (resolution < 50) throw std::invalid_argument("grid oracle: resolution must be >= 50");
}

}  // namespace

BaselineSolution uniform_power_solve(Scheme scheme, const ChannelSpec& spec, const QosSpec& qos)
{
    if (!(qos.epsilon > 0.0))
        return infeasible(scheme, BaselineMethod::UniformPower, "outage tolerance epsilon must be > 0");
    spec.validate();
    const QosSpec q = effective_qos(qos);
    const double t0 = q.t0;

    // x = ln(excess), y = ln(alpha / alpha_max(R))
    auto ee_row = [&](double x) {
        const double u = std::exp(x);
        const double rate = t0 * (1.0 + u);
        const auto log_phi = log_phi_prefix(scheme, spec, rate);
        const double amax = alpha_max(q.epsilon, u);
        return [=](double y) {
            const double alpha = amax * std::exp(y);
            return rate * (1.0 - alpha) / uniform_point(log_phi, alpha).avg_power;
        };
    };
    const Box2 box{std::log(1e-12), std::log(kMaxRateSpan / t0), std::log(1e-8), 0.0};
    constexpr int kGrid = 200;
    Best2 best = grid_maximize(box, kGrid, 3, 0, ee_row);

    // Coordinate-wise golden-section polish inside one final grid cell.
    const double hx = (box.x_hi - box.x_lo) / (kGrid - 1) / std::pow(kGrid / 4.0, 3);
    const double hy = (box.y_hi - box.y_lo) / (kGrid - 1) / std::pow(kGrid / 4.0, 3);
    for (int pass = 0; pass < 3; ++pass) {
        double v = 0.0;
        const double y = best.y;
        const double x = golden_maximize(std::max(box.x_lo, best.x - hx), std::min(box.x_hi, best.x + hx), v,
                                         [&](double xx) { return ee_row(xx)(y); });
        if (v > best.value) best = {x, y, v};
        auto row = ee_row(best.x);
        const double y2 = golden_maximize(std::max(box.y_lo, best.y - hy), std::min(box.y_hi, best.y + hy), v, row);
        if (v > best.value) best = {best.x, y2, v};
    }

    const double u = std::exp(best.x);
    const double rate = t0 * (1.0 + u);
    const double alpha = alpha_max(q.epsilon, u) * std::exp(best.y);
    const auto point = uniform_point(log_phi_prefix(scheme, spec, rate), alpha);

    BaselineSolution out;
    out.method = BaselineMethod::UniformPower;
    Solution& s = out.solution;
    s.scheme = scheme;
    s.ladder.powers.assign(static_cast<std::size_t>(spec.rounds), std::exp(point.log_power));
    s.rate = rate;
    s.rate_excess = u;
    s.alpha = alpha;
    s.avg_power = point.avg_power;
    s.goodput = rate * (1.0 - alpha);
    s.ee = s.goodput / s.avg_power;
    s.spectral_efficiency = spectral_efficiency(scheme, spec, s.ladder, rate);
    s.feasible = true;
    return out;
}

BaselineSolution grid_oracle_allocate(Scheme scheme, const ChannelSpec& spec, double rate, double alpha,
                                      int resolution, int refine_rounds, unsigned workers)
{
    require_oracle_size(spec, resolution);
    if (!(rate > 0.0)) throw std::domain_error("grid oracle: rate must be > 0");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("grid oracle: alpha must lie in (0, 1)");
    const auto log_phi = log_phi_prefix(scheme, spec, rate);
    const int rounds = spec.rounds;
    const double log_alpha = std::log(alpha);

    // ln Pbar for free log-powers (ln P_1 .. ln P_{L-1}); P_L closes the outage constraint.
    auto avg_power = [&](const std::array<double, 2>& lp) {
        double total = 0.0;
        double log_prod = 0.0;
        for (int l = 1; l <= rounds; ++l) {
            const double log_power = l < rounds ? lp[static_cast<std::size_t>(l - 1)]
                                                : log_phi.back() - log_alpha - log_prod;
            total += std::exp(log_phi[static_cast<std::size_t>(l - 1)] - log_prod + log_power);
            log_prod += log_power;
        }
        return total;
    };

    std::array<double, 2> best_lp{0.0, 0.0};
    double best_power = kInf;
    if (rounds > 1) {
        const double center = (log_phi.back() - log_alpha) / rounds;
        const double span = 3.0 * kLn10;
        const Box2 box{center - span, center + span, center - span, center + span};
        if (rounds == 2) {
            const Box2 line{box.x_lo, box.x_hi, 0.0, 0.0};
            const Best2 b = grid_maximize(line, resolution, refine_rounds, workers, [&](double x) {
                return [&, x](double) { return -avg_power({x, 0.0}); };
            });
            best_lp = {b.x, 0.0};
            best_power = -b.value;
        } else {
            const Best2 b = grid_maximize(box, resolution, refine_rounds, workers, [&](double x) {
                return [&, x](double y) { return -avg_power({x, y}); };
            });
            best_lp = {b.x, b.y};
            best_power = -b.value;
        }
    } else {
        best_power = avg_power(best_lp);
    }

    BaselineSolution out;
    out.method = BaselineMethod::GridOracle;
    Solution& s = out.solution;
    s.scheme = scheme;
    double log_prod = 0.0;
    for (int l = 1; l < rounds; ++l) {
        s.ladder.powers.push_back(std::exp(best_lp[static_cast<std::size_t>(l - 1)]));
        log_prod += best_lp[static_cast<std::size_t>(l - 1)];
    }
    s.ladder.powers.push_back(std::exp(log_phi.back() - log_alpha - log_prod));
    s.rate = rate;
    s.alpha = alpha;
    s.avg_power = best_power;
    s.goodput = rate * (1.0 - alpha);
    s.ee = s.goodput / s.avg_power;
    s.spectral_efficiency = spectral_efficiency(scheme, spec, s.ladder, rate);
    s.feasible = true;
    return out;
}

BaselineSolution grid_oracle_solve(Scheme scheme, const ChannelSpec& spec, const QosSpec& qos, int resolution,
                                   int refine_rounds, unsigned workers)
{
    require_oracle_size(spec, resolution);
    if (!(qos.epsilon > 0.0))
        return infeasible(scheme, BaselineMethod::GridOracle, "outage tolerance epsilon must be > 0");
    const QosSpec q = effective_qos(qos);
    const double t0 = q.t0;
    const double delta = outage_cap(spec.rounds, q.epsilon);
    const double cap = delta / (1.0 - delta);

    auto ee_row = [&](double x) {
        const double u = std::exp(x);
        const double rate = t0 * (1.0 + u);
        const double amax = alpha_max(q.epsilon, u);
        return [=, &spec](double y) {
            const double alpha = amax * std::exp(y);
            return rate * (1.0 - alpha) / std::exp(log_min_avg_power(scheme, spec, rate, alpha));
        };
    };
    const double x_hi = std::min(std::log(cap * 100.0), std::log(kMaxRateSpan / t0));
    const Box2 box{std::log(cap * 1e-4), x_hi, std::log(1e-4), 0.0};
    const Best2 best = grid_maximize(box, resolution, refine_rounds, workers, ee_row);

    const double u = std::exp(best.x);
    const double alpha = alpha_max(q.epsilon, u) * std::exp(best.y);
    BaselineSolution out;
    out.method = BaselineMethod::GridOracle;
    out.solution = evaluate_design(scheme, spec, {t0 * (1.0 + u), u}, alpha);
    return out;
}

}  // namespace harqee
