#include "oracles.hpp"
#include "properties.hpp"

#include "harqee/allocator.hpp"
#include "harqee/corefns.hpp"
#include "harqee/optimizer.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace harqee;
using doctest::Approx;

namespace {

constexpr double kLn2 = std::numbers::ln2;

// Exact asymptotic EE at rate R with alpha from the rate.
double ee_at(Scheme scheme, const ChannelSpec& spec, const QosSpec& qos, double R)
{
    const double alpha = optimal_alpha(spec.rounds, qos, R);
    return R * (1.0 - alpha) / std::exp(log_min_avg_power(scheme, spec, R, alpha));
}

}  // namespace

TEST_CASE("optimal_alpha")
{
    CHECK(optimal_alpha(2, {0.1, 1.0}, 2.0) == 0.1);
    CHECK(optimal_alpha(1, {0.5, 1.0}, 1.5) == Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(optimal_alpha(10, {0.5, 1.0}, 2.0) == std::ldexp(1.0, -10));
    CHECK_THROWS_AS(optimal_alpha(2, {0.1, 1.0}, 1.0), InfeasibleError);
    CHECK_THROWS_AS(optimal_alpha(2, {0.1, 1.0}, 0.5), InfeasibleError);
}

TEST_CASE("stationarity functions are negative at t0")
{
    oracle::Sampler s(1);
    for (int i = 0; i < 200; ++i) {
        const int L = s.integer(1, 40);
        const double t0 = s.log_uniform(1e-3, 30.0);
        CHECK(varphi(L, t0, t0) == Approx(-outage_exponent(L) * t0 * std::expm1(t0 * kLn2)).epsilon(1e-12));
        CHECK(varphi(L, t0, t0) < 0.0);
        CHECK(upsilon(L, t0, t0) < 0.0);
    }
}

TEST_CASE("Type I / CC rate: cap-or-root against a dense scan of the rate objective")
{
    const QosSpec qos{1e-2, 2.0};
    const int L = 2;
    const double c = outage_exponent(L);
    const double cap = qos.t0 / (1.0 - outage_cap(L, qos.epsilon));
    const auto objective = [&](double R) { return std::log(std::expm1(R * kLn2)) - c * std::log1p(-qos.t0 / R); };
    double best_r = cap, best_v = objective(cap);
    for (double R = qos.t0 + 1e-6; R <= cap; R += 1e-6)
        if (objective(R) < best_v) {
            best_v = objective(R);
            best_r = R;
        }
    const double R = optimal_rate_typei_cc(L, qos);
    CHECK(std::abs(R - best_r) <= 2e-6);
    if (varphi(L, qos.t0, cap) < 0.0) CHECK(R == Approx(cap).epsilon(1e-14));
}

TEST_CASE("Type I / CC rate: interior root")
{
    oracle::Sampler s(2);
    for (int i = 0; i < 100; ++i) {
        const int L = s.integer(1, 12);
        const QosSpec qos{s.uniform(std::ldexp(1.0, -L), 1.0), s.log_uniform(1e-2, 10.0)};
        const double R = optimal_rate_typei_cc(L, qos);
        const double cap = qos.t0 / (1.0 - std::ldexp(1.0, -L));
        INFO("L=" << L << " t0=" << qos.t0);
        CHECK(R > qos.t0);
        CHECK(R <= cap);
        if (R < cap) {
            const double scan =
                oracle::first_sign_change([&](double r) { return varphi(L, qos.t0, r); }, qos.t0, cap, (cap - qos.t0) / 20000);
            CHECK(std::abs(R - scan) <= (cap - qos.t0) / 20000);
        }
    }
}

TEST_CASE("Type I / CC rate: collapses to t0 for many rounds")
{
    const double R = optimal_rate_typei_cc(30, {0.5, 2.0});
    CHECK(R > 2.0);
    CHECK(R - 2.0 < 1e-6);
    const RateChoice deep = rate_choice_typei_cc(64, {0.5, 2.0});
    CHECK(deep.excess > 0.0);
    CHECK(deep.excess <= std::ldexp(1.0, -64) / (1.0 - std::ldexp(1.0, -64)));
}

TEST_CASE("IR rate: zero of upsilon against a sign scan")
{
    const QosSpec qos{1e-4, 2.0};
    const int L = 5;
    const double cap = qos.t0 / (1.0 - outage_cap(L, qos.epsilon));
    const double R = optimal_rate_ir(L, qos);
    const double scan = oracle::first_sign_change([&](double r) { return upsilon(L, qos.t0, r); }, qos.t0, cap, 1e-7);
    CHECK(R > qos.t0);
    CHECK(R <= cap);
    CHECK(std::abs(R - std::min(scan, cap)) <= 1e-7);
}

TEST_CASE("IR rate: collapses to t0 for many rounds")
{
    double prev = 1e9;
    for (int L : {5, 10, 20, 40}) {
        const double gap = optimal_rate_ir(L, {0.5, 1.0}) - 1.0;
        CHECK(gap > 0.0);
        CHECK(gap < prev);
        prev = gap;
    }
    CHECK(prev < 1e-9);
}

TEST_CASE("direct Lambda search")
{
    SUBCASE("single round reduces to the Type I rate")
    {
        oracle::Sampler s(4);
        for (int i = 0; i < 50; ++i) {
            const QosSpec qos{s.log_uniform(1e-4, 1.0), s.log_uniform(1e-2, 10.0)};
            CHECK(lambda_direct_rate_ir(ChannelSpec::uniform(1, 0.0), qos) ==
                  Approx(optimal_rate_typei_cc(1, qos)).epsilon(1e-6));
        }
    }
    SUBCASE("never worse than the surrogate rate")
    {
        oracle::Sampler s(5);
        for (int i = 0; i < 200; ++i) {
            const int L = s.integer(1, 20);
            const QosSpec qos{s.log_uniform(1e-6, 1.0), s.log_uniform(1e-3, 20.0)};
            const RateChoice direct = lambda_direct_choice_ir(L, qos);
            const RateChoice surrogate = rate_choice_ir(L, qos);
            CHECK(log_lambda_excess(L, qos.t0, direct.excess) <= log_lambda_excess(L, qos.t0, surrogate.excess) + 1e-12);
        }
    }
    SUBCASE("surrogate loses less than 1% EE at L = 5")
    {
        const auto spec = ChannelSpec::uniform(5, 0.0);
        const QosSpec qos{1e-4, 2.0};
        const double direct = solve_ir_direct(spec, qos).ee;
        const double surrogate = solve(Scheme::IR, spec, qos).ee;
        CHECK(direct >= surrogate * (1 - 1e-12));
        CHECK(direct / surrogate - 1.0 < 0.01);
    }
}

TEST_CASE("solve: CC over Type I is exactly kappa_L^(1/(1-2^-L))")
{
    oracle::Sampler s(6);
    for (int i = 0; i < 100; ++i) {
        const props::Instance in = props::random_instance(s, 1, 30);
        const double ratio = solve(Scheme::CC, in.spec, in.qos).ee / solve(Scheme::TypeI, in.spec, in.qos).ee;
        const int L = in.spec.rounds;
        CHECK(ratio == Approx(std::pow(kappa(L), 1.0 / (1.0 - std::ldexp(1.0, -L)))).epsilon(1e-10));
    }
}

TEST_CASE("solve: Type I approaches its ceiling")
{
    const Solution s = solve(Scheme::TypeI, ChannelSpec::uniform(20, 0.0), {0.5, 1e-3});
    CHECK(s.ee == Approx(1.0 / (4.0 * kLn2)).epsilon(0.01));
}

TEST_CASE("solve: constraints and bookkeeping")
{
    oracle::Sampler s(7);
    for (int i = 0; i < 300; ++i) {
        const int L = s.integer(1, 64);
        const ChannelSpec spec = ChannelSpec::uniform(L, s.uniform(0.0, 0.99));
        const QosSpec qos{s.log_uniform(1e-8, 1.0), s.log_uniform(1e-3, 30.0)};
        for (Scheme scheme : kAllSchemes) {
            const Solution sol = solve(scheme, spec, qos);
            INFO(to_string(scheme) << " L=" << L << " rho=" << spec.rho << " eps=" << qos.epsilon << " t0=" << qos.t0);
            CHECK(sol.feasible);
            CHECK(check_solution(sol, qos) == "");
            CHECK(sol.alpha ==
                  std::min({qos.epsilon, sol.rate_excess / (1.0 + sol.rate_excess), std::ldexp(1.0, -L)}));
        }
    }
}

TEST_CASE("solve: degenerate inputs")
{
    const auto spec = ChannelSpec::uniform(3, 0.2);
    const Solution none = solve(Scheme::CC, spec, {0.0, 1.0});
    CHECK_FALSE(none.feasible);
    CHECK(none.reason.find("epsilon") != std::string::npos);
    CHECK_FALSE(solve(Scheme::IR, spec, {-0.1, 1.0}).feasible);

    const Solution tiny = solve(Scheme::TypeI, spec, {0.1, 1e-15});
    CHECK(tiny.feasible);
    CHECK(tiny.rate > kMinGoodput);
    CHECK(tiny.goodput >= kMinGoodput * (1 - 1e-12));

    CHECK_THROWS_AS(solve(Scheme::CC, spec, {1.5, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(solve(Scheme::CC, ChannelSpec::uniform(3, 1.0), {0.1, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(solve(Scheme::CC, ChannelSpec::uniform(65, 0.0), {0.1, 1.0}), std::invalid_argument);
}

TEST_CASE("solve: correlation lowers the optimal EE")
{
    for (Scheme scheme : kAllSchemes)
        for (int L : {2, 4, 8}) {
            const QosSpec qos{1e-3, 1.0};
            CHECK(solve(scheme, ChannelSpec::uniform(L, 0.9), qos).ee < solve(scheme, ChannelSpec::uniform(L, 0.1), qos).ee);
        }
}

TEST_CASE("solve: no rate on a fine grid beats the selected rate by more than 0.1%")
{
    oracle::Sampler s(8);
    for (int i = 0; i < 30; ++i) {
        const props::Instance in = props::random_instance(s, 1, 8);
        const Scheme scheme = kAllSchemes[i % 3];
        const Solution sol = solve(scheme, in.spec, in.qos);
        const double t0 = in.qos.t0;
        const double cap = t0 / (1.0 - outage_cap(in.spec.rounds, in.qos.epsilon));
        const int steps = std::max(200, static_cast<int>((cap - t0) / 1e-5));
        double best = 0.0;
        for (int k = 1; k <= steps; ++k) {
            const double R = t0 + (cap - t0) * k / steps;
            if (R > t0) best = std::max(best, ee_at(scheme, in.spec, in.qos, R));
        }
        INFO(to_string(scheme) << " " << in.str());
        CHECK(best <= sol.ee * 1.001);
    }
}

TEST_CASE("spectral_efficiency")
{
    const auto one = ChannelSpec::uniform(1, 0.0);
    const auto a1 = allocate(Scheme::TypeI, one, 1.0, 0.1);
    CHECK(spectral_efficiency(Scheme::TypeI, one, a1.ladder, 1.0) == Approx(0.9).epsilon(1e-13));

    const auto two = ChannelSpec::uniform(2, 0.0);
    const auto a2 = allocate(Scheme::TypeI, two, 1.0, 0.01);
    CHECK(spectral_efficiency(Scheme::TypeI, two, a2.ladder, 1.0) == Approx(0.99 / (1.0 + 1.0 / a2.ladder[0])).epsilon(1e-13));
    CHECK(spectral_efficiency(Scheme::TypeI, two, a2.ladder, 1.0) == Approx(0.8455).epsilon(1e-4));

    const PowerLadder strong{{1e12, 1e12, 1e12}};
    CHECK(spectral_efficiency(Scheme::IR, ChannelSpec::uniform(3, 0.5), strong, 2.0) == Approx(2.0).epsilon(1e-9));
}
