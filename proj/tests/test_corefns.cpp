#include "oracles.hpp"

#include "harqee/corefns.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace harqee;
using doctest::Approx;

namespace {

constexpr double kLn2 = std::numbers::ln2;

double rel(double a, double b)
{
    return std::abs(a - b) / std::abs(b);
}

}  // namespace

TEST_CASE("g: closed cases")
{
    for (double R : {1e-6, 0.3, 1.0, 5.0, 40.0}) CHECK(g(1, R) == Approx(std::exp2(R) - 1.0).epsilon(1e-14));
    CHECK(g(0, 0.0) == 0.0);
    CHECK(g(0, 2.0) == 1.0);
    CHECK(g(3, 0.0) == 0.0);
    CHECK(g(2, 1.0) == Approx(1.0 + 2.0 * (kLn2 - 1.0)).epsilon(1e-14));
    CHECK(g(2, 1.0) == Approx(0.386294).epsilon(1e-6));
}

TEST_CASE("g: agrees with the alternating sum where it does not cancel")
{
    for (int L = 1; L <= 6; ++L)
        for (double R : {2.0, 4.0, 8.0, 15.0}) {
            INFO("L=" << L << " R=" << R);
            CHECK(rel(g(L, R), oracle::g_alternating(L, R)) < 1e-11);
        }
}

TEST_CASE("g: agrees with contour quadrature over a wide grid")
{
    for (int L = 1; L <= 12; ++L)
        for (double R : {0.05, 0.25, 1.0, 3.0, 7.0}) {
            INFO("L=" << L << " R=" << R);
            // the quadrature carries an absolute error near 1e-16
            CHECK(std::abs(g(L, R) - oracle::g_contour(L, R)) < 1e-8 * g(L, R) + 1e-14);
        }
    CHECK(rel(g(2, 1.0), oracle::g_contour(2, 1.0)) < 1e-12);
}

TEST_CASE("g: small R keeps full relative precision")
{
    // leading term (R ln2)^L / L!
    const double R = 1e-4;
    for (int L : {3, 10, 30}) {
        const double lead = std::exp(L * std::log(R * kLn2) - std::lgamma(L + 1.0));
        CHECK(rel(g(L, R), lead) < 1e-3);
        CHECK(g(L, R) > 0.0);
    }
}

TEST_CASE("g: log and ratio forms are consistent")
{
    for (int k = 1; k <= 20; ++k)
        for (double R : {0.01, 0.7, 3.0, 12.0}) {
            INFO("k=" << k << " R=" << R);
            CHECK(rel(g_ratio(k, R), std::exp(log_g(k, R) - log_g(k - 1, R))) < 1e-12);
        }
    CHECK(log_g(0, 0.0) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("g: domain errors")
{
    CHECK_THROWS_AS(g(-1, 1.0), std::domain_error);
    CHECK_THROWS_AS(g(2, -0.5), std::domain_error);
    CHECK_THROWS_AS(g(2, std::nan("")), std::domain_error);
    CHECK_THROWS_AS(g_ratio(0, 1.0), std::domain_error);
}

TEST_CASE("g_prime")
{
    for (double R : {0.1, 1.0, 4.0}) CHECK(g_prime(1, R) == Approx(kLn2 * std::exp2(R)).epsilon(1e-14));
    CHECK(g_prime(2, 1.0) == Approx(2.0 * kLn2 * kLn2).epsilon(1e-14));
    CHECK(g_prime(2, 1.0) == Approx(0.960906).epsilon(1e-6));
    const double fd = oracle::derivative([](double r) { return g(3, r); }, 0.5, 1e-6);
    CHECK(rel(g_prime(3, 0.5), fd) < 1e-6);
    CHECK_THROWS_AS(g_prime(0, 1.0), std::domain_error);
    CHECK_THROWS_AS(g_prime(2, 0.0), std::domain_error);
}

TEST_CASE("g_prime matches finite differences on a random grid")
{
    oracle::Sampler s(11);
    for (int i = 0; i < 300; ++i) {
        const int L = s.integer(1, 15);
        const double R = s.uniform(0.2, 10.0);
        const double h = 1e-5 * R;
        INFO("L=" << L << " R=" << R);
        CHECK(rel(g_prime(L, R), oracle::derivative([&](double r) { return g(L, r); }, R, h)) < 1e-6);
    }
}

TEST_CASE("ell")
{
    for (double rho : {0.0, 0.3, 0.99}) {
        CHECK(ell(0, rho) == 1.0);
        CHECK(ell(1, rho) == 1.0);
    }
    for (int L = 0; L < 30; ++L) CHECK(ell(L, 0.0) == 1.0);
    CHECK(ell(2, 0.5) == Approx(0.75).epsilon(1e-15));
    CHECK(ell(3, 0.5) == Approx(0.75 * (1.0 - 0.0625)).epsilon(1e-15));
    CHECK_THROWS_AS(ell(2, 1.0), std::domain_error);
    CHECK_THROWS_AS(ell(2, -0.1), std::domain_error);
    double prev = 1.0;
    for (int L = 0; L <= 40; ++L) {
        const double v = ell(L, 0.8);
        CHECK(v <= prev);
        CHECK(v > 0.0);
        prev = v;
    }
    for (double rho = 0.05; rho < 1.0; rho += 0.05) CHECK(ell(5, rho) <= ell(5, rho - 0.05));
}

TEST_CASE("varsigma")
{
    CHECK(varsigma(ChannelSpec::uniform(3, 0.0)) == Approx(1.0).epsilon(1e-15));
    CHECK(varsigma(ChannelSpec::uniform(2, 0.5)) == Approx(4.0 / 3.0).epsilon(1e-14));
    CHECK(varsigma(ChannelSpec{1, 0.9, {4.0}}) == Approx(0.25).epsilon(1e-15));
    CHECK(varsigma(ChannelSpec::uniform(4, 0.5), 0) == 1.0);
    CHECK(varsigma(ChannelSpec{3, 0.2, {2.0, 0.5, 4.0}}) ==
          Approx(1.0 / (ell(3, 0.2) * 4.0)).epsilon(1e-14));
}

TEST_CASE("phi")
{
    for (Scheme s : kAllSchemes) CHECK(phi(s, ChannelSpec::uniform(3, 0.4), 0, 2.0) == 1.0);
    const auto spec = ChannelSpec::uniform(2, 0.0);
    CHECK(phi(Scheme::CC, spec, 2, 1.0) == Approx(0.5).epsilon(1e-14));
    CHECK(phi(Scheme::TypeI, spec, 2, 1.0) == Approx(1.0).epsilon(1e-14));
    CHECK(phi(Scheme::IR, spec, 2, 1.0) == Approx(0.386294).epsilon(1e-6));
    const auto corr = ChannelSpec{3, 0.6, {1.0, 2.0, 0.5}};
    for (int l = 0; l <= 3; ++l) {
        const double s = varsigma(corr, l);
        CHECK(phi(Scheme::TypeI, corr, l, 1.7) == Approx(s * std::pow(std::exp2(1.7) - 1.0, l)).epsilon(1e-13));
        CHECK(phi(Scheme::CC, corr, l, 1.7) ==
              Approx(s * std::pow(std::exp2(1.7) - 1.0, l) / std::tgamma(l + 1.0)).epsilon(1e-13));
        CHECK(phi(Scheme::IR, corr, l, 1.7) == Approx(s * oracle::g_contour(l, 1.7)).epsilon(1e-9));
    }
    CHECK_THROWS_AS(phi(Scheme::CC, spec, 3, 1.0), std::domain_error);
    CHECK_THROWS_AS(phi(Scheme::CC, spec, 1, 0.0), std::domain_error);
}

TEST_CASE("theta")
{
    for (int L : {1, 2, 7, 40}) CHECK(theta(ChannelSpec::uniform(L, 0.0)) == Approx(1.0).epsilon(1e-15));
    CHECK(theta(ChannelSpec::uniform(2, 0.5)) == Approx(std::cbrt(0.75)).epsilon(1e-14));
    CHECK(theta(ChannelSpec::uniform(2, 0.5)) == Approx(0.908560).epsilon(1e-6));
    CHECK(theta(ChannelSpec::uniform(5, 0.9)) < theta(ChannelSpec::uniform(5, 0.1)));
    for (double rho : {0.2, 0.6, 0.95}) CHECK(theta(ChannelSpec::uniform(10, rho)) <= 1.0);
}

TEST_CASE("kappa")
{
    CHECK(kappa(1) == 1.0);
    CHECK(kappa(2) == Approx(std::pow(2.0, 0.25)).epsilon(1e-15));
    CHECK(kappa(2) == Approx(1.189207).epsilon(1e-6));
    CHECK(std::abs(kappa(20) - 1.6617) <= 5e-4);
    for (int L = 1; L <= 30; ++L) CHECK(kappa(L) == Approx(oracle::kappa_product(L)).epsilon(1e-13));
    for (int L = 2; L <= 64; ++L) {
        CHECK(kappa(L) >= kappa(L - 1));
        CHECK(kappa(L) <= 2.0);
    }
    for (int L = 2; L <= 30; ++L) CHECK(kappa(L) > kappa(L - 1));
}

TEST_CASE("f_alpha and psi")
{
    CHECK(f_alpha(0.5, 1) == Approx(0.25).epsilon(1e-15));
    CHECK(f_alpha(0.01, 10) == Approx(0.99 * std::pow(0.01, 1.0 / 1023.0)).epsilon(1e-14));
    CHECK(f_alpha(0.01, 10) == Approx(0.985554).epsilon(1e-6));
    for (int L = 1; L <= 12; ++L) {
        const double peak = f_alpha(std::ldexp(1.0, -L), L);
        for (double a = 1e-4; a < 1.0; a *= 1.3) CHECK(peak >= f_alpha(a, L));
    }
    CHECK_THROWS_AS(f_alpha(0.0, 2), std::domain_error);
    CHECK_THROWS_AS(f_alpha(1.0, 2), std::domain_error);

    CHECK(psi(1) == Approx(1.0).epsilon(1e-15));
    CHECK(psi(2) == Approx(std::pow(2.0, 8.0 / 3.0 - 2.0) / 3.0).epsilon(1e-14));
    CHECK(psi(2) == Approx(0.529134).epsilon(1e-6));
    CHECK(std::abs(psi(30) - 0.25) < 1e-6);
    CHECK(std::abs(psi(64) - 0.25) < 1e-15);
}

TEST_CASE("outage exponent and cap")
{
    CHECK(outage_exponent(1) == 1.0);
    CHECK(outage_exponent(3) == Approx(1.0 / 7.0).epsilon(1e-15));
    CHECK(outage_exponent(64) > 0.0);
    CHECK(outage_cap(2, 0.5) == 0.25);
    CHECK(outage_cap(2, 0.01) == 0.01);
}

TEST_CASE("core functions are pure")
{
    const auto spec = ChannelSpec{4, 0.7, {1.0, 0.5, 2.0, 1.5}};
    for (int rep = 0; rep < 3; ++rep) {
        CHECK(g(7, 2.3) == g(7, 2.3));
        CHECK(theta(spec) == theta(spec));
        CHECK(phi(Scheme::IR, spec, 4, 1.1) == phi(Scheme::IR, spec, 4, 1.1));
    }
}
