#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fraclamb/errors.hpp"
#include "fraclamb/forward_verifier.hpp"
#include "fraclamb/special_functions.hpp"
#include "oracles.hpp"

using namespace fraclamb;
using doctest::Approx;

namespace {
double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }
}  // namespace

TEST_CASE("gamma at the constants used by every solution formula") {
    CHECK(fraclamb::gamma(1.0) == 1.0);
    CHECK(rel(fraclamb::gamma(0.5), 1.7724538509055160) < 1e-15);
    CHECK(rel(fraclamb::gamma(0.5), std::sqrt(std::numbers::pi)) < 1e-15);
    // Gamma(5/2) = (3/2)(1/2) Gamma(1/2)
    CHECK(rel(fraclamb::gamma(2.5), 1.3293403881791370) < 1e-15);
    CHECK(rel(fraclamb::gamma(2.5), 0.75 * std::sqrt(std::numbers::pi)) < 1e-15);
    CHECK(fraclamb::gamma(5.0) == 24.0);
}

TEST_CASE("gamma matches std::tgamma on [0.5, 50]") {
    double worst = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        const double p = 0.5 + 49.5 * i / 2000.0 + 1e-3 * std::sin(i);
        worst = std::max(worst, rel(fraclamb::gamma(p), std::tgamma(p)));
    }
    CHECK(worst < 1e-13);
    // below 1/2 the reflection-free shift keeps accuracy too
    CHECK(rel(fraclamb::gamma(0.3), std::tgamma(0.3)) < 1e-13);
    CHECK(rel(fraclamb::gamma(1.0 + 1.0 / 3.0), std::tgamma(4.0 / 3.0)) < 1e-14);
}

TEST_CASE("gamma recurrence holds for random arguments") {
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const double p = 0.5 + 19.5 * counter_uniform(7, 1, i);
        worst = std::max(worst, rel(fraclamb::gamma(p + 1.0), p * fraclamb::gamma(p)));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("gamma and beta reject non-positive arguments") {
    CHECK_THROWS_AS(fraclamb::gamma(0.0), DomainError);
    CHECK_THROWS_AS(fraclamb::gamma(-1.5), DomainError);
    CHECK_THROWS_AS(fraclamb::gamma(std::nan("")), DomainError);
    CHECK_THROWS_AS(beta(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(beta(1.0, -2.0), DomainError);
}

TEST_CASE("beta examples and symmetry") {
    CHECK(beta(1.0, 1.0) == Approx(1.0).epsilon(1e-15));
    CHECK(rel(beta(0.5, 0.5), std::numbers::pi) < 1e-15);
    CHECK(rel(beta(1.5, 0.5), std::numbers::pi / 2) < 1e-15);
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 100; ++i) {
        const double p = 0.5 + 10.0 * counter_uniform(3, 2, 2 * i);
        const double q = 0.5 + 10.0 * counter_uniform(3, 2, 2 * i + 1);
        worst = std::max(worst, rel(beta(p, q), beta(q, p)));
    }
    CHECK(worst < 1e-13);
}

TEST_CASE("int_0^pi sin^m equals B((m+1)/2, 1/2)") {
    for (int m = 1; m <= 8; ++m) {
        const double lhs = oracle::integrate([m](double t) { return std::pow(std::sin(t), m); }, 0.0,
                                             std::numbers::pi, 1e-14);
        CAPTURE(m);
        CHECK(std::abs(lhs - beta(0.5 * (m + 1), 0.5)) < 1e-10);
    }
}

TEST_CASE("sphere volumes") {
    CHECK(rel(sphere_volume(1).value, 2.0) < 1e-15);
    CHECK(rel(sphere_volume(2).value, 2.0 * std::numbers::pi) < 1e-15);
    CHECK(rel(sphere_volume(3).value, 4.0 * std::numbers::pi) < 1e-15);
    CHECK(sphere_volume(7).n == 7);
    CHECK_THROWS_AS(sphere_volume(0), DomainError);

    for (int n = 1; n <= 12; ++n) {
        CAPTURE(n);
        const double v = sphere_volume(n).value;
        CHECK(rel(v, 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n)) < 1e-14);
        CHECK(rel(v * 0.5 * fraclamb::gamma(0.5 * n), std::pow(std::numbers::pi, 0.5 * n)) < 1e-13);
    }
}

TEST_CASE("sphere volume is the product of the angular Beta integrals") {
    // Vol(S^{n-1}) = 2 pi prod_{m=1}^{n-2} B((m+1)/2, 1/2)
    for (int n = 2; n <= 9; ++n) {
        double product = 2.0 * std::numbers::pi;
        for (int m = 1; m <= n - 2; ++m) product *= beta(0.5 * (m + 1), 0.5);
        CAPTURE(n);
        CHECK(rel(sphere_volume(n).value, product) < 1e-13);
    }
}
