#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <atomic>
#include <thread>

#include "fraclamb/errors.hpp"
#include "fraclamb/function_model.hpp"
#include "oracles.hpp"

using namespace fraclamb;

namespace {

std::vector<SmoothFunction> members() {
    return {exponential(1.0), exponential(2.0), gauss_tail(1.0, 0.0), gauss_tail(2.0, 0.5),
            shifted_gaussian(1.0, 0.0), shifted_gaussian(0.7, -0.4)};
}

std::vector<double> probes(double a, double b, int count) {
    std::vector<double> xs;
    for (int i = 0; i < count; ++i) xs.push_back(a + (b - a) * i / (count - 1));
    return xs;
}

// max |got - want| / max |want| over the probe set
template <typename Got, typename Want>
double scaled_error(const std::vector<double>& xs, Got got, Want want) {
    double worst = 0.0;
    double scale = 0.0;
    for (double x : xs) {
        worst = std::max(worst, std::abs(got(x) - want(x)));
        scale = std::max(scale, std::abs(want(x)));
    }
    return worst / scale;
}

}  // namespace

TEST_CASE("test family closed forms") {
    const double x = 0.37;
    CHECK(exponential(1.5)(x) == doctest::Approx(std::exp(1.5 * x)).epsilon(1e-15));
    CHECK(exponential(1.5).derivative(3, x) == doctest::Approx(std::pow(1.5, 3) * std::exp(1.5 * x)).epsilon(1e-14));
    CHECK(gauss_tail(1.3, 0.4)(x) ==
          doctest::Approx(std::exp(1.3 * x) / (1.0 + std::exp(1.3 * (x - 0.4)))).epsilon(1e-15));
    CHECK(gauss_tail(1.0, 0.0)(30.0) == doctest::Approx(1.0 / (1.0 + std::exp(-30.0))).epsilon(1e-15));
    CHECK(shifted_gaussian(0.8, 0.2)(x) == doctest::Approx(std::exp(-std::pow(x - 0.2, 2) / (2 * 0.64))).epsilon(1e-15));
}

TEST_CASE("derivative(0, x) is evaluate(x)") {
    for (const auto& f : members()) {
        for (double x : probes(-5, 5, 23)) CHECK(f.derivative(0, x) == f(x));
    }
}

TEST_CASE("analytic derivatives agree with five-point differences of the previous order") {
    const auto xs = probes(-5.0, 5.0, 50);
    for (const auto& f : members()) {
        for (int k = 1; k <= kFamilyDerivativeOrder; ++k) {
            const double err = scaled_error(
                xs, [&](double x) { return f.derivative(k, x); },
                [&](double x) { return oracle::five_point([&](double t) { return f.derivative(k - 1, t); }, x, 1e-3); });
            CAPTURE(f.description());
            CAPTURE(k);
            CHECK(err < 1e-6);
        }
    }
}

TEST_CASE("gauss_tail derivatives stay accurate on both sides of the knee") {
    // The reflected branch (t > 0) and direct branch (t <= 0) must join smoothly.
    const auto f = gauss_tail(1.0, 0.0);
    for (int k = 1; k <= 4; ++k) {
        const double left = f.derivative(k, -1e-12);
        const double right = f.derivative(k, 1e-12);
        CAPTURE(k);
        CHECK(std::abs(left - right) < 1e-10);
    }
}

TEST_CASE("derivative beyond the declared order is refused") {
    CHECK_THROWS_AS(exponential(1.0).derivative(kFamilyDerivativeOrder + 1, 0.0), UnsupportedOrderError);
    CHECK_THROWS_AS(exponential(1.0).derivative(-1, 0.0), UnsupportedOrderError);
}

TEST_CASE("invalid family parameters") {
    CHECK_THROWS_AS(exponential(0.0), DomainError);
    CHECK_THROWS_AS(exponential(-1.0), DomainError);
    CHECK_THROWS_AS(gauss_tail(-1.0, 0.0), DomainError);
    CHECK_THROWS_AS(shifted_gaussian(0.0, 0.0), DomainError);
}

TEST_CASE("tail bounds dominate every derivative and vanish to the left") {
    for (const auto& f : members()) {
        CAPTURE(f.description());
        double previous = f.tail_bound(6.0);
        for (double upper = 6.0; upper >= -40.0; upper -= 0.25) {
            const double bound = f.tail_bound(upper);
            CHECK(bound <= previous);
            previous = bound;
            for (double xi : {upper, upper - 0.1, upper - 1.0, upper - 3.0}) {
                for (int k = 0; k <= kFamilyDerivativeOrder; ++k) {
                    CHECK(std::abs(f.derivative(k, xi)) <= bound * (1.0 + 1e-12));
                }
            }
        }
        CHECK(f.tail_bound(-200.0) < 1e-30);
    }
}

TEST_CASE("numeric_derivative examples") {
    const auto d1 = numeric_derivative(exponential(1.0), 1, 0.0);
    CHECK(std::abs(d1.value - 1.0) < 1e-8);
    CHECK(d1.error < 1e-6);
    // d^2/dx^2 exp(-x^2/2) at 0 is -1
    CHECK(std::abs(numeric_derivative(shifted_gaussian(1.0, 0.0), 2, 0.0).value + 1.0) < 1e-6);
    const auto d0 = numeric_derivative(exponential(2.0), 0, 0.0);
    CHECK(d0.value == 1.0);
    CHECK(d0.error == 0.0);
}

TEST_CASE("numeric_derivative tracks analytic derivatives of the family") {
    const auto xs = probes(-5.0, 5.0, 50);
    for (const auto& f : members()) {
        for (int k = 1; k <= 4; ++k) {
            CAPTURE(f.description());
            CAPTURE(k);
            CHECK(scaled_error(xs, [&](double x) { return numeric_derivative(f, k, x).value; },
                               [&](double x) { return f.derivative(k, x); }) < 1e-6);
        }
    }
}

TEST_CASE("pure finite differences of order-0 functions") {
    // No analytic derivatives to lean on: every order is differenced from f itself.
    const auto xs = probes(-5.0, 5.0, 50);
    const double limits[] = {0.0, 1e-9, 1e-8, 1e-7, 1e-5};
    for (const auto& f : members()) {
        const SmoothFunction values_only(f.description(), 0, [f](int, double x) { return f(x); });
        for (int k = 1; k <= 4; ++k) {
            CAPTURE(f.description());
            CAPTURE(k);
            CHECK(scaled_error(xs, [&](double x) { return numeric_derivative(values_only, k, x).value; },
                               [&](double x) { return f.derivative(k, x); }) < limits[k]);
        }
    }
}

TEST_CASE("numeric_derivative extends at most four orders past the analytic ones") {
    const auto f = exponential(1.0);
    const auto order0 = SmoothFunction("exp0", 0, [](int, double x) { return std::exp(x); });
    CHECK(std::abs(numeric_derivative(order0, 4, 0.3).value - std::exp(0.3)) < 1e-5);
    CHECK_THROWS_AS(numeric_derivative(order0, 5, 0.3), UnsupportedOrderError);
    CHECK(std::abs(numeric_derivative(f, kFamilyDerivativeOrder + 4, 0.0).value - 1.0) < 1e-5);
}

TEST_CASE("effective_lower_cutoff examples") {
    const double l1 = effective_lower_cutoff(exponential(1.0), 1e-12);
    CHECK(l1 <= std::log(1e-12));
    CHECK(l1 > std::log(1e-12) - 1e-6);
    CHECK(effective_lower_cutoff(exponential(2.0), 1e-12) <= -13.82);
    CHECK(effective_lower_cutoff(shifted_gaussian(1.0, 0.0), 1e-12) <= -7.5);
}

TEST_CASE("derivatives at the cutoff are within the slack factor") {
    for (const auto& f : members()) {
        for (double eps : {1e-6, 1e-12}) {
            const double cut = effective_lower_cutoff(f, eps);
            CHECK(f.tail_bound(cut) <= eps);
            for (int k = 0; k <= kFamilyDerivativeOrder; ++k) CHECK(std::abs(f.derivative(k, cut)) <= 10 * eps);
        }
    }
}

TEST_CASE("effective_lower_cutoff errors") {
    const SmoothFunction no_decay("const", 3, [](int k, double) { return k == 0 ? 1.0 : 0.0; });
    CHECK_THROWS_AS(effective_lower_cutoff(no_decay, 1e-12), NoDecayError);
    CHECK_THROWS_AS(effective_lower_cutoff(exponential(1.0), 0.0), DomainError);
    const SmoothFunction stuck("flat", 0, [](int, double) { return 1.0; }, [](double) { return 1.0; });
    CHECK_THROWS_AS(effective_lower_cutoff(stuck, 1e-3), NoDecayError);
}

TEST_CASE("sample grids") {
    const auto g = sample(exponential(1.0), 0.0, 1.0, 2);
    REQUIRE(g.size() == 2);
    CHECK(g.values[0] == 1.0);
    CHECK(g.values[1] == doctest::Approx(std::numbers::e).epsilon(1e-15));

    const auto s = sample(shifted_gaussian(1.0, 0.0), -1.0, 1.0, 3);
    CHECK(s.values[0] == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
    CHECK(s.values[1] == 1.0);
    CHECK(s.values[2] == s.values[0]);

    const auto two = sample(gauss_tail(1.0, 0.0), 2.0, 3.0, 2);
    CHECK(two.node(0) == 2.0);
    CHECK(two.node(1) == 3.0);

    CHECK_THROWS_AS(sample(exponential(1.0), 1.0, 1.0, 5), DomainError);
    CHECK_THROWS_AS(sample(exponential(1.0), 1.0, -1.0, 5), DomainError);
    CHECK_THROWS_AS(sample(exponential(1.0), 0.0, 1.0, 1), DomainError);
}

TEST_CASE("sample values equal pointwise evaluation bit for bit") {
    for (const auto& f : members()) {
        const auto grid = sample(f, -3.3, 2.9, 101);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(grid.node(i) == grid.x_start + static_cast<double>(i) * grid.x_step);
            CHECK(grid.values[i] == f(grid.node(i)));
        }
    }
}

TEST_CASE("linear combinations") {
    const auto f = exponential(1.0);
    const auto g = shifted_gaussian(1.0, 0.0);
    const auto h = linear_combination(2.0, f, -3.0, g);
    CHECK(h.derivative_order() == kFamilyDerivativeOrder);
    for (double x : probes(-2, 2, 9)) {
        CHECK(h.derivative(2, x) == doctest::Approx(2.0 * f.derivative(2, x) - 3.0 * g.derivative(2, x)));
    }
    CHECK(h.tail_bound(-1.0) == doctest::Approx(2.0 * f.tail_bound(-1.0) + 3.0 * g.tail_bound(-1.0)));
    CHECK_FALSE(linear_combination(1.0, f, 1.0, SmoothFunction("x", 1, [](int, double x) { return x; })).has_decay());
}

TEST_CASE("zero function") {
    const auto z = zero_function();
    CHECK(z(3.0) == 0.0);
    CHECK(z.derivative(7, -2.0) == 0.0);
    CHECK(z.tail_bound(10.0) == 0.0);
}

TEST_CASE("lazy functions memoize and tolerate concurrent evaluation") {
    std::atomic<int> calls{0};
    const auto lazy = lazy_function(
        "counted", [&calls](double x) { ++calls; return x * x; }, std::nullopt);
    CHECK(lazy(3.0) == 9.0);
    CHECK(lazy(3.0) == 9.0);
    CHECK(calls.load() == 1);
    CHECK(lazy.derivative_order() == 0);
    CHECK_FALSE(lazy.has_decay());
    CHECK_THROWS_AS(lazy.tail_bound(0.0), NoDecayError);

    std::vector<std::thread> workers;
    std::atomic<int> mismatches{0};
    for (int t = 0; t < 4; ++t) {
        workers.emplace_back([&, t] {
            for (int i = 0; i < 2000; ++i) {
                const double x = 0.001 * ((i * 7 + t) % 500);
                if (lazy(x) != x * x) ++mismatches;
            }
        });
    }
    for (auto& w : workers) w.join();
    CHECK(mismatches.load() == 0);
}

TEST_CASE("test family selectors") {
    TestFamilyMember m;
    m.kind = TestFamilyMember::Kind::gauss_tail;
    m.lambda = 2.0;
    m.c = -0.5;
    CHECK(m.selector() == "gauss_tail:lambda=2:c=-0.5");
    CHECK(m.to_function()(0.1) == gauss_tail(2.0, -0.5)(0.1));
}
