#include "fraclamb/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

#include "fraclamb/errors.hpp"
#include "fraclamb/forward_verifier.hpp"
#include "fraclamb/fractional_ops.hpp"
#include "fraclamb/lamb_solver.hpp"
#include "fraclamb/special_functions.hpp"

namespace fraclamb {
namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

std::vector<double> linspace(double a, double b, int count) {
    std::vector<double> xs(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) xs[static_cast<std::size_t>(i)] = a + (b - a) * i / (count - 1);
    return xs;
}

// Max |got - want| over the probes divided by max |want|; robust where want crosses zero.
double scaled_err(const std::vector<double>& xs, const std::function<double(double)>& got,
                  const std::function<double(double)>& want) {
    double worst = 0.0;
    double scale = 0.0;
    for (double x : xs) {
        const double w = want(x);
        worst = std::max(worst, std::abs(got(x) - w));
        scale = std::max(scale, std::abs(w));
    }
    return scale > 0.0 ? worst / scale : worst;
}

std::vector<SmoothFunction> family() {
    return {exponential(1.0), gauss_tail(1.0, 0.0), shifted_gaussian(1.0, 0.0)};
}

class Runner {
public:
    explicit Runner(SelftestReport& report) : report_(report) {}

    void check(const std::string& name, double limit, const std::function<double()>& body) {
        double measured = 0.0;
        bool ok = false;
        try {
            measured = body();
            ok = measured < limit;
        } catch (const Error&) {
            measured = std::numeric_limits<double>::infinity();
        }
        report_.checks.push_back({name, measured, limit, ok});
    }

private:
    SelftestReport& report_;
};

}  // namespace

bool SelftestReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const SelftestCheck& c) { return c.passed; });
}

std::string SelftestReport::to_text() const {
    std::string out;
    char line[256];
    std::size_t passed = 0;
    for (const auto& c : checks) {
        std::snprintf(line, sizeof line, "%s %-40s measured=%.6e limit=%.1e\n", c.passed ? "PASS" : "FAIL",
                      c.name.c_str(), c.measured, c.limit);
        out += line;
        passed += c.passed ? 1 : 0;
    }
    std::snprintf(line, sizeof line, "%zu/%zu checks passed\n", passed, checks.size());
    out += line;
    return out;
}

SelftestReport run_selftest(const QuadratureConfig& cfg) {
    cfg.validate();
    SelftestReport report;
    Runner run(report);
    const double pi = std::numbers::pi;

    run.check("special.gamma_half_squared", 1e-13, [&] { return rel_err(gamma(0.5) * gamma(0.5), pi); });
    run.check("special.gamma_one", 1e-13, [&] { return rel_err(gamma(1.0), 1.0); });
    run.check("special.sphere_volume_identity", 1e-13, [&] {
        double worst = 0.0;
        for (int n = 1; n <= 12; ++n) {
            worst = std::max(worst, rel_err(sphere_volume(n).value * 0.5 * gamma(0.5 * n), std::pow(pi, 0.5 * n)));
        }
        return worst;
    });
    run.check("special.gamma_recurrence", 1e-12, [&] {
        double worst = 0.0;
        for (std::uint64_t i = 0; i < 200; ++i) {
            const double p = 0.5 + 19.5 * counter_uniform(cfg.mc_seed, 0xA11CE, i);
            worst = std::max(worst, rel_err(gamma(p + 1.0), p * gamma(p)));
        }
        return worst;
    });
    run.check("special.beta_symmetry", 1e-13, [&] {
        double worst = 0.0;
        for (std::uint64_t i = 0; i < 100; ++i) {
            const double p = 0.5 + 10.0 * counter_uniform(cfg.mc_seed, 0xBE7A, 2 * i);
            const double q = 0.5 + 10.0 * counter_uniform(cfg.mc_seed, 0xBE7A, 2 * i + 1);
            worst = std::max(worst, rel_err(beta(p, q), beta(q, p)));
        }
        return worst;
    });

    const auto probes20 = linspace(-2.0, 2.0, 20);
    const auto probes5 = linspace(-1.0, 1.0, 5);

    run.check("fractional.eigenfunction_law", 1e-7, [&] {
        double worst = 0.0;
        for (double lambda : {0.5, 1.0, 2.0, 4.0}) {
            const auto f = exponential(lambda);
            for (double nu : {0.5, 1.5, 2.5}) {
                for (double x : probes20) {
                    worst = std::max(worst, rel_err(frac_derivative(f, nu, x, cfg),
                                                    std::pow(lambda, nu) * std::exp(lambda * x)));
                }
            }
        }
        return worst;
    });
    run.check("fractional.integer_consistency", 1e-9, [&] {
        double worst = 0.0;
        for (const auto& f : family()) {
            for (int nu : {1, 2, 3}) {
                worst = std::max(worst, scaled_err(
                                            probes20,
                                            [&](double x) {
                                                return frac_derivative(f, FractionalOrder::integral_route(nu), x, cfg);
                                            },
                                            [&](double x) { return f.derivative(nu, x); }));
            }
        }
        return worst;
    });
    run.check("fractional.semigroup", 1e-6, [&] {
        double worst = 0.0;
        const std::pair<double, double> orders[] = {{0.25, 0.25}, {0.25, 0.5}, {0.5, 0.5}, {1.0 / 3, 1.0 / 3}};
        for (const auto& g : {exponential(1.0), gauss_tail(1.0, 0.0)}) {
            for (const auto& [mu, nu] : orders) {
                const auto inner = lazy_function(
                    "inner", [g, mu, cfg](double x) { return weyl_integral(g, mu, x, cfg); },
                    [g](double upper) { return g.tail_bound(upper); });
                worst = std::max(worst, scaled_err(
                                            probes5, [&](double x) { return weyl_integral(inner, nu, x, cfg); },
                                            [&](double x) { return weyl_integral(g, mu + nu, x, cfg); }));
            }
        }
        return worst;
    });
    run.check("fractional.half_derivative_twice", 1e-5, [&] {
        QuadratureConfig fallback = cfg;
        fallback.numeric_derivative_fallback = true;
        double worst = 0.0;
        for (const auto& f : {exponential(1.0), shifted_gaussian(1.0, 0.0)}) {
            const auto half = lazy_function(
                "half", [f, fallback](double x) { return frac_derivative(f, 0.5, x, fallback); },
                [f](double upper) { return f.tail_bound(upper); });
            worst = std::max(worst, scaled_err(
                                        probes5, [&](double x) { return frac_derivative(half, 0.5, x, fallback); },
                                        [&](double x) { return f.derivative(1, x); }));
        }
        return worst;
    });

    run.check("solver.classic_eigenfunction", 1e-7, [&] {
        double worst = 0.0;
        for (double lambda : {1.0, 2.0, 4.0}) {
            const auto u = solve_classic(exponential(lambda), cfg);
            for (double x : probes20) {
                worst = std::max(worst, rel_err(u(x), 2.0 / std::sqrt(pi) * std::sqrt(lambda) * std::exp(lambda * x)));
            }
        }
        return worst;
    });
    run.check("solver.classic_roundtrip", 1e-6, [&] {
        double worst = 0.0;
        for (double lambda : {1.0, 2.0, 4.0}) {
            const auto u = solve_classic(exponential(lambda), cfg);
            for (double x : probes20) worst = std::max(worst, rel_err(forward_power(u, 2, x, cfg), std::exp(lambda * x)));
        }
        return worst;
    });
    run.check("solver.ndim_roundtrip", 1e-6, [&] {
        double worst = 0.0;
        for (int n = 1; n <= 6; ++n) {
            for (const auto& f : family()) {
                worst = std::max(worst, verify(ProblemSpec::symmetric_ndim(n), f, -1.0, 1.0, 11, cfg).max_rel_residual);
            }
        }
        return worst;
    });
    run.check("solver.ndim_even_integral_route", 1e-7, [&] {
        double worst = 0.0;
        for (int n : {2, 4, 6}) {
            for (const auto& f : family()) {
                const auto direct = solve_ndim(f, n, cfg);
                const auto route = solve_ndim_integral_route(f, n, cfg);
                worst = std::max(worst, scaled_err(probes5, route, direct));
            }
        }
        return worst;
    });
    run.check("solver.classic_ndim_bridge", 1e-9, [&] {
        double worst = 0.0;
        for (const auto& f : family()) {
            const auto classic = solve_classic(f, cfg);
            const auto ndim = solve_ndim(f, 1, cfg);
            worst = std::max(worst, scaled_err(probes5, classic, [&](double x) { return 2.0 * ndim(x); }));
        }
        return worst;
    });
    run.check("solver.power_roundtrip", 1e-5, [&] {
        double worst = 0.0;
        for (int m = 1; m <= 4; ++m) {
            worst = std::max(worst, verify(ProblemSpec::power(m), exponential(1.0), -1.0, 1.0, 11, cfg).max_rel_residual);
        }
        return worst;
    });
    run.check("solver.power_classic_bridge", 1e-7, [&] {
        double worst = 0.0;
        for (const auto& f : family()) {
            worst = std::max(worst, scaled_err(probes5, solve_power(f, 2, cfg), solve_classic(f, cfg)));
        }
        return worst;
    });

    const PosDefMatrix matrices[] = {PosDefMatrix::identity(2), PosDefMatrix(2, {4.0, 0.0, 0.0, 1.0}),
                                     PosDefMatrix(2, {2.0, 1.0, 1.0, 2.0})};
    run.check("solver.quadform_mc_sigmas", 4.0, [&] {
        double worst = 0.0;
        const auto f = exponential(1.0);
        for (const auto& A : matrices) {
            const auto est = forward_quadform_mc(solve_quadform(f, A, cfg), A, 0.0, cfg);
            worst = std::max(worst, std::abs(est.estimate - f(0.0)) / est.std_error);
        }
        return worst;
    });
    run.check("solver.quadform_scaling", 1e-9, [&] {
        double worst = 0.0;
        for (const auto& A : matrices) {
            for (double c : {2.0, 5.0}) {
                const auto base = solve_quadform(exponential(1.0), A, cfg);
                const auto scaled = solve_quadform(exponential(1.0), A.scaled(c), cfg);
                worst = std::max(worst, scaled_err(probes5, scaled, [&](double x) { return c * base(x); }));
            }
        }
        return worst;
    });

    double worst_sigmas = 0.0;
    double worst_rel = 0.0;
    for (int n = 1; n <= 3; ++n) {
        for (double lambda : {1.0, 2.0}) {
            const auto u = exponential(lambda);
            for (double x : {-1.0, 0.0, 1.0}) {
                const double radial = forward_radial(u, n, x, cfg);
                const auto mc = forward_montecarlo(u, n, x, cfg);
                worst_sigmas = std::max(worst_sigmas, std::abs(mc.estimate - radial) / mc.std_error);
                worst_rel = std::max(worst_rel, rel_err(mc.estimate, radial));
            }
        }
    }
    report.checks.push_back({"forward.radial_vs_cartesian_sigmas", worst_sigmas, 4.0, worst_sigmas < 4.0});
    report.checks.push_back({"forward.radial_vs_cartesian_rel", worst_rel, 1e-2, worst_rel < 1e-2});
    return report;
}

}  // namespace fraclamb
