#include "fraclamb/fractional_ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fraclamb/errors.hpp"
#include "fraclamb/quadrature.hpp"
#include "fraclamb/special_functions.hpp"

namespace fraclamb {
namespace {

constexpr double kIntegerSlack = 1e-12;

struct Substitution {
    double p;  // xi = x - t^p
    double q;  // weight exponent p*mu - 1
};

Substitution substitution_for(double mu) {
    for (int p = 1; p <= 64; ++p) {
        const double pm = p * mu;
        if (std::abs(pm - std::round(pm)) < 1e-9) return {static_cast<double>(p), std::round(pm) - 1.0};
    }
    // Irrational-looking mu: a large p makes the weight t^{p mu - 1} several
    // times differentiable at t = 0.
    const double p = std::ceil(4.0 / mu);
    return {p, p * mu - 1.0};
}

}  // namespace

FractionalOrder FractionalOrder::of(double nu) {
    if (!std::isfinite(nu)) throw DomainError("FractionalOrder: order must be finite");
    if (nu < -1.0 - kIntegerSlack) {
        throw DomainError("FractionalOrder: integrals of order above 1 are not supported (nu = " +
                          std::to_string(nu) + ")");
    }
    if (nu < 0.0) return {nu, 0, std::min(1.0, -nu)};
    const double rounded = std::round(nu);
    if (std::abs(nu - rounded) < kIntegerSlack) return {nu, static_cast<int>(rounded), 0.0};
    const double k = std::ceil(nu);
    return {nu, static_cast<int>(k), k - nu};
}

FractionalOrder FractionalOrder::integral_route(int nu) {
    if (nu < 0) throw DomainError("FractionalOrder::integral_route: order must be non-negative");
    return {static_cast<double>(nu), nu + 1, 1.0};
}

double weyl_integral(const SmoothFunction& g, double mu, double x, const QuadratureConfig& cfg) {
    if (!(mu > 0.0) || mu > 1.0) {
        throw DomainError("weyl_integral: order mu must lie in (0, 1], got " + std::to_string(mu));
    }
    const double span = truncation_span(g, x, cfg, 0.0, cfg.lower_cutoff);
    const Substitution sub = substitution_for(mu);
    const double scale = sub.p / gamma(mu);
    return integrate_power_kernel([&g](double xi) { return g(xi); }, x, sub.p, sub.q, span, scale, cfg)
        .value;
}

void require_derivatives(const SmoothFunction& f, int k, const QuadratureConfig& cfg) {
    const int available = f.derivative_order() + (cfg.numeric_derivative_fallback ? 4 : 0);
    if (k > available) {
        throw UnsupportedOrderError("'" + f.description() + "' provides derivatives up to order " +
                                    std::to_string(f.derivative_order()) + ", order " +
                                    std::to_string(k) + " is required" +
                                    (cfg.numeric_derivative_fallback
                                         ? std::string{}
                                         : std::string{" (numeric fallback disabled)"}));
    }
}

SmoothFunction derivative_view(const SmoothFunction& f, int k, const QuadratureConfig& cfg) {
    require_derivatives(f, k, cfg);
    if (k == 0) return f;
    std::optional<SmoothFunction::TailBoundFn> tail;
    if (f.has_decay()) {
        tail = [f](double upper) { return f.tail_bound(upper); };
    }
    const std::string name = "d^" + std::to_string(k) + "(" + f.description() + ")";
    if (k <= f.derivative_order()) {
        const int remaining = f.derivative_order() - k;
        return SmoothFunction(
            name, remaining, [f, k](int j, double x) { return f.derivative(k + j, x); }, tail);
    }
    return SmoothFunction(
        name, 0, [f, k](int, double x) { return numeric_derivative(f, k, x).value; }, tail);
}

double frac_derivative(const SmoothFunction& f, const FractionalOrder& order, double x,
                       const QuadratureConfig& cfg) {
    if (order.k == 0 && order.mu == 0.0) return f(x);
    const SmoothFunction g = derivative_view(f, order.k, cfg);
    if (order.mu == 0.0) return g(x);
    return weyl_integral(g, order.mu, x, cfg);
}

}  // namespace fraclamb
