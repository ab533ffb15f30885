#pragma once

#include "fraclamb/config.hpp"
#include "fraclamb/function_model.hpp"

namespace fraclamb {

/// Order nu of d^nu/dx^nu, split as nu = k - mu: a k-th derivative followed
/// by a Weyl integral of order mu (mu = 0 means no integral).
struct FractionalOrder {
    double nu = 0.0;
    int k = 0;
    double mu = 0.0;

    /// k = ceil(nu), mu = k - nu; integer nu gives mu = 0. For -1 <= nu < 0,
    /// k = 0 and mu = -nu. Throws DomainError for nu < -1.
    static FractionalOrder of(double nu);

    /// Integer nu >= 0 written as (nu + 1) derivatives followed by a plain
    /// integral (mu = 1). Used to cross-check the integer path.
    static FractionalOrder integral_route(int nu);
};

/// Weyl fractional integral of order mu in (0, 1]:
///   (1 / Gamma(mu)) int_{-inf}^x g(xi) (x - xi)^{mu - 1} dxi.
///
/// The substitution xi = x - t^p, with p the smallest integer making p*mu
/// integral (p <= 64), leaves the smooth integrand p t^{p mu - 1} g(x - t^p);
/// for mu = 1/2 this is 2 int_0^inf g(x - t^2) dt. The lower limit is cut
/// where the tail bound of g drops below cfg.cutoff_epsilon times its value
/// at x.
double weyl_integral(const SmoothFunction& g, double mu, double x, const QuadratureConfig& cfg);

/// d^nu f / dx^nu evaluated as the Weyl integral of order mu of f^(k).
double frac_derivative(const SmoothFunction& f, const FractionalOrder& order, double x,
                       const QuadratureConfig& cfg);

inline double frac_derivative(const SmoothFunction& f, double nu, double x, const QuadratureConfig& cfg) {
    return frac_derivative(f, FractionalOrder::of(nu), x, cfg);
}

/// f^(k) as a function in its own right, keeping f's tail bound. Past the
/// analytic order it falls back to numeric_derivative when
/// cfg.numeric_derivative_fallback is set, and throws UnsupportedOrderError
/// otherwise.
SmoothFunction derivative_view(const SmoothFunction& f, int k, const QuadratureConfig& cfg);

/// Throws UnsupportedOrderError unless f can supply derivatives up to `k`
/// under the configured fallback policy.
void require_derivatives(const SmoothFunction& f, int k, const QuadratureConfig& cfg);

}  // namespace fraclamb
