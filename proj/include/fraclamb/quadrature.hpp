#pragma once

#include <functional>
#include <span>

#include "fraclamb/config.hpp"
#include "fraclamb/function_model.hpp"

namespace fraclamb {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
    std::span<const double> nodes;
    std::span<const double> weights;
};

/// The 32-point rule used by every composite integral in the library.
GaussLegendreRule gauss_legendre_32();

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;  // |I(2P) - I(P)| at acceptance
    int panels = 0;
};

/// Composite Gauss-Legendre on [a, b], doubling the panel count until
/// successive estimates differ by at most tol * max(|I|, 1e-3 * integral of |g|).
/// Throws ConvergenceError past cfg.max_panels.
QuadratureResult integrate_composite(const std::function<double(double)>& g, double a, double b,
                                     const QuadratureConfig& cfg);

/// Distance x - L below which the left tail of u can be dropped when
/// integrating against a weight that grows like (x - xi)^weight_growth.
/// Uses decay metadata when present, else `explicit_lower` (an absolute
/// lower limit). Returns 0 when u vanishes identically on (-inf, x].
double truncation_span(const SmoothFunction& u, double x, const QuadratureConfig& cfg,
                       double weight_growth, std::optional<double> explicit_lower);

/// scale * int_0^{span^{1/p}} t^q g(x - t^p) dt.
QuadratureResult integrate_power_kernel(const std::function<double(double)>& g, double x, double p,
                                        double q, double span, double scale,
                                        const QuadratureConfig& cfg);

}  // namespace fraclamb
