#include "fraclamb/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "fraclamb/errors.hpp"

namespace fraclamb {
namespace {

constexpr int kRuleSize = 32;

struct RuleTable {
    std::array<double, kRuleSize> nodes{};
    std::array<double, kRuleSize> weights{};
};

// Newton iteration on P_n from the Chebyshev-like initial guesses.
RuleTable build_rule() {
    RuleTable rule;
    const int n = kRuleSize;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

const RuleTable& rule_table() {
    static const RuleTable table = build_rule();
    return table;
}

struct PanelSum {
    double value = 0.0;
    double magnitude = 0.0;
};

PanelSum panel_sum(const std::function<double(double)>& g, double a, double b, int panels) {
    const auto& rule = rule_table();
    const double width = (b - a) / panels;
    PanelSum sum;
    for (int p = 0; p < panels; ++p) {
        const double left = a + p * width;
        const double mid = left + 0.5 * width;
        double acc = 0.0;
        double mag = 0.0;
        for (int i = 0; i < kRuleSize; ++i) {
            const double v = rule.weights[i] * g(mid + 0.5 * width * rule.nodes[i]);
            acc += v;
            mag += std::abs(v);
        }
        sum.value += 0.5 * width * acc;
        sum.magnitude += 0.5 * width * mag;
    }
    return sum;
}

}  // namespace

void QuadratureConfig::validate() const {
    if (!(tol > 0.0)) throw DomainError("QuadratureConfig: tol must be positive");
    if (mc_samples < 1000) throw DomainError("QuadratureConfig: mc_samples must be at least 1000");
    if (max_panels < 1 || (max_panels & (max_panels - 1)) != 0) {
        throw DomainError("QuadratureConfig: max_panels must be a power of two");
    }
    if (!(cutoff_epsilon > 0.0)) throw DomainError("QuadratureConfig: cutoff_epsilon must be positive");
    if (radial_upper && !(*radial_upper > 0.0)) {
        throw DomainError("QuadratureConfig: radial_upper must be positive");
    }
}

GaussLegendreRule gauss_legendre_32() {
    const auto& table = rule_table();
    return {table.nodes, table.weights};
}

QuadratureResult integrate_composite(const std::function<double(double)>& g, double a, double b,
                                     const QuadratureConfig& cfg) {
    if (!(b > a)) return {0.0, 0.0, 0};
    PanelSum previous = panel_sum(g, a, b, 1);
    double last_error = std::abs(previous.value);
    for (int panels = 2; panels <= cfg.max_panels; panels *= 2) {
        const PanelSum current = panel_sum(g, a, b, panels);
        const double diff = std::abs(current.value - previous.value);
        const double scale = std::max(std::abs(current.value), 1e-3 * current.magnitude);
        if (diff <= cfg.tol * scale) return {current.value, diff, panels};
        if (!std::isfinite(current.value)) break;
        previous = current;
        last_error = diff;
    }
    throw ConvergenceError("composite quadrature did not converge within " +
                               std::to_string(cfg.max_panels) + " panels (last error estimate " +
                               std::to_string(last_error) + ")",
                           previous.value, last_error);
}

double truncation_span(const SmoothFunction& u, double x, const QuadratureConfig& cfg,
                       double weight_growth, std::optional<double> explicit_lower) {
    if (!u.has_decay()) {
        if (!explicit_lower) {
            throw NoDecayError("'" + u.description() +
                               "' has no decay metadata and no explicit cutoff was configured");
        }
        return std::max(0.0, x - *explicit_lower);
    }
    const double scale = u.tail_bound(x);
    if (scale == 0.0) return 0.0;
    const double epsilon = cfg.cutoff_epsilon * scale;
    double lower = effective_lower_cutoff(u, epsilon, x);
    if (weight_growth > 0.0) {
        const double grown = std::pow(std::max(1.0, x - lower), weight_growth);
        lower = effective_lower_cutoff(u, epsilon / grown, lower);
    }
    return std::max(0.0, x - lower);
}

QuadratureResult integrate_power_kernel(const std::function<double(double)>& g, double x, double p,
                                        double q, double span, double scale,
                                        const QuadratureConfig& cfg) {
    if (!(span > 0.0)) return {0.0, 0.0, 0};
    const double upper = std::pow(span, 1.0 / p);
    auto integrand = [&](double t) {
        const double weight = (q == 0.0) ? 1.0 : std::pow(t, q);
        return weight * g(x - std::pow(t, p));
    };
    QuadratureResult r = integrate_composite(integrand, 0.0, upper, cfg);
    r.value *= scale;
    r.error *= std::abs(scale);
    return r;
}

}  // namespace fraclamb
