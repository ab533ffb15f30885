#include "fraclamb/forward_verifier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "fraclamb/errors.hpp"
#include "fraclamb/quadrature.hpp"
#include "fraclamb/special_functions.hpp"

namespace fraclamb {
namespace {

constexpr int kMaxMcDimension = 4;
constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::optional<double> lower_from_radius(double x, const std::optional<double>& radius) {
    if (!radius) return std::nullopt;
    return x - (*radius) * (*radius);
}

std::uint64_t integer_root(std::uint64_t value, int n) {
    auto ipow = [n](std::uint64_t b) {
        std::uint64_t r = 1;
        for (int i = 0; i < n; ++i) r *= b;
        return r;
    };
    auto k = static_cast<std::uint64_t>(std::floor(std::pow(static_cast<double>(value), 1.0 / n)));
    k = std::max<std::uint64_t>(k, 1);
    while (ipow(k + 1) <= value) ++k;
    while (k > 1 && ipow(k) > value) --k;
    return k;
}

// Uniform Monte Carlo over [-R, R]^n for an integrand of the point y.
template <typename Integrand>
McEstimate box_monte_carlo(const Integrand& integrand, int n, double radius, const QuadratureConfig& cfg,
                           std::uint64_t stream) {
    const double volume = std::pow(2.0 * radius, n);
    const std::uint64_t total = cfg.mc_samples;
    std::array<double, kMaxMcDimension> y{};
    const std::span<const double> point(y.data(), static_cast<std::size_t>(n));

    if (cfg.mc_scheme == McScheme::plain) {
        // Welford running mean and variance.
        long double mean = 0.0L;
        long double m2 = 0.0L;
        for (std::uint64_t i = 0; i < total; ++i) {
            for (int d = 0; d < n; ++d) {
                const double u = counter_uniform(cfg.mc_seed, stream, i * n + d);
                y[d] = -radius + 2.0 * radius * u;
            }
            const long double v = integrand(point);
            const long double delta = v - mean;
            mean += delta / static_cast<long double>(i + 1);
            m2 += delta * (v - mean);
        }
        const long double var = m2 / static_cast<long double>(total - 1);
        return {static_cast<double>(volume * mean),
                static_cast<double>(volume * std::sqrt(var / static_cast<long double>(total))), total};
    }

    // Stratified: k^n equal cells, per_cell >= 2 samples in each.
    const std::uint64_t per_axis = integer_root(std::max<std::uint64_t>(total / 2, 1), n);
    std::uint64_t cells = 1;
    for (int d = 0; d < n; ++d) cells *= per_axis;
    const std::uint64_t per_cell = std::max<std::uint64_t>(2, total / cells);
    const double cell_width = 2.0 * radius / static_cast<double>(per_axis);

    long double sum_means = 0.0L;
    long double sum_var_of_mean = 0.0L;
    std::array<std::uint64_t, kMaxMcDimension> digit{};
    for (std::uint64_t cell = 0; cell < cells; ++cell) {
        std::uint64_t rest = cell;
        for (int d = 0; d < n; ++d) {
            digit[d] = rest % per_axis;
            rest /= per_axis;
        }
        long double mean = 0.0L;
        long double m2 = 0.0L;
        for (std::uint64_t r = 0; r < per_cell; ++r) {
            const std::uint64_t draw = cell * per_cell + r;
            for (int d = 0; d < n; ++d) {
                const double u = counter_uniform(cfg.mc_seed, stream, draw * n + d);
                y[d] = -radius + (static_cast<double>(digit[d]) + u) * cell_width;
            }
            const long double v = integrand(point);
            const long double delta = v - mean;
            mean += delta / static_cast<long double>(r + 1);
            m2 += delta * (v - mean);
        }
        sum_means += mean;
        sum_var_of_mean += (m2 / static_cast<long double>(per_cell - 1)) / static_cast<long double>(per_cell);
    }
    const long double cell_volume = static_cast<long double>(volume) / static_cast<long double>(cells);
    return {static_cast<double>(cell_volume * sum_means),
            static_cast<double>(cell_volume * std::sqrt(sum_var_of_mean)), cells * per_cell};
}

void require_mc_dimension(int n) {
    if (n < 1) throw DomainError("Monte Carlo forward operator: n must be >= 1");
    if (n > kMaxMcDimension) {
        throw DimensionCapError("Monte Carlo forward operator supports n <= 4, got n = " + std::to_string(n));
    }
}

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    const std::uint64_t key = splitmix64_mix(seed + kGoldenGamma * (stream + 1));
    const std::uint64_t bits = splitmix64_mix(key + kGoldenGamma * (counter + 1));
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

double forward_radial(const SmoothFunction& u, int n, double x, const QuadratureConfig& cfg) {
    const double vol = sphere_volume(n).value;
    const double span = truncation_span(u, x, cfg, 0.5 * n, lower_from_radius(x, cfg.radial_upper));
    return integrate_power_kernel([&u](double xi) { return u(xi); }, x, 2.0, n - 1.0, span, vol, cfg).value;
}

double forward_power(const SmoothFunction& u, int m, double x, const QuadratureConfig& cfg) {
    if (m < 1) throw DomainError("forward_power: m must be >= 1");
    const double span = truncation_span(u, x, cfg, 0.0, lower_from_radius(x, cfg.radial_upper));
    return integrate_power_kernel([&u](double xi) { return u(xi); }, x, static_cast<double>(m), 0.0, span,
                                  1.0, cfg)
        .value;
}

McEstimate forward_montecarlo(const SmoothFunction& u, int n, double x, const QuadratureConfig& cfg,
                              std::uint64_t stream) {
    require_mc_dimension(n);
    cfg.validate();
    const double span = truncation_span(u, x, cfg, 0.5 * n, lower_from_radius(x, cfg.radial_upper));
    if (span == 0.0) return {0.0, 0.0, cfg.mc_samples};
    auto integrand = [&u, x](std::span<const double> y) {
        double r2 = 0.0;
        for (double v : y) r2 += v * v;
        return u(x - r2);
    };
    return box_monte_carlo(integrand, n, std::sqrt(span), cfg, stream);
}

McEstimate forward_quadform_mc(const SmoothFunction& u, const PosDefMatrix& A, double x,
                               const QuadratureConfig& cfg, std::uint64_t stream) {
    const int n = A.dimension();
    require_mc_dimension(n);
    cfg.validate();
    const double span = truncation_span(u, x, cfg, 0.5 * n, lower_from_radius(x, cfg.radial_upper));
    if (span == 0.0) return {0.0, 0.0, cfg.mc_samples};
    // y^T A y >= lambda_min |y|^2, so |y|^2 > span / lambda_min is already in the cut tail.
    const double radius = std::sqrt(span / A.min_eigenvalue_bound());
    auto integrand = [&u, &A, x](std::span<const double> y) { return u(x - A.quadratic_form(y)); };
    return box_monte_carlo(integrand, n, radius, cfg, stream);
}

double apply_forward(const ProblemSpec& spec, const SmoothFunction& u, double x, const QuadratureConfig& cfg,
                     std::uint64_t stream, double* std_error) {
    if (std_error) *std_error = 0.0;
    switch (spec.variant) {
        case Variant::classic: return forward_power(u, 2, x, cfg);
        case Variant::symmetric_ndim: return forward_radial(u, spec.n, x, cfg);
        case Variant::power: return forward_power(u, *spec.m, x, cfg);
        case Variant::quadform: {
            const McEstimate est = forward_quadform_mc(u, *spec.A, x, cfg, stream);
            if (std_error) *std_error = est.std_error;
            return est.estimate;
        }
    }
    throw DomainError("apply_forward: unknown variant");
}

bool ResidualReport::passes(double threshold) const {
    const double limit = monte_carlo ? std::max(threshold, 4.0 * max_rel_std_error) : threshold;
    return max_rel_residual < limit;
}

ResidualReport verify(const ProblemSpec& spec, const SmoothFunction& f, double a, double b, int probes,
                      const QuadratureConfig& cfg) {
    spec.validate();
    cfg.validate();
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
        throw DomainError("verify: window must be finite with a < b");
    }
    if (probes < 3) throw DomainError("verify: at least 3 probes are required");

    const SmoothFunction u = solve(spec, f, cfg);
    ResidualReport report;
    report.window_a = a;
    report.window_b = b;
    report.probe_count = probes;
    report.monte_carlo = spec.variant == Variant::quadform;
    report.rows.resize(static_cast<std::size_t>(probes));

    const double step = (b - a) / (probes - 1);
    double window_max = 0.0;
    for (int i = 0; i < probes; ++i) {
        ResidualRow& row = report.rows[static_cast<std::size_t>(i)];
        row.x = a + i * step;
        row.f = f(row.x);
        row.forward = apply_forward(spec, u, row.x, cfg, static_cast<std::uint64_t>(i), &row.std_error);
        row.residual = row.forward - row.f;
        window_max = std::max(window_max, std::abs(row.f));
    }
    for (const ResidualRow& row : report.rows) {
        const double denom = std::max(std::abs(row.f), 1e-300 * window_max);
        const double rel = denom > 0.0 ? std::abs(row.residual) / denom
                                       : (row.residual == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
        const double rel_se = denom > 0.0 ? row.std_error / denom : 0.0;
        report.max_abs_residual = std::max(report.max_abs_residual, std::abs(row.residual));
        report.max_rel_residual = std::max(report.max_rel_residual, rel);
        report.max_rel_std_error = std::max(report.max_rel_std_error, rel_se);
    }
    return report;
}

}  // namespace fraclamb
