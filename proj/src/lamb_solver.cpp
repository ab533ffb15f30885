#include "fraclamb/lamb_solver.hpp"

#include <cmath>
#include <numbers>

#include "fraclamb/errors.hpp"
#include "fraclamb/fractional_ops.hpp"
#include "fraclamb/special_functions.hpp"

namespace fraclamb {

std::string to_string(Variant v) {
    switch (v) {
        case Variant::classic: return "classic";
        case Variant::symmetric_ndim: return "symmetric_ndim";
        case Variant::power: return "power";
        case Variant::quadform: return "quadform";
    }
    return "unknown";
}

Variant variant_from_string(const std::string& name) {
    if (name == "classic") return Variant::classic;
    if (name == "symmetric_ndim") return Variant::symmetric_ndim;
    if (name == "power") return Variant::power;
    if (name == "quadform") return Variant::quadform;
    throw ParseError("unknown variant '" + name + "'");
}

ProblemSpec ProblemSpec::classic() { return {Variant::classic, 1, std::nullopt, std::nullopt}; }

ProblemSpec ProblemSpec::symmetric_ndim(int n) {
    ProblemSpec spec{Variant::symmetric_ndim, n, std::nullopt, std::nullopt};
    spec.validate();
    return spec;
}

ProblemSpec ProblemSpec::power(int m) {
    ProblemSpec spec{Variant::power, 1, m, std::nullopt};
    spec.validate();
    return spec;
}

ProblemSpec ProblemSpec::quadform(PosDefMatrix A) {
    const int n = A.dimension();
    return {Variant::quadform, n, std::nullopt, std::move(A)};
}

void ProblemSpec::validate() const {
    if (n < 1) throw DomainError("ProblemSpec: n must be >= 1");
    if (variant == Variant::power) {
        if (!m) throw DomainError("ProblemSpec: power variant requires m");
        if (*m < 1) throw DomainError("ProblemSpec: m must be >= 1");
    } else if (m) {
        throw DomainError("ProblemSpec: m is only meaningful for the power variant");
    }
    if (variant == Variant::quadform) {
        if (!A) throw DomainError("ProblemSpec: quadform variant requires a matrix A");
        if (A->dimension() != n) throw DomainError("ProblemSpec: n must equal the dimension of A");
    } else if (A) {
        throw DomainError("ProblemSpec: matrix A is only meaningful for the quadform variant");
    }
    if ((variant == Variant::classic || variant == Variant::power) && n != 1) {
        throw DomainError("ProblemSpec: half-line variants have n = 1");
    }
}

namespace {

std::optional<SmoothFunction::TailBoundFn> inherited_tail(const SmoothFunction& f, double scale) {
    if (!f.has_decay()) return std::nullopt;
    return [f, scale](double upper) { return std::abs(scale) * f.tail_bound(upper); };
}

// c * d^nu f, lazily.
SmoothFunction scaled_derivative(const std::string& name, const SmoothFunction& f, FractionalOrder order,
                                 double scale, const QuadratureConfig& cfg) {
    require_derivatives(f, order.k, cfg);
    return lazy_function(
        name, [f, order, scale, cfg](double x) { return scale * frac_derivative(f, order, x, cfg); },
        inherited_tail(f, scale));
}

}  // namespace

SmoothFunction solve_classic(const SmoothFunction& f, const QuadratureConfig& cfg) {
    const double scale = 2.0 / gamma(0.5);
    return scaled_derivative("classic(" + f.description() + ")", f, FractionalOrder::of(0.5), scale, cfg);
}

SmoothFunction solve_ndim(const SmoothFunction& f, int n, const QuadratureConfig& cfg) {
    if (n < 1) throw DomainError("solve_ndim: n must be >= 1");
    const double half_n = 0.5 * n;
    const double scale = std::pow(std::numbers::pi, -half_n);
    return scaled_derivative("ndim" + std::to_string(n) + "(" + f.description() + ")", f,
                             FractionalOrder::of(half_n), scale, cfg);
}

SmoothFunction solve_ndim_integral_route(const SmoothFunction& f, int n, const QuadratureConfig& cfg) {
    if (n < 2 || n % 2 != 0) throw DomainError("solve_ndim_integral_route: n must be even and >= 2");
    const double scale = std::pow(std::numbers::pi, -0.5 * n);
    return scaled_derivative("ndim" + std::to_string(n) + "_integral(" + f.description() + ")", f,
                             FractionalOrder::integral_route(n / 2), scale, cfg);
}

SmoothFunction solve_power(const SmoothFunction& f, int m, const QuadratureConfig& cfg) {
    if (m < 1) throw DomainError("solve_power: m must be >= 1");
    const double inv_m = 1.0 / m;
    const double scale = 1.0 / gamma(1.0 + inv_m);
    return scaled_derivative("power" + std::to_string(m) + "(" + f.description() + ")", f,
                             FractionalOrder::of(inv_m), scale, cfg);
}

SmoothFunction solve_quadform(const SmoothFunction& f, const PosDefMatrix& A, const QuadratureConfig& cfg) {
    const int n = A.dimension();
    const double scale = std::sqrt(A.determinant()) * std::pow(std::numbers::pi, -0.5 * n);
    return scaled_derivative("quadform" + std::to_string(n) + "(" + f.description() + ")", f,
                             FractionalOrder::of(0.5 * n), scale, cfg);
}

SmoothFunction solve(const ProblemSpec& spec, const SmoothFunction& f, const QuadratureConfig& cfg) {
    spec.validate();
    switch (spec.variant) {
        case Variant::classic: return solve_classic(f, cfg);
        case Variant::symmetric_ndim: return solve_ndim(f, spec.n, cfg);
        case Variant::power: return solve_power(f, *spec.m, cfg);
        case Variant::quadform: return solve_quadform(f, *spec.A, cfg);
    }
    throw DomainError("solve: unknown variant");
}

}  // namespace fraclamb
