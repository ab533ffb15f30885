#pragma once

#include <optional>
#include <string>

#include "fraclamb/config.hpp"
#include "fraclamb/function_model.hpp"
#include "fraclamb/pos_def_matrix.hpp"

namespace fraclamb {

enum class Variant {
    classic,         // int_0^inf u(x - y^2) dy = f(x)
    symmetric_ndim,  // int_{R^n} u(x - |y|^2) dy = f(x)
    power,           // int_0^inf u(x - y^m) dy = f(x)
    quadform,        // int_{R^n} u(x - y^T A y) dy = f(x)
};

std::string to_string(Variant v);
/// Throws ParseError for unknown names.
Variant variant_from_string(const std::string& name);

/// Which equation to solve. `m` is present only for the power variant and
/// `A` only for quadform, in which case n equals A's dimension.
struct ProblemSpec {
    Variant variant = Variant::classic;
    int n = 1;
    std::optional<int> m;
    std::optional<PosDefMatrix> A;

    static ProblemSpec classic();
    static ProblemSpec symmetric_ndim(int n);
    static ProblemSpec power(int m);
    static ProblemSpec quadform(PosDefMatrix A);

    /// Throws DomainError when variant-specific fields are missing, extra, or out of range.
    void validate() const;
};

// Every solver returns a lazily evaluated, memoized function of order 0 that
// inherits the decay metadata of f. Derivative requirements are checked
// eagerly and raise UnsupportedOrderError.

/// u = (2 / sqrt(pi)) d^{1/2} f, equivalently (2/pi) int_{-inf}^x f'(xi) / sqrt(x - xi) dxi.
SmoothFunction solve_classic(const SmoothFunction& f, const QuadratureConfig& cfg);

/// u = pi^{-n/2} d^{n/2} f. For n = 2m this is pi^{-m} f^(m) with no
/// quadrature; for n = 2m + 1 it is pi^{-(m+1)} int_{-inf}^x f^(m+1)(xi) / sqrt(x - xi) dxi.
SmoothFunction solve_ndim(const SmoothFunction& f, int n, const QuadratureConfig& cfg);

/// Even n only: pi^{-n/2} times the plain integral of f^(n/2 + 1), i.e. the
/// same operator reached through the integral route. Cross-check for solve_ndim.
SmoothFunction solve_ndim_integral_route(const SmoothFunction& f, int n, const QuadratureConfig& cfg);

/// u = d^{1/m} f / Gamma(1 + 1/m).
///
/// Not a classical result: obtained by applying the shift operator e^{-y^m d}
/// and int_0^inf e^{-a y^m} dy = Gamma(1 + 1/m) a^{-1/m}. Certified only by
/// the forward_power residual in the test suites.
SmoothFunction solve_power(const SmoothFunction& f, int m, const QuadratureConfig& cfg);

/// u = det(A)^{1/2} pi^{-n/2} d^{n/2} f, from z = A^{1/2} y. Derived rather
/// than classical; certified only by forward_quadform_mc residuals.
SmoothFunction solve_quadform(const SmoothFunction& f, const PosDefMatrix& A, const QuadratureConfig& cfg);

SmoothFunction solve(const ProblemSpec& spec, const SmoothFunction& f, const QuadratureConfig& cfg);

}  // namespace fraclamb
