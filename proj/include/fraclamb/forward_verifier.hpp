#pragma once

#include <cstdint>
#include <vector>

#include "fraclamb/config.hpp"
#include "fraclamb/function_model.hpp"
#include "fraclamb/lamb_solver.hpp"
#include "fraclamb/pos_def_matrix.hpp"

namespace fraclamb {

/// Vol(S^{n-1}) int_0^inf r^{n-1} u(x - r^2) dr, integrated in r directly.
double forward_radial(const SmoothFunction& u, int n, double x, const QuadratureConfig& cfg);

/// int_0^inf u(x - y^m) dy, integrated in y directly.
double forward_power(const SmoothFunction& u, int m, double x, const QuadratureConfig& cfg);

struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
};

/// Cartesian Monte Carlo estimate of int_{R^n} u(x - |y|^2) dy over the box
/// [-R, R]^n, n <= 4. R is the radius past which the tail bound of u drops
/// below cfg.cutoff_epsilon of its value at x. Sampling is uniform, either
/// plain or stratified (cfg.mc_scheme), and driven by a SplitMix64 counter
/// stream keyed on (cfg.mc_seed, stream), so a given seed and stream always
/// reproduce the same estimate bit for bit.
McEstimate forward_montecarlo(const SmoothFunction& u, int n, double x, const QuadratureConfig& cfg,
                              std::uint64_t stream = 0);

/// As forward_montecarlo with integrand u(x - y^T A y); the box radius is
/// divided by sqrt of a lower bound on the smallest eigenvalue of A.
McEstimate forward_quadform_mc(const SmoothFunction& u, const PosDefMatrix& A, double x,
                               const QuadratureConfig& cfg, std::uint64_t stream = 0);

/// Uniform double in [0, 1) from the counter-th output of the SplitMix64
/// sequence keyed on (seed, stream). Exposed for tests.
double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);

struct ResidualRow {
    double x = 0.0;
    double f = 0.0;
    double forward = 0.0;
    double residual = 0.0;
    double std_error = 0.0;  // zero for deterministic operators
};

struct ResidualReport {
    double window_a = 0.0;
    double window_b = 0.0;
    int probe_count = 0;
    double max_abs_residual = 0.0;
    double max_rel_residual = 0.0;
    // Largest std_error / |f| over the probes; zero for deterministic operators.
    double max_rel_std_error = 0.0;
    bool monte_carlo = false;
    std::vector<ResidualRow> rows;

    /// max_rel_residual < threshold, widened to 4 * max_rel_std_error for
    /// Monte Carlo operators.
    bool passes(double threshold) const;
};

/// Solves `spec` for f, applies the matching forward operator at `probes`
/// equispaced points of [a, b] and tabulates forward(u)(x) - f(x). Monte
/// Carlo probes use stream = probe index.
ResidualReport verify(const ProblemSpec& spec, const SmoothFunction& f, double a, double b, int probes,
                      const QuadratureConfig& cfg);

/// Applies the forward operator of `spec` to u at x. Monte Carlo variants
/// return the estimate and set *std_error when non-null.
double apply_forward(const ProblemSpec& spec, const SmoothFunction& u, double x, const QuadratureConfig& cfg,
                     std::uint64_t stream = 0, double* std_error = nullptr);

}  // namespace fraclamb
