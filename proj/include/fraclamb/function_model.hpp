#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fraclamb {

/// An immutable real function of one variable with analytic derivatives up to
/// a declared order and, optionally, a bound on its left tail.
///
/// The tail bound T(L) dominates sup_{xi <= L} max_{k <= K+1} |f^(k)(xi)| and
/// tends to zero as L -> -inf. It is what lets integrals with lower limit -inf
/// be truncated. Copies share state, so passing by value is cheap.
class SmoothFunction {
public:
    using DerivativeFn = std::function<double(int, double)>;
    using TailBoundFn = std::function<double(double)>;

    SmoothFunction(std::string description, int derivative_order, DerivativeFn derivatives,
                   std::optional<TailBoundFn> tail_bound = std::nullopt);

    double operator()(double x) const { return evaluate(x); }
    double evaluate(double x) const;

    int derivative_order() const noexcept;

    /// k-th derivative; throws UnsupportedOrderError when k > derivative_order().
    double derivative(int k, double x) const;

    bool has_decay() const noexcept;

    /// Throws NoDecayError when the function carries no decay metadata.
    double tail_bound(double upper) const;

    const std::string& description() const noexcept;

private:
    struct State;
    std::shared_ptr<const State> state_;
};

/// Derivative order declared by every built-in test-family member.
inline constexpr int kFamilyDerivativeOrder = 8;

/// Built-in right-hand sides, all decaying with every derivative as x -> -inf.
struct TestFamilyMember {
    enum class Kind { exponential, gauss_tail, shifted_gaussian };

    Kind kind = Kind::exponential;
    double lambda = 1.0;  // exponential, gauss_tail
    double c = 0.0;       // gauss_tail, shifted_gaussian
    double sigma = 1.0;   // shifted_gaussian

    SmoothFunction to_function() const;

    /// Canonical selector string, e.g. "gauss_tail:lambda=1:c=0".
    std::string selector() const;

    bool operator==(const TestFamilyMember&) const = default;
};

/// x -> e^{lambda x}
SmoothFunction exponential(double lambda);
/// x -> e^{lambda x} / (1 + e^{lambda (x - c)})
SmoothFunction gauss_tail(double lambda, double c);
/// x -> exp(-(x - c)^2 / (2 sigma^2))
SmoothFunction shifted_gaussian(double sigma, double c);
/// The zero function, with every derivative and a zero tail bound.
SmoothFunction zero_function();

/// alpha f + beta g, with derivative order min(K_f, K_g).
SmoothFunction linear_combination(double alpha, const SmoothFunction& f, double beta,
                                  const SmoothFunction& g);

/// Wraps a pointwise evaluator as an order-0 function. The evaluator is
/// memoized (thread-safe, bounded) and the tail bound, if given, is attached
/// as decay metadata.
SmoothFunction lazy_function(std::string description, std::function<double(double)> evaluator,
                             std::optional<SmoothFunction::TailBoundFn> tail_bound);

struct DerivativeEstimate {
    double value = 0.0;
    double error = 0.0;
};

/// Central finite-difference estimate of f^(k)(x) with one Richardson step
/// (steps h and h/2). Differences f^(min(k-1, K)) with K the analytic order,
/// so k may exceed K by at most four. h <= 0 selects a default step.
DerivativeEstimate numeric_derivative(const SmoothFunction& f, int k, double x, double h = 0.0);

/// Returns L with tail_bound(L) <= epsilon, searching outward from `anchor`.
/// L lies within a relative 1e-10 of the largest such point.
double effective_lower_cutoff(const SmoothFunction& f, double epsilon, double anchor = 0.0);

/// Samples on a uniform grid; node i sits at x_start + i * x_step.
struct GridFunction {
    double x_start = 0.0;
    double x_step = 1.0;
    std::vector<double> values;

    double node(std::size_t i) const { return x_start + static_cast<double>(i) * x_step; }
    std::size_t size() const noexcept { return values.size(); }
};

GridFunction sample(const SmoothFunction& f, double a, double b, int count);

/// Same grid as sample() but with an arbitrary evaluator.
GridFunction sample(const std::function<double(double)>& f, double a, double b, int count);

}  // namespace fraclamb
