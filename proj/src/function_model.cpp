#include "fraclamb/function_model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "fraclamb/errors.hpp"

namespace fraclamb {

struct SmoothFunction::State {
    std::string description;
    int derivative_order = 0;
    DerivativeFn derivatives;
    std::optional<TailBoundFn> tail_bound;
};

SmoothFunction::SmoothFunction(std::string description, int derivative_order,
                               DerivativeFn derivatives, std::optional<TailBoundFn> tail_bound) {
    if (derivative_order < 0) {
        throw DomainError("SmoothFunction: negative derivative order");
    }
    auto state = std::make_shared<State>();
    state->description = std::move(description);
    state->derivative_order = derivative_order;
    state->derivatives = std::move(derivatives);
    state->tail_bound = std::move(tail_bound);
    state_ = std::move(state);
}

double SmoothFunction::evaluate(double x) const { return state_->derivatives(0, x); }

int SmoothFunction::derivative_order() const noexcept { return state_->derivative_order; }

double SmoothFunction::derivative(int k, double x) const {
    if (k < 0 || k > state_->derivative_order) {
        throw UnsupportedOrderError("derivative of order " + std::to_string(k) + " requested from '" +
                                    state_->description + "', which provides up to order " +
                                    std::to_string(state_->derivative_order));
    }
    return state_->derivatives(k, x);
}

bool SmoothFunction::has_decay() const noexcept { return state_->tail_bound.has_value(); }

double SmoothFunction::tail_bound(double upper) const {
    if (!state_->tail_bound) {
        throw NoDecayError("'" + state_->description + "' carries no decay metadata");
    }
    return (*state_->tail_bound)(upper);
}

const std::string& SmoothFunction::description() const noexcept { return state_->description; }

namespace {

constexpr int kTableSize = kFamilyDerivativeOrder + 2;

using Poly = std::vector<double>;

double abs_sum(const Poly& p) {
    double s = 0.0;
    for (double c : p) s += std::abs(c);
    return s;
}

double horner(const Poly& p, double x) {
    double acc = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

// Probabilists' Hermite polynomials He_0..He_{K+1}: He_{k+1} = z He_k - k He_{k-1}.
const std::array<Poly, kTableSize>& hermite_table() {
    static const auto table = [] {
        std::array<Poly, kTableSize> t;
        t[0] = {1.0};
        t[1] = {0.0, 1.0};
        for (int k = 1; k + 1 < kTableSize; ++k) {
            Poly next(k + 2, 0.0);
            for (int j = 0; j <= k; ++j) next[j + 1] += t[k][j];
            for (int j = 0; j < k; ++j) next[j] -= k * t[k - 1][j];
            t[k + 1] = std::move(next);
        }
        return t;
    }();
    return table;
}

// Derivatives of the logistic function s = 1/(1+e^{-t}) as polynomials in s:
// P_0 = s, P_{k+1}(s) = P_k'(s) s (1 - s).
const std::array<Poly, kTableSize>& logistic_table() {
    static const auto table = [] {
        std::array<Poly, kTableSize> t;
        t[0] = {0.0, 1.0};
        for (int k = 0; k + 1 < kTableSize; ++k) {
            const Poly& p = t[k];
            Poly dp(p.size() > 1 ? p.size() - 1 : 1, 0.0);
            for (std::size_t j = 1; j < p.size(); ++j) dp[j - 1] = static_cast<double>(j) * p[j];
            Poly next(dp.size() + 2, 0.0);
            for (std::size_t j = 0; j < dp.size(); ++j) {
                next[j + 1] += dp[j];
                next[j + 2] -= dp[j];
            }
            t[k + 1] = std::move(next);
        }
        return t;
    }();
    return table;
}

// Q_k = P_k / s; every P_k vanishes at s = 0.
const std::array<Poly, kTableSize>& logistic_quotient_table() {
    static const auto table = [] {
        std::array<Poly, kTableSize> t;
        for (int k = 0; k < kTableSize; ++k) {
            const Poly& p = logistic_table()[k];
            t[k] = Poly(p.begin() + 1, p.end());
        }
        return t;
    }();
    return table;
}

std::string format_param(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(what) + " must be positive and finite");
    }
}

}  // namespace

SmoothFunction exponential(double lambda) {
    require_positive(lambda, "exponential: lambda");
    auto derivs = [lambda](int k, double x) { return std::pow(lambda, k) * std::exp(lambda * x); };
    auto tail = [lambda](double upper) {
        return std::max(1.0, std::pow(lambda, kFamilyDerivativeOrder + 1)) * std::exp(lambda * upper);
    };
    return SmoothFunction("exp:lambda=" + format_param(lambda), kFamilyDerivativeOrder, derivs, tail);
}

SmoothFunction gauss_tail(double lambda, double c) {
    require_positive(lambda, "gauss_tail: lambda");
    // f = e^{lambda c} s(t), t = lambda (x - c), s the logistic function.
    auto derivs = [lambda, c](int k, double x) {
        const auto& table = logistic_table();
        const double t = lambda * (x - c);
        const double scale = std::pow(lambda, k);
        if (t <= 0.0) {
            const double et = std::exp(t);
            const double s = et / (1.0 + et);
            // P_k(s) = s Q_k(s) and e^{lambda c} s = e^{lambda x} / (1 + e^t).
            return scale * (std::exp(lambda * x) / (1.0 + et)) * horner(logistic_quotient_table()[k], s);
        }
        const double emt = std::exp(-t);
        if (k == 0) return std::exp(lambda * c) / (1.0 + emt);
        // s(t) = 1 - s(-t), so s^(k)(t) = (-1)^{k+1} s^(k)(-t) for k >= 1.
        const double s_reflected = emt / (1.0 + emt);
        const double sign = (k % 2 == 1) ? 1.0 : -1.0;
        return scale * std::exp(lambda * c) * sign * horner(table[k], s_reflected);
    };
    double coeff = 0.0;
    for (int k = 0; k <= kFamilyDerivativeOrder + 1; ++k) {
        coeff = std::max(coeff, std::pow(lambda, k) * abs_sum(logistic_table()[k]));
    }
    auto tail = [lambda, c, coeff](double upper) { return coeff * std::exp(lambda * std::min(upper, c)); };
    return SmoothFunction("gauss_tail:lambda=" + format_param(lambda) + ":c=" + format_param(c),
                          kFamilyDerivativeOrder, derivs, tail);
}

SmoothFunction shifted_gaussian(double sigma, double c) {
    require_positive(sigma, "shifted_gaussian: sigma");
    auto derivs = [sigma, c](int k, double x) {
        const double z = (x - c) / sigma;
        double he_prev = 1.0;
        double he = z;
        if (k == 0) {
            he = 1.0;
        } else {
            for (int j = 1; j < k; ++j) {
                const double next = z * he - j * he_prev;
                he_prev = he;
                he = next;
            }
        }
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        return sign * std::pow(sigma, -k) * he * std::exp(-0.5 * z * z);
    };
    constexpr int top = kFamilyDerivativeOrder + 1;
    std::array<double, top + 1> coeff{};
    std::array<double, top + 1> peak{};
    for (int k = 0; k <= top; ++k) {
        coeff[k] = std::pow(sigma, -k) * abs_sum(hermite_table()[k]);
        // max over z of max(1,|z|)^k e^{-z^2/2}
        peak[k] = std::max(1.0, std::pow(static_cast<double>(k), 0.5 * k) * std::exp(-0.5 * k));
    }
    auto tail = [sigma, c, coeff, peak](double upper) {
        const double z = (upper - c) / sigma;
        // |He_k(z)| <= B_k max(1,|z|)^k, and |z|^k e^{-z^2/2} decreases for |z| >= sqrt(k).
        const bool far = z <= -std::sqrt(static_cast<double>(top));
        double bound = 0.0;
        for (int k = 0; k <= top; ++k) {
            const double shape = far ? std::pow(-z, k) * std::exp(-0.5 * z * z) : peak[k];
            bound = std::max(bound, coeff[k] * shape);
        }
        return bound;
    };
    return SmoothFunction("shifted_gaussian:sigma=" + format_param(sigma) + ":c=" + format_param(c),
                          kFamilyDerivativeOrder, derivs, tail);
}

SmoothFunction zero_function() {
    return SmoothFunction(
        "zero", std::numeric_limits<int>::max() - 1, [](int, double) { return 0.0; },
        [](double) { return 0.0; });
}

SmoothFunction linear_combination(double alpha, const SmoothFunction& f, double beta,
                                  const SmoothFunction& g) {
    const int order = std::min(f.derivative_order(), g.derivative_order());
    std::optional<SmoothFunction::TailBoundFn> tail;
    if (f.has_decay() && g.has_decay()) {
        tail = [alpha, beta, f, g](double upper) {
            return std::abs(alpha) * f.tail_bound(upper) + std::abs(beta) * g.tail_bound(upper);
        };
    }
    return SmoothFunction(
        format_param(alpha) + "*(" + f.description() + ")+" + format_param(beta) + "*(" +
            g.description() + ")",
        order,
        [alpha, beta, f, g](int k, double x) {
            return alpha * f.derivative(k, x) + beta * g.derivative(k, x);
        },
        std::move(tail));
}

namespace {

class Memo {
public:
    explicit Memo(std::function<double(double)> fn) : fn_(std::move(fn)) {}

    double operator()(double x) {
        {
            std::lock_guard lock(mutex_);
            if (auto it = cache_.find(x); it != cache_.end()) return it->second;
        }
        const double value = fn_(x);
        if (!std::isnan(x)) {
            std::lock_guard lock(mutex_);
            if (cache_.size() >= kCapacity) cache_.clear();
            cache_.emplace(x, value);
        }
        return value;
    }

private:
    static constexpr std::size_t kCapacity = std::size_t{1} << 18;
    std::function<double(double)> fn_;
    std::mutex mutex_;
    std::unordered_map<double, double> cache_;
};

}  // namespace

SmoothFunction lazy_function(std::string description, std::function<double(double)> evaluator,
                             std::optional<SmoothFunction::TailBoundFn> tail_bound) {
    auto memo = std::make_shared<Memo>(std::move(evaluator));
    return SmoothFunction(
        std::move(description), 0, [memo](int, double x) { return (*memo)(x); },
        std::move(tail_bound));
}

namespace {

double central_difference(const SmoothFunction& f, int base, int order, double x, double h) {
    // sum_i (-1)^i C(order,i) g(x + (order/2 - i) h) / h^order
    double acc = 0.0;
    double binom = 1.0;
    for (int i = 0; i <= order; ++i) {
        const double offset = (0.5 * order - i) * h;
        const double term = binom * f.derivative(base, x + offset);
        acc += (i % 2 == 0) ? term : -term;
        binom = binom * (order - i) / (i + 1);
    }
    return acc / std::pow(h, order);
}

}  // namespace

DerivativeEstimate numeric_derivative(const SmoothFunction& f, int k, double x, double h) {
    if (k < 0) throw DomainError("numeric_derivative: negative order");
    if (k == 0) return {f.derivative(0, x), 0.0};
    // Difference the highest analytic derivative available: every numerical
    // order costs roughly a factor eps^{-1/(order+4)} in accuracy.
    const int base = std::min(k - 1, f.derivative_order());
    if (k - base > 4) {
        throw UnsupportedOrderError("numeric_derivative: order " + std::to_string(k) +
                                    " exceeds analytic order + 4 for '" + f.description() + "'");
    }
    const int order = k - base;
    if (!(h > 0.0)) {
        // Balances O(h^4) truncation (after Richardson) against eps / h^order rounding.
        h = 2.0 * std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (order + 4));
    }
    const double coarse = central_difference(f, base, order, x, h);
    const double fine = central_difference(f, base, order, x, 0.5 * h);
    const double extrapolated = (4.0 * fine - coarse) / 3.0;
    return {extrapolated, std::abs(extrapolated - fine)};
}

double effective_lower_cutoff(const SmoothFunction& f, double epsilon, double anchor) {
    if (!(epsilon > 0.0)) throw DomainError("effective_lower_cutoff: epsilon must be positive");
    if (!f.has_decay()) {
        throw NoDecayError("'" + f.description() + "' has no decay metadata; supply an explicit cutoff");
    }
    double lo = anchor;  // tail_bound(lo) <= epsilon
    double hi = anchor;  // tail_bound(hi) > epsilon
    if (f.tail_bound(anchor) <= epsilon) {
        bool bracketed = false;
        for (double step = 1.0; step <= 1e6; step *= 2.0) {
            hi = anchor + step;
            if (f.tail_bound(hi) > epsilon) {
                bracketed = true;
                break;
            }
            lo = hi;
        }
        if (!bracketed) return lo;
    } else {
        bool bracketed = false;
        for (double step = 1.0; step <= 1e8; step *= 2.0) {
            lo = anchor - step;
            if (f.tail_bound(lo) <= epsilon) {
                bracketed = true;
                break;
            }
            hi = lo;
        }
        if (!bracketed) {
            throw NoDecayError("tail bound of '" + f.description() + "' never falls below " +
                               std::to_string(epsilon));
        }
    }
    for (int iter = 0; iter < 200 && hi - lo > 1e-10 * (1.0 + std::abs(lo)); ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (f.tail_bound(mid) <= epsilon) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

GridFunction sample(const std::function<double(double)>& f, double a, double b, int count) {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
        throw DomainError("sample: window must satisfy a < b with finite ends");
    }
    if (count < 2) throw DomainError("sample: count must be at least 2");
    GridFunction grid;
    grid.x_start = a;
    grid.x_step = (b - a) / static_cast<double>(count - 1);
    grid.values.resize(static_cast<std::size_t>(count));
    for (std::size_t i = 0; i < grid.values.size(); ++i) grid.values[i] = f(grid.node(i));
    return grid;
}

GridFunction sample(const SmoothFunction& f, double a, double b, int count) {
    return sample([&f](double x) { return f(x); }, a, b, count);
}

SmoothFunction TestFamilyMember::to_function() const {
    switch (kind) {
        case Kind::exponential: return exponential(lambda);
        case Kind::gauss_tail: return gauss_tail(lambda, c);
        case Kind::shifted_gaussian: return shifted_gaussian(sigma, c);
    }
    throw DomainError("unknown test family kind");
}

std::string TestFamilyMember::selector() const {
    switch (kind) {
        case Kind::exponential: return "exp:lambda=" + format_param(lambda);
        case Kind::gauss_tail: return "gauss_tail:lambda=" + format_param(lambda) + ":c=" + format_param(c);
        case Kind::shifted_gaussian:
            return "shifted_gaussian:sigma=" + format_param(sigma) + ":c=" + format_param(c);
    }
    return {};
}

}  // namespace fraclamb
