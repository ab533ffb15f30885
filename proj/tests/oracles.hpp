#pragma once

// Reference computations for the test suites. Nothing here shares code with
// the library's quadrature: integrals use adaptive Simpson, singular kernels
// use singularity subtraction, and Gamma comes from std::tgamma.

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

using Fn = std::function<double(double)>;

inline double simpson_step(const Fn& f, double a, double b, double fa, double fm, double fb, double whole,
                           double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

/// Adaptive Simpson with Richardson correction, absolute tolerance `tol`.
inline double integrate(const Fn& f, double a, double b, double tol = 1e-13, int depth = 50) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, b, fa, fm, fb, whole, tol, depth);
}

/// (1/Gamma(mu)) int_{x - tail}^x g(xi) (x - xi)^{mu - 1} dxi by subtracting
/// g(x) on the unit interval next to the singular endpoint.
inline double weyl(const Fn& g, double mu, double x, double tail = 60.0, double tol = 1e-13) {
    const double gx = g(x);
    const double near = gx / mu + integrate(
                                      [&](double s) {
                                          if (s == 0.0) return 0.0;
                                          return (g(x - s) - gx) * std::pow(s, mu - 1.0);
                                      },
                                      0.0, 1.0, tol);
    // Unit pieces, so a narrow bump far from the sample points cannot be missed.
    double far = 0.0;
    for (double s0 = 1.0; s0 < tail; s0 += 1.0) {
        far += integrate([&](double s) { return g(x - s) * std::pow(s, mu - 1.0); }, s0, std::min(s0 + 1.0, tail), tol);
    }
    return (near + far) / std::tgamma(mu);
}

inline double sphere_volume(int n) { return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n); }

/// Vol(S^{n-1}) int_0^R r^{n-1} u(x - r^2) dr.
inline double radial(const Fn& u, int n, double x, double radius, double tol = 1e-12) {
    return sphere_volume(n) * integrate([&](double r) { return std::pow(r, n - 1) * u(x - r * r); }, 0.0, radius, tol);
}

/// Five-point central difference.
inline double five_point(const Fn& f, double x, double h) {
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

}  // namespace oracle
