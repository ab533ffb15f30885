#pragma once

namespace fraclamb {

/// Gamma function for p > 0.
///
/// Integer and half-integer arguments are evaluated by the exact recurrence
/// from Gamma(1) = 1 and Gamma(1/2) = sqrt(pi); everything else goes through a
/// 15-term Lanczos approximation (g = 607/128). Relative error is below 1e-13
/// on [0.5, 50]. Throws DomainError for p <= 0.
double gamma(double p);

/// Beta function B(p, q) = Gamma(p) Gamma(q) / Gamma(p + q).
double beta(double p, double q);

/// Surface measure of the unit sphere S^{n-1} embedded in R^n.
struct SphereVolume {
    int n = 0;
    double value = 0.0;
};

/// 2 pi^{n/2} / Gamma(n/2). Throws DomainError for n < 1.
SphereVolume sphere_volume(int n);

}  // namespace fraclamb
