#pragma once

#include <cstdint>
#include <optional>

namespace fraclamb {

enum class McScheme {
    // One uniform sample per draw over the whole box.
    plain,
    // Uniform samples, two or more per cell of a regular partition of the box.
    stratified,
};

/// Shared numerical settings. Immutable once handed to an operation.
struct QuadratureConfig {
    double tol = 1e-9;
    int max_panels = 4096;
    std::uint64_t mc_samples = 1'000'000;
    std::uint64_t mc_seed = 0xC0FFEE;
    McScheme mc_scheme = McScheme::stratified;
    // Truncation threshold, relative to the tail bound at the evaluation point.
    double cutoff_epsilon = 1e-12;
    // Fallback radius for forward operators on functions without decay metadata.
    std::optional<double> radial_upper;
    // Fallback lower limit for fractional integrals of functions without decay metadata.
    std::optional<double> lower_cutoff;
    // Allow finite differences where analytic derivatives run out.
    bool numeric_derivative_fallback = false;

    /// Throws DomainError unless tol > 0, mc_samples >= 1000, max_panels is a power of two.
    void validate() const;
};

}  // namespace fraclamb
