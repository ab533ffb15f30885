#pragma once

#include <span>
#include <vector>

namespace fraclamb {

/// Symmetric positive-definite matrix with its Cholesky factor and determinant
/// computed once at construction.
class PosDefMatrix {
public:
    /// Row-major n x n entries. Throws DomainError on shape or symmetry
    /// violations and NotPositiveDefiniteError when a Cholesky pivot falls
    /// below 1e-12 times the largest diagonal entry.
    PosDefMatrix(int n, std::vector<double> row_major);

    /// Nested rows; every row must have the same length as the outer vector.
    static PosDefMatrix from_rows(const std::vector<std::vector<double>>& rows);
    static PosDefMatrix identity(int n);

    int dimension() const noexcept { return n_; }
    double operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i * n_ + j)]; }
    std::span<const double> entries() const noexcept { return entries_; }
    std::vector<std::vector<double>> rows() const;

    double determinant() const noexcept { return det_; }

    /// Lower-triangular L with L L^T = A, row-major.
    double factor(int i, int j) const { return factor_[static_cast<std::size_t>(i * n_ + j)]; }
    double min_pivot() const noexcept;

    /// Lower bound on the smallest eigenvalue: 1 / ||A^{-1}||_F.
    double min_eigenvalue_bound() const noexcept { return min_eig_bound_; }

    /// y^T A y, computed from the stored entries.
    double quadratic_form(std::span<const double> y) const;

    /// c A for c > 0.
    PosDefMatrix scaled(double c) const;

private:
    int n_;
    std::vector<double> entries_;
    std::vector<double> factor_;
    double det_ = 1.0;
    double min_eig_bound_ = 0.0;
};

}  // namespace fraclamb
