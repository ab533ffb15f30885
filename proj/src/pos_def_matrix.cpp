#include "fraclamb/pos_def_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fraclamb/errors.hpp"

namespace fraclamb {

PosDefMatrix::PosDefMatrix(int n, std::vector<double> row_major) : n_(n), entries_(std::move(row_major)) {
    if (n_ < 1) throw DomainError("PosDefMatrix: dimension must be >= 1");
    const auto size = static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
    if (entries_.size() != size) {
        throw DomainError("PosDefMatrix: expected " + std::to_string(size) + " entries, got " +
                          std::to_string(entries_.size()));
    }
    double max_diag = 0.0;
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            if (!std::isfinite((*this)(i, j))) throw DomainError("PosDefMatrix: non-finite entry");
            if ((*this)(i, j) != (*this)(j, i)) {
                throw DomainError("PosDefMatrix: matrix is not symmetric at (" + std::to_string(i) +
                                  "," + std::to_string(j) + ")");
            }
        }
        max_diag = std::max(max_diag, std::abs((*this)(i, i)));
    }

    factor_.assign(size, 0.0);
    auto L = [this](int i, int j) -> double& { return factor_[static_cast<std::size_t>(i * n_ + j)]; };
    const double pivot_floor = 1e-12 * max_diag;
    for (int j = 0; j < n_; ++j) {
        double d = (*this)(j, j);
        for (int k = 0; k < j; ++k) d -= L(j, k) * L(j, k);
        if (!(d > 0.0) || std::sqrt(d) <= pivot_floor) {
            throw NotPositiveDefiniteError("PosDefMatrix: Cholesky pivot " + std::to_string(j) +
                                           " is not positive");
        }
        L(j, j) = std::sqrt(d);
        for (int i = j + 1; i < n_; ++i) {
            double s = (*this)(i, j);
            for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
            L(i, j) = s / L(j, j);
        }
    }
    for (int i = 0; i < n_; ++i) det_ *= L(i, i) * L(i, i);

    double inv_frob_sq = 0.0;
    // Build L^{-1} explicitly, then A^{-1} = L^{-T} L^{-1}.
    std::vector<double> linv(size, 0.0);
    for (int j = 0; j < n_; ++j) {
        for (int i = j; i < n_; ++i) {
            double s = (i == j) ? 1.0 : 0.0;
            for (int k = j; k < i; ++k) s -= L(i, k) * linv[static_cast<std::size_t>(k * n_ + j)];
            linv[static_cast<std::size_t>(i * n_ + j)] = s / L(i, i);
        }
    }
    for (int r = 0; r < n_; ++r) {
        for (int c = 0; c < n_; ++c) {
            double s = 0.0;
            for (int k = std::max(r, c); k < n_; ++k) {
                s += linv[static_cast<std::size_t>(k * n_ + r)] * linv[static_cast<std::size_t>(k * n_ + c)];
            }
            inv_frob_sq += s * s;
        }
    }
    min_eig_bound_ = 1.0 / std::sqrt(inv_frob_sq);
}

PosDefMatrix PosDefMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const int n = static_cast<int>(rows.size());
    std::vector<double> flat;
    flat.reserve(rows.size() * rows.size());
    for (const auto& row : rows) {
        if (row.size() != rows.size()) throw DomainError("PosDefMatrix: matrix must be square");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return PosDefMatrix(n, std::move(flat));
}

PosDefMatrix PosDefMatrix::identity(int n) {
    if (n < 1) throw DomainError("PosDefMatrix: dimension must be >= 1");
    std::vector<double> flat(static_cast<std::size_t>(n * n), 0.0);
    for (int i = 0; i < n; ++i) flat[static_cast<std::size_t>(i * n + i)] = 1.0;
    return PosDefMatrix(n, std::move(flat));
}

std::vector<std::vector<double>> PosDefMatrix::rows() const {
    std::vector<std::vector<double>> out(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
        out[static_cast<std::size_t>(i)].assign(entries_.begin() + i * n_, entries_.begin() + (i + 1) * n_);
    }
    return out;
}

double PosDefMatrix::min_pivot() const noexcept {
    double m = factor(0, 0);
    for (int i = 1; i < n_; ++i) m = std::min(m, factor(i, i));
    return m;
}

double PosDefMatrix::quadratic_form(std::span<const double> y) const {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) {
        double row = 0.0;
        for (int j = 0; j < n_; ++j) row += (*this)(i, j) * y[static_cast<std::size_t>(j)];
        s += y[static_cast<std::size_t>(i)] * row;
    }
    return s;
}

PosDefMatrix PosDefMatrix::scaled(double c) const {
    if (!(c > 0.0)) throw DomainError("PosDefMatrix::scaled: factor must be positive");
    std::vector<double> flat(entries_);
    for (double& v : flat) v *= c;
    return PosDefMatrix(n_, std::move(flat));
}

}  // namespace fraclamb
