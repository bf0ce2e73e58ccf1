#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace bandvar {

using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/**
 * Square p x p matrix stored by diagonals.
 *
 * Diagonal offsets run from -k (lowest sub-diagonal) to +k (highest
 * super-diagonal). Each diagonal is kept in a length-p slot indexed by row,
 * so entry (i, i + off) lives at slot (off + k) * p + i; slots that fall
 * outside the matrix are never touched. Reads outside the band return 0.
 */
class BandedMatrix {
public:
    BandedMatrix() = default;
    BandedMatrix(std::size_t p, std::size_t k);

    static BandedMatrix identity(std::size_t p);

    /// Keeps the entries of `m` with |i - j| <= k; everything else is dropped.
    static BandedMatrix from_dense(const DenseMatrix& m, std::size_t k);

    std::size_t size() const noexcept { return p_; }
    std::size_t bandwidth() const noexcept { return k_; }

    bool in_band(std::size_t i, std::size_t j) const noexcept {
        return (i > j ? i - j : j - i) <= k_;
    }

    double operator()(std::size_t i, std::size_t j) const noexcept {
        return in_band(i, j) ? data_[slot(i, j)] : 0.0;
    }

    /// Throws std::out_of_range when (i, j) lies outside the band.
    void set(std::size_t i, std::size_t j, double value);

    DenseMatrix to_dense() const;

    /// y = A x
    Vector multiply(const Vector& x) const;

    BandedMatrix scaled(double factor) const;

    friend bool operator==(const BandedMatrix&, const BandedMatrix&) = default;

private:
    std::size_t slot(std::size_t i, std::size_t j) const noexcept {
        return (j + k_ - i) * p_ + i;
    }

    std::size_t p_ = 0;
    std::size_t k_ = 0;
    std::vector<double> data_;
};

/// Smallest k such that every entry with |i - j| > k is exactly zero.
std::size_t observed_bandwidth(const DenseMatrix& m);

/// Product of two banded matrices; the result has bandwidth min(ka + kb, p - 1).
BandedMatrix band_product(const BandedMatrix& a, const BandedMatrix& b);

/// Least-squares solution of x * beta ~= y by Householder QR.
///
/// A column whose diagonal pivot in R falls below 1e-12 times the largest
/// pivot magnitude raises SingularDesignError naming that column.
struct LstsqResult {
    Vector beta;
    double rss = 0.0;
};

LstsqResult lstsq(const DenseMatrix& x, const Vector& y);

/// Relative pivot threshold below which a design column counts as dependent.
inline constexpr double kRankTolerance = 1e-12;

double spectral_norm(const DenseMatrix& m, double rel_tol = 1e-10, int max_iter = 10000);
double l1_norm(const DenseMatrix& m);
double linf_norm(const DenseMatrix& m);
double frobenius_norm(const DenseMatrix& m);

/// Largest eigenvalue modulus (Hessenberg reduction followed by shifted QR).
double spectral_radius(const DenseMatrix& m);

}  // namespace bandvar
