#pragma once

// Independent reference computations used only by the tests. Each one takes
// a different route from the library code it checks.

#include "bandvar/linalg.hpp"
#include "bandvar/model.hpp"
#include "bandvar/rng.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <vector>

namespace oracle {

using bandvar::DenseMatrix;
using bandvar::Vector;

inline DenseMatrix random_matrix(Eigen::Index rows, Eigen::Index cols, bandvar::Rng& rng) {
    DenseMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.uniform(-1.0, 1.0);
    return m;
}

inline DenseMatrix random_banded(Eigen::Index p, Eigen::Index k, bandvar::Rng& rng) {
    DenseMatrix m = DenseMatrix::Zero(p, p);
    for (Eigen::Index i = 0; i < p; ++i)
        for (Eigen::Index j = 0; j < p; ++j)
            if (std::abs(i - j) <= k) m(i, j) = rng.uniform(-1.0, 1.0);
    return m;
}

/// Largest singular value from a full SVD.
inline double svd_norm(const DenseMatrix& m) {
    if (m.size() == 0) return 0.0;
    return Eigen::JacobiSVD<DenseMatrix>(m).singularValues()(0);
}

/// Normal equations solved through an explicit inverse.
inline Vector normal_equations(const DenseMatrix& x, const Vector& y) {
    const DenseMatrix g = x.transpose() * x;
    return g.inverse() * (x.transpose() * y);
}

/// Discrete Lyapunov equation S = A S A^T + Q solved through the Kronecker system
/// (I - A kron A) vec(S) = vec(Q).
inline DenseMatrix lyapunov_kron(const DenseMatrix& a, const DenseMatrix& q) {
    const Eigen::Index p = a.rows();
    DenseMatrix k = DenseMatrix::Identity(p * p, p * p);
    for (Eigen::Index i = 0; i < p; ++i)
        for (Eigen::Index j = 0; j < p; ++j) k.block(i * p, j * p, p, p) -= a(i, j) * a;
    const Vector vq = Eigen::Map<const Vector>(q.data(), p * p);
    const Vector vs = k.fullPivLu().solve(vq);
    return Eigen::Map<const DenseMatrix>(vs.data(), p, p);
}

/// Sample lag-j autocovariance by explicit double loops.
inline DenseMatrix autocov_loops(const DenseMatrix& y, Eigen::Index lag) {
    const Eigen::Index p = y.rows();
    const Eigen::Index n = y.cols();
    std::vector<double> mean(static_cast<std::size_t>(p), 0.0);
    for (Eigen::Index a = 0; a < p; ++a) {
        for (Eigen::Index t = 0; t < n; ++t) mean[static_cast<std::size_t>(a)] += y(a, t);
        mean[static_cast<std::size_t>(a)] /= static_cast<double>(n);
    }
    DenseMatrix s = DenseMatrix::Zero(p, p);
    for (Eigen::Index a = 0; a < p; ++a)
        for (Eigen::Index b = 0; b < p; ++b) {
            double acc = 0.0;
            for (Eigen::Index t = 0; t + lag < n; ++t)
                acc += (y(a, t) - mean[static_cast<std::size_t>(a)]) * (y(b, t + lag) - mean[static_cast<std::size_t>(b)]);
            s(a, b) = acc / static_cast<double>(n);
        }
    return s;
}


/// Row i of a banded VAR(d) fit, solved as the full regression on every lagged
/// series with the out-of-band coefficients pinned to zero. Coefficients come
/// back lag-major, series ascending.
inline Vector constrained_row_fit(const DenseMatrix& y, Eigen::Index i, Eigen::Index k, Eigen::Index d) {
    const Eigen::Index p = y.rows();
    const Eigen::Index n = y.cols();
    DenseMatrix full(n - d, p * d);
    for (Eigen::Index t = d; t < n; ++t)
        for (Eigen::Index l = 1; l <= d; ++l)
            for (Eigen::Index j = 0; j < p; ++j) full(t - d, (l - 1) * p + j) = y(j, t - l);
    std::vector<Eigen::Index> support;
    for (Eigen::Index c = 0; c < p * d; ++c)
        if (std::abs(c % p - i) <= k) support.push_back(c);
    DenseMatrix x(n - d, static_cast<Eigen::Index>(support.size()));
    for (std::size_t s = 0; s < support.size(); ++s) x.col(static_cast<Eigen::Index>(s)) = full.col(support[s]);
    const Vector target = y.row(i).segment(d, n - d).transpose();
    return normal_equations(x, target);
}

}  // namespace oracle
