#include "bandvar/linalg.hpp"

#include "bandvar/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bandvar {

BandedMatrix::BandedMatrix(std::size_t p, std::size_t k) : p_(p), k_(k) {
    if (p == 0) throw std::invalid_argument("BandedMatrix: dimension must be positive");
    if (k >= p) throw std::invalid_argument("BandedMatrix: bandwidth must be below dimension");
    data_.assign((2 * k + 1) * p, 0.0);
}

BandedMatrix BandedMatrix::identity(std::size_t p) {
    BandedMatrix m(p, 0);
    for (std::size_t i = 0; i < p; ++i) m.set(i, i, 1.0);
    return m;
}

BandedMatrix BandedMatrix::from_dense(const DenseMatrix& m, std::size_t k) {
    if (m.rows() != m.cols()) throw std::invalid_argument("from_dense: matrix must be square");
    const auto p = static_cast<std::size_t>(m.rows());
    BandedMatrix out(p, k);
    for (std::size_t i = 0; i < p; ++i) {
        const std::size_t lo = i >= k ? i - k : 0;
        const std::size_t hi = std::min(p - 1, i + k);
        for (std::size_t j = lo; j <= hi; ++j) out.data_[out.slot(i, j)] = m(i, j);
    }
    return out;
}

void BandedMatrix::set(std::size_t i, std::size_t j, double value) {
    if (i >= p_ || j >= p_ || !in_band(i, j)) {
        std::ostringstream os;
        os << "BandedMatrix::set: (" << i << ", " << j << ") outside band k=" << k_;
        throw std::out_of_range(os.str());
    }
    data_[slot(i, j)] = value;
}

DenseMatrix BandedMatrix::to_dense() const {
    DenseMatrix d = DenseMatrix::Zero(p_, p_);
    for (std::size_t i = 0; i < p_; ++i) {
        const std::size_t lo = i >= k_ ? i - k_ : 0;
        const std::size_t hi = std::min(p_ - 1, i + k_);
        for (std::size_t j = lo; j <= hi; ++j) d(i, j) = data_[slot(i, j)];
    }
    return d;
}

Vector BandedMatrix::multiply(const Vector& x) const {
    if (static_cast<std::size_t>(x.size()) != p_)
        throw std::invalid_argument("BandedMatrix::multiply: dimension mismatch");
    Vector y(p_);
    for (std::size_t i = 0; i < p_; ++i) {
        const std::size_t lo = i >= k_ ? i - k_ : 0;
        const std::size_t hi = std::min(p_ - 1, i + k_);
        double acc = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) acc += data_[slot(i, j)] * x[j];
        y[i] = acc;
    }
    return y;
}

BandedMatrix BandedMatrix::scaled(double factor) const {
    BandedMatrix out = *this;
    for (auto& v : out.data_) v *= factor;
    return out;
}

std::size_t observed_bandwidth(const DenseMatrix& m) {
    std::size_t k = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0.0) k = std::max<std::size_t>(k, static_cast<std::size_t>(std::abs(i - j)));
    return k;
}

BandedMatrix band_product(const BandedMatrix& a, const BandedMatrix& b) {
    if (a.size() != b.size()) throw std::invalid_argument("band_product: dimension mismatch");
    const std::size_t p = a.size();
    const std::size_t ka = a.bandwidth();
    const std::size_t kb = b.bandwidth();
    const std::size_t k = std::min(ka + kb, p - 1);
    BandedMatrix c(p, k);
    for (std::size_t i = 0; i < p; ++i) {
        const std::size_t jlo = i >= k ? i - k : 0;
        const std::size_t jhi = std::min(p - 1, i + k);
        for (std::size_t j = jlo; j <= jhi; ++j) {
            // l must satisfy |i - l| <= ka and |l - j| <= kb
            const std::size_t lo = std::max(i >= ka ? i - ka : 0, j >= kb ? j - kb : 0);
            const std::size_t hi = std::min({p - 1, i + ka, j + kb});
            double acc = 0.0;
            for (std::size_t l = lo; l <= hi; ++l) acc += a(i, l) * b(l, j);
            c.set(i, j, acc);
        }
    }
    return c;
}

LstsqResult lstsq(const DenseMatrix& x, const Vector& y) {
    const Eigen::Index m = x.rows();
    const Eigen::Index n = x.cols();
    if (m != y.size()) throw std::invalid_argument("lstsq: rows(x) != len(y)");
    if (n == 0) return {Vector(0), y.squaredNorm()};
    if (m < n) throw SingularDesignError(static_cast<std::size_t>(m), 0.0, 0.0);

    DenseMatrix a = x;
    Vector b = y;
    Vector diag(n);
    Vector v(m);
    for (Eigen::Index j = 0; j < n; ++j) {
        const Eigen::Index len = m - j;
        const double norm = a.col(j).tail(len).norm();
        if (norm == 0.0) {
            diag[j] = 0.0;
            continue;
        }
        const double alpha = a(j, j) > 0.0 ? -norm : norm;
        v.head(len) = a.col(j).tail(len);
        v[0] -= alpha;
        const double vv = v.head(len).squaredNorm();
        diag[j] = alpha;
        if (vv == 0.0) continue;
        const double scale = 2.0 / vv;
        const Eigen::Index rest = n - j - 1;
        if (rest > 0) {
            auto block = a.block(j, j + 1, len, rest);
            const Eigen::RowVectorXd proj = v.head(len).transpose() * block;
            block.noalias() -= (scale * v.head(len)) * proj;
        }
        const double bp = v.head(len).dot(b.tail(len));
        b.tail(len) -= (scale * bp) * v.head(len);
    }

    const double largest = diag.cwiseAbs().maxCoeff();
    for (Eigen::Index j = 0; j < n; ++j) {
        if (largest == 0.0 || std::abs(diag[j]) < kRankTolerance * largest)
            throw SingularDesignError(static_cast<std::size_t>(j), diag[j], largest);
    }

    Vector beta(n);
    for (Eigen::Index j = n - 1; j >= 0; --j) {
        double acc = b[j];
        for (Eigen::Index c = j + 1; c < n; ++c) acc -= a(j, c) * beta[c];
        beta[j] = acc / diag[j];
    }
    return {std::move(beta), b.tail(m - n).squaredNorm()};
}

double spectral_norm(const DenseMatrix& m, double rel_tol, int max_iter) {
    if (m.size() == 0 || m.cwiseAbs().maxCoeff() == 0.0) return 0.0;

    // Power iteration on the Gram matrix G of the smaller side, run on
    // G^(2^s) obtained by repeated normalised squaring. Squaring stops once
    // the normalised power no longer changes, i.e. only the dominant
    // eigenspace survives; after s squarings a stopping rule based on
    // successive estimates can be off by at most about 1 / 2^s relative,
    // however close the top two singular values are.
    const bool wide = m.cols() > m.rows();
    DenseMatrix gram = wide ? DenseMatrix(m * m.transpose()) : DenseMatrix(m.transpose() * m);
    gram /= gram.norm();
    for (int s = 0; s < 64; ++s) {
        DenseMatrix next = gram * gram;
        const double scale = next.norm();
        if (scale == 0.0 || !std::isfinite(scale)) break;
        next /= scale;
        const double change = (next - gram).norm();
        gram = std::move(next);
        if (change <= 1e-14) break;
    }
    auto estimate = [&](const Vector& v) { return wide ? (m.transpose() * v).norm() : (m * v).norm(); };

    // Start from the heaviest column of the Gram power, nudged off any exact
    // invariant subspace.
    Eigen::Index heavy = 0;
    gram.colwise().squaredNorm().maxCoeff(&heavy);
    Vector v = gram.col(heavy);
    const double nudge = 1e-8 * v.norm() / std::sqrt(static_cast<double>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] += nudge * std::cos(1.0 + static_cast<double>(i));
    v.normalize();

    double sigma = estimate(v);
    double gap = sigma;
    for (int iter = 0; iter < max_iter; ++iter) {
        Vector w = gram * v;
        const double wn = w.norm();
        if (wn == 0.0) break;
        v = w / wn;
        const double next = estimate(v);
        gap = std::abs(next - sigma);
        sigma = next;
        if (gap <= rel_tol * sigma) return sigma;
    }
    throw ConvergenceError("spectral_norm: power iteration did not converge", sigma, gap);
}

double l1_norm(const DenseMatrix& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().colwise().sum().maxCoeff();
}

double linf_norm(const DenseMatrix& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().rowwise().sum().maxCoeff();
}

double frobenius_norm(const DenseMatrix& m) { return m.norm(); }

double spectral_radius(const DenseMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("spectral_radius: matrix must be square");
    if (m.size() == 0) return 0.0;
    Eigen::EigenSolver<DenseMatrix> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("spectral_radius: eigenvalue iteration did not converge", 0.0, 0.0);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace bandvar
