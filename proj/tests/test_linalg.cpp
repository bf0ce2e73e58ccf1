#include "bandvar/errors.hpp"
#include "bandvar/linalg.hpp"
#include "bandvar/rng.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace bandvar;

TEST(BandedMatrix, StorageRoundTrip) {
    Rng rng(3);
    const DenseMatrix d = oracle::random_banded(7, 2, rng);
    const BandedMatrix b = BandedMatrix::from_dense(d, 2);
    EXPECT_EQ(b.size(), 7u);
    EXPECT_EQ(b.bandwidth(), 2u);
    EXPECT_EQ(b.to_dense(), d);
    EXPECT_EQ(b(0, 5), 0.0);
}

TEST(BandedMatrix, FromDenseTruncatesOutsideBand) {
    DenseMatrix d = DenseMatrix::Constant(4, 4, 1.0);
    const DenseMatrix t = BandedMatrix::from_dense(d, 1).to_dense();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) EXPECT_EQ(t(i, j), std::abs(i - j) <= 1 ? 1.0 : 0.0);
}

TEST(BandedMatrix, SetOutsideBandThrows) {
    BandedMatrix b(5, 1);
    b.set(2, 3, 4.0);
    EXPECT_EQ(b(2, 3), 4.0);
    EXPECT_THROW(b.set(0, 2, 1.0), std::out_of_range);
}

TEST(BandedMatrix, RejectsInvalidShape) {
    EXPECT_THROW(BandedMatrix(0, 0), std::invalid_argument);
    EXPECT_THROW(BandedMatrix(3, 3), std::invalid_argument);
}

TEST(BandedMatrix, MultiplyMatchesDense) {
    Rng rng(11);
    const DenseMatrix d = oracle::random_banded(9, 3, rng);
    const Vector x = oracle::random_matrix(9, 1, rng);
    const Vector got = BandedMatrix::from_dense(d, 3).multiply(x);
    EXPECT_LE((got - d * x).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(ObservedBandwidth, Basic) {
    DenseMatrix d = DenseMatrix::Zero(5, 5);
    EXPECT_EQ(observed_bandwidth(d), 0u);
    d(4, 1) = 1.0;
    EXPECT_EQ(observed_bandwidth(d), 3u);
}

TEST(BandProduct, IdentityLeavesMatrixUnchanged) {
    Rng rng(5);
    const BandedMatrix a = BandedMatrix::from_dense(oracle::random_banded(6, 2, rng), 2);
    const BandedMatrix c = band_product(BandedMatrix::identity(6), a);
    EXPECT_EQ(c.bandwidth(), 2u);
    EXPECT_EQ(c.to_dense(), a.to_dense());
}

TEST(BandProduct, TridiagonalTimesTridiagonalIsPentadiagonal) {
    Rng rng(6);
    const BandedMatrix a = BandedMatrix::from_dense(oracle::random_banded(5, 1, rng), 1);
    const BandedMatrix b = BandedMatrix::from_dense(oracle::random_banded(5, 1, rng), 1);
    const BandedMatrix c = band_product(a, b);
    EXPECT_EQ(c.bandwidth(), 2u);
    EXPECT_LE(observed_bandwidth(c.to_dense()), 2u);
}

TEST(BandProduct, MatchesDenseProduct) {
    Rng rng(7);
    const DenseMatrix a = oracle::random_banded(6, 1, rng);
    const DenseMatrix b = oracle::random_banded(6, 1, rng);
    const DenseMatrix c = band_product(BandedMatrix::from_dense(a, 1), BandedMatrix::from_dense(b, 1)).to_dense();
    EXPECT_LE((c - a * b).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(BandProduct, ExactOnIntegerInputs) {
    Rng rng(8);
    for (int rep = 0; rep < 50; ++rep) {
        const Eigen::Index p = 3 + static_cast<Eigen::Index>(rep % 7);
        const Eigen::Index ka = rep % 3, kb = (rep / 3) % 3;
        DenseMatrix a = DenseMatrix::Zero(p, p), b = DenseMatrix::Zero(p, p);
        for (Eigen::Index i = 0; i < p; ++i)
            for (Eigen::Index j = 0; j < p; ++j) {
                if (std::abs(i - j) <= std::min(ka, p - 1)) a(i, j) = std::floor(rng.uniform(-5.0, 5.0));
                if (std::abs(i - j) <= std::min(kb, p - 1)) b(i, j) = std::floor(rng.uniform(-5.0, 5.0));
            }
        const auto kA = static_cast<std::size_t>(std::min(ka, p - 1));
        const auto kB = static_cast<std::size_t>(std::min(kb, p - 1));
        const DenseMatrix c = band_product(BandedMatrix::from_dense(a, kA), BandedMatrix::from_dense(b, kB)).to_dense();
        EXPECT_EQ(c, DenseMatrix(a * b));
    }
}

TEST(BandProduct, SizeMismatchThrows) {
    EXPECT_THROW(band_product(BandedMatrix(3, 0), BandedMatrix(4, 0)), std::invalid_argument);
}

TEST(Lstsq, IdentityDesign) {
    const Vector y = (Vector(3) << 1, 2, 3).finished();
    const LstsqResult r = lstsq(DenseMatrix::Identity(3, 3), y);
    EXPECT_LE((r.beta - y).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_NEAR(r.rss, 0.0, 1e-24);
}

TEST(Lstsq, OnesColumnGivesMean) {
    const Vector y = (Vector(4) << 1, 2, 3, 4).finished();
    const LstsqResult r = lstsq(DenseMatrix::Ones(4, 1), y);
    EXPECT_NEAR(r.beta[0], 2.5, 1e-14);
    EXPECT_NEAR(r.rss, 5.0, 1e-12);
}

TEST(Lstsq, MatchesNormalEquations) {
    Rng rng(21);
    const DenseMatrix x = oracle::random_matrix(20, 3, rng);
    const Vector y = oracle::random_matrix(20, 1, rng);
    const LstsqResult r = lstsq(x, y);
    const Vector expect = oracle::normal_equations(x, y);
    EXPECT_LE((r.beta - expect).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_NEAR(r.rss, (y - x * expect).squaredNorm(), 1e-10);
}

TEST(Lstsq, ResidualOrthogonality) {
    Rng rng(22);
    for (int rep = 0; rep < 100; ++rep) {
        const Eigen::Index n = 10 + rep % 30, m = 1 + rep % 8;
        const DenseMatrix x = oracle::random_matrix(n, m, rng);
        const Vector y = oracle::random_matrix(n, 1, rng);
        const LstsqResult r = lstsq(x, y);
        EXPECT_LE((x.transpose() * (y - x * r.beta)).cwiseAbs().maxCoeff(), 1e-8 * y.norm());
    }
}

TEST(Lstsq, SingularDesignNamesColumn) {
    DenseMatrix x(5, 3);
    x << 1, 2, 3, 1, 0, 1, 1, 5, 6, 1, 1, 2, 1, 3, 4;
    x.col(2) = x.col(0) + x.col(1);
    try {
        lstsq(x, Vector::Ones(5));
        FAIL() << "expected SingularDesignError";
    } catch (const SingularDesignError& e) {
        EXPECT_EQ(e.column(), 2u);
    }
}

TEST(Lstsq, UnderdeterminedThrows) {
    EXPECT_THROW(lstsq(DenseMatrix::Ones(2, 3), Vector::Ones(2)), SingularDesignError);
    EXPECT_THROW(lstsq(DenseMatrix::Ones(3, 1), Vector::Ones(2)), std::invalid_argument);
}

TEST(SpectralNorm, SimpleCases) {
    EXPECT_NEAR(spectral_norm(DenseMatrix::Identity(4, 4)), 1.0, 1e-12);
    DenseMatrix d = DenseMatrix::Zero(3, 3);
    d.diagonal() << 3, -5, 2;
    EXPECT_NEAR(spectral_norm(d), 5.0, 1e-10);
    EXPECT_EQ(spectral_norm(DenseMatrix::Zero(3, 3)), 0.0);
}

TEST(SpectralNorm, MatchesRandomDirectionSearch) {
    Rng rng(31);
    const DenseMatrix m = oracle::random_matrix(8, 8, rng);
    double best = 0.0;
    for (int s = 0; s < 100000; ++s) {
        Vector v(8);
        for (int i = 0; i < 8; ++i) v[i] = rng.normal();
        best = std::max(best, (m * v).norm() / v.norm());
    }
    const double got = spectral_norm(m);
    EXPECT_GE(got, best - 1e-12);
    EXPECT_NEAR(got, best, 1e-3 * got + 0.05);
    EXPECT_NEAR(got, oracle::svd_norm(m), 1e-8);
}

TEST(SpectralNorm, NearlyDegenerateTopSingularValues) {
    // Top two singular values differ by 1e-6; plain power iteration needs
    // millions of steps here.
    Rng rng(32);
    const DenseMatrix q1 = Eigen::HouseholderQR<DenseMatrix>(oracle::random_matrix(30, 30, rng)).householderQ();
    const DenseMatrix q2 = Eigen::HouseholderQR<DenseMatrix>(oracle::random_matrix(30, 30, rng)).householderQ();
    Vector s = Vector::LinSpaced(30, 0.1, 0.9);
    s[29] = 1.0;
    s[28] = 1.0 - 1e-6;
    const DenseMatrix m = q1 * s.asDiagonal() * q2.transpose();
    EXPECT_NEAR(spectral_norm(m), 1.0, 1e-8);
}

TEST(SpectralNorm, RandomBandedAgainstSvd) {
    Rng rng(33);
    for (int rep = 0; rep < 40; ++rep) {
        const DenseMatrix m = oracle::random_banded(100, 1 + rep % 3, rng);
        EXPECT_NEAR(spectral_norm(m), oracle::svd_norm(m), 1e-8 * oracle::svd_norm(m));
    }
}

TEST(SpectralNorm, RectangularMatrices) {
    Rng rng(34);
    const DenseMatrix wide = oracle::random_matrix(3, 9, rng);
    const DenseMatrix tall = wide.transpose();
    EXPECT_NEAR(spectral_norm(wide), oracle::svd_norm(wide), 1e-9);
    EXPECT_NEAR(spectral_norm(tall), oracle::svd_norm(wide), 1e-9);
}

TEST(Norms, DirectEvaluation) {
    DenseMatrix m(2, 2);
    m << 1, -2, 3, 4;
    EXPECT_EQ(l1_norm(m), 6.0);
    EXPECT_EQ(linf_norm(m), 7.0);
    EXPECT_NEAR(frobenius_norm(m), std::sqrt(30.0), 1e-15);
    const DenseMatrix z = DenseMatrix::Zero(3, 3);
    EXPECT_EQ(l1_norm(z), 0.0);
    EXPECT_EQ(linf_norm(z), 0.0);
    EXPECT_EQ(frobenius_norm(z), 0.0);
}

TEST(Norms, SymmetricL1EqualsLinf) {
    Rng rng(41);
    const DenseMatrix a = oracle::random_matrix(6, 6, rng);
    const DenseMatrix s = a + a.transpose();
    EXPECT_NEAR(l1_norm(s), linf_norm(s), 1e-14);
}

TEST(NormProperties, Submultiplicative) {
    Rng rng(42);
    for (int rep = 0; rep < 200; ++rep) {
        const Eigen::Index a = 1 + rep % 7, b = 1 + (rep / 7) % 5, c = 1 + rep % 4;
        const DenseMatrix x = oracle::random_matrix(a, b, rng);
        const DenseMatrix y = oracle::random_matrix(b, c, rng);
        EXPECT_LE(spectral_norm(x * y), spectral_norm(x) * spectral_norm(y) + 1e-8);
    }
}

TEST(NormProperties, SpectralSquaredBoundedByL1TimesLinf) {
    Rng rng(43);
    for (int rep = 0; rep < 1000; ++rep) {
        const Eigen::Index r = 1 + rep % 9, c = 1 + (rep / 9) % 9;
        const DenseMatrix m = oracle::random_matrix(r, c, rng);
        const double s = spectral_norm(m);
        EXPECT_LE(s * s, l1_norm(m) * linf_norm(m) * (1.0 + 1e-10));
    }
}

TEST(SpectralRadius, SimpleCases) {
    DenseMatrix d = DenseMatrix::Zero(2, 2);
    d.diagonal() << 0.5, -0.9;
    EXPECT_NEAR(spectral_radius(d), 0.9, 1e-12);
    DenseMatrix nil = DenseMatrix::Zero(4, 4);
    nil(1, 0) = 2.0;
    nil(2, 1) = -1.0;
    nil(3, 0) = 3.0;
    EXPECT_NEAR(spectral_radius(nil), 0.0, 1e-6);
}

TEST(SpectralRadius, KnownEigendecomposition) {
    Rng rng(51);
    const DenseMatrix q = Eigen::HouseholderQR<DenseMatrix>(oracle::random_matrix(4, 4, rng)).householderQ();
    const Vector lambda = (Vector(4) << 0.3, -1.7, 0.9, 1.2).finished();
    const DenseMatrix m = q * lambda.asDiagonal() * q.transpose();
    EXPECT_NEAR(spectral_radius(m), 1.7, 1e-10);
}
