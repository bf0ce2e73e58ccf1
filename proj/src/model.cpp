#include "bandvar/model.hpp"

#include "bandvar/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bandvar {

namespace {

constexpr double kSeriesTolerance = 1e-12;

void require_var1(const BandedVarModel& m, const char* who) {
    if (m.order() != 1)
        throw std::invalid_argument(std::string(who) + ": only order-1 models are supported");
    if (!m.sigma_eps()) throw std::invalid_argument(std::string(who) + ": innovation covariance required");
    if (!is_stationary(m)) throw NonStationaryError(std::string(who) + ": model is not stationary");
}

}  // namespace

BandedVarModel::BandedVarModel(std::vector<BandedMatrix> coeffs, std::size_t k0,
                               std::optional<DenseMatrix> sigma_eps, std::optional<Vector> mean)
    : p_(0), k0_(k0), coeffs_(std::move(coeffs)), sigma_eps_(std::move(sigma_eps)), mean_(std::move(mean)) {
    if (coeffs_.empty()) throw std::invalid_argument("BandedVarModel: order must be at least 1");
    p_ = coeffs_.front().size();
    for (std::size_t l = 0; l < coeffs_.size(); ++l) {
        const auto& a = coeffs_[l];
        if (a.size() != p_) throw std::invalid_argument("BandedVarModel: coefficient dimensions differ");
        if (a.bandwidth() > k0_ && observed_bandwidth(a.to_dense()) > k0_) {
            std::ostringstream os;
            os << "BandedVarModel: coefficient " << l + 1 << " has entries outside band k0=" << k0_;
            throw std::invalid_argument(os.str());
        }
    }
    if (k0_ >= p_) throw std::invalid_argument("BandedVarModel: k0 must be below p");
    if (sigma_eps_) {
        const auto& s = *sigma_eps_;
        if (static_cast<std::size_t>(s.rows()) != p_ || static_cast<std::size_t>(s.cols()) != p_)
            throw std::invalid_argument("BandedVarModel: sigma_eps must be p x p");
        if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-12)
            throw std::invalid_argument("BandedVarModel: sigma_eps is not symmetric");
        Eigen::SelfAdjointEigenSolver<DenseMatrix> es(s, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -1e-10)
            throw std::invalid_argument("BandedVarModel: sigma_eps is not positive semi-definite");
    }
    if (mean_ && static_cast<std::size_t>(mean_->size()) != p_)
        throw std::invalid_argument("BandedVarModel: mean must have length p");
}

TimeSeries::TimeSeries(DenseMatrix v, std::vector<std::string> names,
                       std::optional<std::vector<std::array<double, 2>>> xy)
    : values(std::move(v)), labels(std::move(names)), coords(std::move(xy)) {
    if (!values.allFinite()) throw std::invalid_argument("TimeSeries: values must be finite");
    if (labels.empty()) labels = default_labels(dim());
    if (labels.size() != dim()) throw std::invalid_argument("TimeSeries: label count must equal p");
    if (coords && coords->size() != dim())
        throw std::invalid_argument("TimeSeries: coordinate count must equal p");
}

TimeSeries TimeSeries::head(std::size_t n) const {
    if (n > length()) throw std::out_of_range("TimeSeries::head: n exceeds length");
    return TimeSeries(values.leftCols(static_cast<Eigen::Index>(n)), labels, coords);
}

TimeSeries TimeSeries::permuted(const std::vector<std::size_t>& perm) const {
    validate_permutation(perm, dim());
    DenseMatrix v(values.rows(), values.cols());
    std::vector<std::string> names(dim());
    std::optional<std::vector<std::array<double, 2>>> xy;
    if (coords) xy.emplace(dim());
    for (std::size_t m = 0; m < perm.size(); ++m) {
        v.row(static_cast<Eigen::Index>(m)) = values.row(static_cast<Eigen::Index>(perm[m]));
        names[m] = labels[perm[m]];
        if (coords) (*xy)[m] = (*coords)[perm[m]];
    }
    return TimeSeries(std::move(v), std::move(names), std::move(xy));
}

std::vector<std::string> default_labels(std::size_t p) {
    std::vector<std::string> out;
    out.reserve(p);
    for (std::size_t i = 0; i < p; ++i) out.push_back("y" + std::to_string(i + 1));
    return out;
}

void validate_permutation(const std::vector<std::size_t>& perm, std::size_t p) {
    if (perm.size() != p) throw std::invalid_argument("permutation length must equal p");
    std::vector<bool> seen(p, false);
    for (auto v : perm) {
        if (v >= p || seen[v]) throw std::invalid_argument("invalid permutation");
        seen[v] = true;
    }
}

DenseMatrix companion_matrix(const BandedVarModel& m) {
    const auto p = static_cast<Eigen::Index>(m.dim());
    const auto d = static_cast<Eigen::Index>(m.order());
    DenseMatrix c = DenseMatrix::Zero(d * p, d * p);
    for (Eigen::Index l = 0; l < d; ++l) c.block(0, l * p, p, p) = m.coeff(static_cast<std::size_t>(l)).to_dense();
    for (Eigen::Index l = 1; l < d; ++l) c.block(l * p, (l - 1) * p, p, p).setIdentity();
    return c;
}

bool is_stationary(const BandedVarModel& m, double margin) {
    return spectral_radius(companion_matrix(m)) < 1.0 - margin;
}

AutocovSeries theoretical_autocov_var1(const BandedVarModel& m, std::size_t lag, std::size_t max_terms) {
    require_var1(m, "theoretical_autocov_var1");
    if (max_terms == 0) throw std::invalid_argument("theoretical_autocov_var1: terms must be >= 1");
    const DenseMatrix a = m.coeff(0).to_dense();
    DenseMatrix term = *m.sigma_eps();
    DenseMatrix sum = term;
    std::size_t used = 0;
    while (used < max_terms) {
        term = a * term * a.transpose();
        ++used;
        sum += term;
        if (term.norm() < kSeriesTolerance) break;
    }
    for (std::size_t j = 0; j < lag; ++j) sum = sum * a.transpose();
    return {std::move(sum), used};
}

ApproximationGap banded_approximation_gap(const BandedVarModel& m, std::size_t lag, std::size_t r) {
    require_var1(m, "banded_approximation_gap");
    const DenseMatrix a = m.coeff(0).to_dense();
    // Tail sum_{i>r} A^i S (A^T)^i, summed directly rather than by subtraction.
    DenseMatrix term = *m.sigma_eps();
    for (std::size_t i = 0; i <= r; ++i) {
        term = a * term * a.transpose();
        if (term.norm() == 0.0) return {};
    }
    DenseMatrix tail = term;
    for (std::size_t i = 0; i < 100000 && term.norm() >= kSeriesTolerance * 1e-6; ++i) {
        term = a * term * a.transpose();
        tail += term;
    }
    for (std::size_t j = 0; j < lag; ++j) tail = tail * a.transpose();
    return {spectral_norm(tail), l1_norm(tail)};
}

}  // namespace bandvar
