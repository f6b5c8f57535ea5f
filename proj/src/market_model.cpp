#include "mcesr/market_model.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <spdlog/spdlog.h>

#include "mcesr/error.h"

namespace mcesr {

namespace {

constexpr double kPivotTolerance = 1e-12;
constexpr double kSymmetryTolerance = 1e-12;
constexpr double kInverseResidualTolerance = 1e-8;
constexpr double kDegeneracyTolerance = 1e-14;

Eigen::LLT<MatrixXd> factorize(const MatrixXd& sigma) {
    if (sigma.rows() == 0 || sigma.rows() != sigma.cols()) {
        throw Error(ErrorCode::InvalidInput, "covariance must be square and non-empty");
    }
    Eigen::LLT<MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success) {
        throw Error(ErrorCode::NotPositiveDefinite, "Cholesky factorization failed");
    }
    const double max_diag = sigma.diagonal().maxCoeff();
    const MatrixXd l = llt.matrixL();
    for (Eigen::Index i = 0; i < l.rows(); ++i) {
        const double pivot = l(i, i) * l(i, i);
        if (!(pivot > kPivotTolerance * max_diag)) {
            throw Error(ErrorCode::NotPositiveDefinite,
                        "pivot " + std::to_string(i) + " is " + std::to_string(pivot) +
                            ", below 1e-12 of the largest variance");
        }
    }
    return llt;
}

void check_residual(const MatrixXd& sigma, const MatrixXd& inverse) {
    const auto n = sigma.rows();
    const double residual = (sigma * inverse - MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    if (!(residual <= kInverseResidualTolerance)) {
        throw Error(ErrorCode::NotPositiveDefinite,
                    "covariance is too ill-conditioned: inverse residual " + std::to_string(residual));
    }
}

}  // namespace

ReturnMatrix::ReturnMatrix(MatrixXd values, std::vector<std::string> asset_names,
                           std::vector<std::string> period_labels)
    : values_(std::move(values)),
      asset_names_(std::move(asset_names)),
      period_labels_(std::move(period_labels)) {
    if (values_.rows() < 1 || values_.cols() < 1) {
        throw Error(ErrorCode::InvalidInput, "return panel is empty");
    }
    if (static_cast<Eigen::Index>(asset_names_.size()) != values_.cols()) {
        throw Error(ErrorCode::InvalidInput, "asset name count does not match column count");
    }
    if (static_cast<Eigen::Index>(period_labels_.size()) != values_.rows()) {
        throw Error(ErrorCode::InvalidInput, "period label count does not match row count");
    }
    std::set<std::string> seen;
    for (const auto& name : asset_names_) {
        if (name.empty()) {
            throw Error(ErrorCode::InvalidInput, "empty asset name");
        }
        if (!seen.insert(name).second) {
            throw Error(ErrorCode::InvalidInput, "duplicate asset name '" + name + "'");
        }
    }
    if (!values_.allFinite()) {
        throw Error(ErrorCode::InvalidInput, "return panel contains non-finite values");
    }
}

ReturnMatrix ReturnMatrix::rows(Eigen::Index first, Eigen::Index count) const {
    std::vector<std::string> labels(period_labels_.begin() + first,
                                    period_labels_.begin() + first + count);
    return ReturnMatrix(values_.middleRows(first, count), asset_names_, std::move(labels));
}

ReturnMatrix ReturnMatrix::scaled(double factor) const {
    return ReturnMatrix(values_ * factor, asset_names_, period_labels_);
}

MarketModel MarketModel::from_moments(VectorXd mu, MatrixXd sigma) {
    const auto n = mu.size();
    if (n < 1 || sigma.rows() != n || sigma.cols() != n) {
        throw Error(ErrorCode::InvalidInput, "mean vector and covariance dimensions disagree");
    }
    if (!mu.allFinite() || !sigma.allFinite()) {
        throw Error(ErrorCode::InvalidInput, "non-finite moments");
    }
    const double scale = std::max(sigma.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
    const double asymmetry = (sigma - sigma.transpose()).cwiseAbs().maxCoeff();
    if (asymmetry > kSymmetryTolerance * scale) {
        throw Error(ErrorCode::InvalidInput, "covariance is not symmetric");
    }
    sigma = 0.5 * (sigma + sigma.transpose()).eval();

    const auto llt = factorize(sigma);

    MarketModel model;
    model.sigma_inv_mu_ = llt.solve(mu);
    model.sigma_inv_one_ = llt.solve(VectorXd::Ones(n));
    model.sigma_inv_ = llt.solve(MatrixXd::Identity(n, n));
    check_residual(sigma, model.sigma_inv_);

    model.a_ = mu.dot(model.sigma_inv_mu_);
    model.b_ = model.sigma_inv_one_.sum();
    model.c_ = model.sigma_inv_mu_.sum();
    model.mu_ = std::move(mu);
    model.sigma_ = std::move(sigma);

    const double ab = model.a_ * model.b_;
    if (!(model.b_ > 0.0) || !(model.a_ > 0.0) || !(ab - model.c_ * model.c_ > kDegeneracyTolerance * ab)) {
        throw Error(ErrorCode::DegenerateMarket,
                    "ab - c^2 is not positive; expected returns are (nearly) identical across assets");
    }
    return model;
}

double MarketModel::gmv_risk() const noexcept { return 1.0 / std::sqrt(b_); }

MatrixXd invert_covariance(const MatrixXd& sigma) {
    const auto llt = factorize(sigma);
    MatrixXd inverse = llt.solve(MatrixXd::Identity(sigma.rows(), sigma.cols()));
    check_residual(sigma, inverse);
    return inverse;
}

MarketModel estimate_moments(const ReturnMatrix& returns) {
    const auto t = returns.periods();
    const auto n = returns.assets();
    if (t < 2 || n < 2) {
        throw Error(ErrorCode::InvalidInput, "moment estimation needs at least 2 periods and 2 assets");
    }
    if (t < n + 1) {
        spdlog::warn("only {} periods for {} assets; the sample covariance will be singular", t, n);
    }
    const MatrixXd& x = returns.values();
    VectorXd mu = x.colwise().mean().transpose();
    const MatrixXd centered = x.rowwise() - mu.transpose();
    MatrixXd sigma = (centered.transpose() * centered) / static_cast<double>(t - 1);
    sigma = 0.5 * (sigma + sigma.transpose()).eval();
    return MarketModel::from_moments(std::move(mu), std::move(sigma));
}

std::vector<AssetStats> descriptive_stats(const ReturnMatrix& returns) {
    const auto t = returns.periods();
    if (t < 2) {
        throw Error(ErrorCode::InvalidInput, "descriptive statistics need at least 2 periods");
    }
    std::vector<AssetStats> stats;
    stats.reserve(static_cast<std::size_t>(returns.assets()));
    for (Eigen::Index j = 0; j < returns.assets(); ++j) {
        const auto column = returns.values().col(j);
        AssetStats s;
        s.name = returns.asset_names()[static_cast<std::size_t>(j)];
        s.mean = column.mean();
        s.risk = std::sqrt((column.array() - s.mean).square().sum() / static_cast<double>(t - 1));
        s.minimum = column.minCoeff();
        s.maximum = column.maxCoeff();
        // the mean of a constant column can land an ulp outside [min, max]
        s.mean = std::clamp(s.mean, s.minimum, s.maximum);
        stats.push_back(std::move(s));
    }
    return stats;
}

}  // namespace mcesr
