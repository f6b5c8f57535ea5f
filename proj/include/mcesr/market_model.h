#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mcesr {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// T x n panel of per-period simple returns with asset and period labels.
///
/// Construction validates shape, finiteness and label uniqueness. Estimation
/// routines impose the stronger T >= 2, n >= 2 requirement themselves so that
/// one-period slices and single-asset panels remain representable.
class ReturnMatrix {
public:
    ReturnMatrix(MatrixXd values, std::vector<std::string> asset_names,
                 std::vector<std::string> period_labels);

    const MatrixXd& values() const noexcept { return values_; }
    const std::vector<std::string>& asset_names() const noexcept { return asset_names_; }
    const std::vector<std::string>& period_labels() const noexcept { return period_labels_; }

    Eigen::Index periods() const noexcept { return values_.rows(); }
    Eigen::Index assets() const noexcept { return values_.cols(); }

    /// Rows [first, first + count).
    ReturnMatrix rows(Eigen::Index first, Eigen::Index count) const;

    /// Same panel with every value multiplied by `factor`.
    ReturnMatrix scaled(double factor) const;

private:
    MatrixXd values_;
    std::vector<std::string> asset_names_;
    std::vector<std::string> period_labels_;
};

/// The (mu, Sigma) description of a market plus the frontier scalars
///   a = mu' Sigma^-1 mu,  b = 1' Sigma^-1 1,  c = 1' Sigma^-1 mu.
///
/// Instances are immutable and only obtainable through validated factories,
/// so every MarketModel satisfies b > 0, a > 0 and ab - c^2 > 0.
class MarketModel {
public:
    /// Validates symmetry and positive definiteness of `sigma`.
    /// Throws NotPositiveDefinite or DegenerateMarket.
    static MarketModel from_moments(VectorXd mu, MatrixXd sigma);

    const VectorXd& mu() const noexcept { return mu_; }
    const MatrixXd& sigma() const noexcept { return sigma_; }
    const MatrixXd& sigma_inv() const noexcept { return sigma_inv_; }
    /// Sigma^-1 mu and Sigma^-1 1.
    const VectorXd& sigma_inv_mu() const noexcept { return sigma_inv_mu_; }
    const VectorXd& sigma_inv_one() const noexcept { return sigma_inv_one_; }

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double c() const noexcept { return c_; }
    /// ab - c^2 > 0.
    double discriminant() const noexcept { return a_ * b_ - c_ * c_; }

    Eigen::Index assets() const noexcept { return mu_.size(); }

    /// Expected return and risk of the global minimum variance portfolio.
    double gmv_return() const noexcept { return c_ / b_; }
    double gmv_risk() const noexcept;

    /// (mu - rf 1)' Sigma^-1 (mu - rf 1) = a - 2c rf + b rf^2, the squared
    /// Sharpe ratio of the maximum-Sharpe portfolio at rate rf.
    double excess_quadratic(double rf) const noexcept { return a_ - 2.0 * c_ * rf + b_ * rf * rf; }

    /// Weighted-return and weighted-variance of an arbitrary weight vector.
    double portfolio_return(const VectorXd& w) const { return w.dot(mu_); }
    double portfolio_variance(const VectorXd& w) const { return w.dot(sigma_ * w); }

private:
    MarketModel() = default;

    VectorXd mu_;
    MatrixXd sigma_;
    MatrixXd sigma_inv_;
    VectorXd sigma_inv_mu_;
    VectorXd sigma_inv_one_;
    double a_ = 0.0;
    double b_ = 0.0;
    double c_ = 0.0;
};

struct AssetStats {
    std::string name;
    double mean = 0.0;
    double risk = 0.0;  // sample standard deviation, divisor T - 1
    double minimum = 0.0;
    double maximum = 0.0;
};

/// Column means and unbiased (T - 1) sample covariance. Warns when T < n + 1.
MarketModel estimate_moments(const ReturnMatrix& returns);

/// Inverse of a symmetric positive-definite matrix through its Cholesky
/// factor. A pivot at or below 1e-12 times the largest diagonal entry, or a
/// residual |Sigma Sigma^-1 - I|_max above 1e-8, raises NotPositiveDefinite.
MatrixXd invert_covariance(const MatrixXd& sigma);

std::vector<AssetStats> descriptive_stats(const ReturnMatrix& returns);

}  // namespace mcesr
