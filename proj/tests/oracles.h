#pragma once

// Test-only oracles and generators. Nothing here calls the closed forms under
// test; each helper recomputes its quantity from mu and Sigma directly.

#include <cmath>
#include <functional>
#include <random>

#include <Eigen/Dense>

#include "mcesr/market_model.h"

namespace oracle {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Random well-conditioned market with n assets and positive GMV return.
/// Volatilities around 3-8% per period, means around 1%.
inline mcesr::MarketModel random_market(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> vol(0.03, 0.08);
    while (true) {
        MatrixXd factors(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                factors(i, j) = normal(rng);
            }
        }
        MatrixXd corr = factors * factors.transpose() / n + 0.5 * MatrixXd::Identity(n, n);
        const VectorXd d = corr.diagonal().cwiseSqrt().cwiseInverse();
        corr = d.asDiagonal() * corr * d.asDiagonal();
        VectorXd s(n);
        for (int i = 0; i < n; ++i) {
            s(i) = vol(rng);
        }
        MatrixXd sigma = s.asDiagonal() * corr * s.asDiagonal();
        sigma = 0.5 * (sigma + sigma.transpose()).eval();
        VectorXd mu(n);
        for (int i = 0; i < n; ++i) {
            mu(i) = 0.01 + 0.006 * normal(rng);
        }
        try {
            auto model = mcesr::MarketModel::from_moments(mu, sigma);
            if (model.c() > 0.0) {
                return model;
            }
        } catch (const std::exception&) {
        }
    }
}

/// (mu - r 1)' Sigma^-1 (mu - r 1) by a fresh linear solve.
inline double excess_quadratic(const mcesr::MarketModel& model, double r) {
    const VectorXd excess = model.mu().array() - r;
    return excess.dot(model.sigma().llt().solve(excess));
}

/// Composite Simpson rule with `nodes` (odd) points.
inline double simpson(const std::function<double(double)>& f, double lo, double hi, int nodes) {
    const int panels = nodes - 1;
    const double h = (hi - lo) / panels;
    double sum = f(lo) + f(hi);
    for (int k = 1; k < panels; ++k) {
        sum += (k % 2 == 1 ? 4.0 : 2.0) * f(lo + k * h);
    }
    return sum * h / 3.0;
}

/// Minimum variance at expected return rho: solves the (n+2) Lagrange system
/// of  min w' Sigma w  s.t.  mu'w = rho, 1'w = 1.
inline double kkt_frontier_risk(const mcesr::MarketModel& model, double rho) {
    const auto n = model.assets();
    MatrixXd k = MatrixXd::Zero(n + 2, n + 2);
    k.topLeftCorner(n, n) = 2.0 * model.sigma();
    k.block(0, n, n, 1) = -model.mu();
    k.block(0, n + 1, n, 1) = -VectorXd::Ones(n);
    k.block(n, 0, 1, n) = model.mu().transpose();
    k.block(n + 1, 0, 1, n) = VectorXd::Ones(n).transpose();
    VectorXd rhs = VectorXd::Zero(n + 2);
    rhs(n) = rho;
    rhs(n + 1) = 1.0;
    const VectorXd sol = k.fullPivLu().solve(rhs);
    const VectorXd w = sol.head(n);
    return std::sqrt(w.dot(model.sigma() * w));
}

/// Sharpe ratio of raw weights at rate rf.
inline double sharpe(const mcesr::MarketModel& model, const VectorXd& w, double rf) {
    return (w.dot(model.mu()) - rf) / std::sqrt(w.dot(model.sigma() * w));
}

/// Uniform draw from the probability simplex.
inline VectorXd simplex_point(std::mt19937_64& rng, Eigen::Index n) {
    std::exponential_distribution<double> e(1.0);
    VectorXd w(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        w(i) = e(rng);
    }
    return w / w.sum();
}

/// Fully invested weights with unrestricted signs.
inline VectorXd invested_point(std::mt19937_64& rng, Eigen::Index n) {
    std::normal_distribution<double> normal(1.0 / static_cast<double>(n), 1.0);
    VectorXd w(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        w(i) = normal(rng);
    }
    w(n - 1) = 1.0 - w.head(n - 1).sum();
    return w;
}

inline bool close_rel(double actual, double expected, double tol) {
    return std::abs(actual - expected) <= tol * std::max(1.0, std::abs(expected));
}

}  // namespace oracle
