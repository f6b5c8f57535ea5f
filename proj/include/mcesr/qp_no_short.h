#pragma once

#include <span>
#include <vector>

#include "mcesr/cross_efficiency.h"
#include "mcesr/frontier.h"
#include "mcesr/market_model.h"

namespace mcesr {

/// Optimum of  min x' Sigma x  s.t.  x'd = 1, x >= 0.
struct QpSolution {
    VectorXd x;
    std::vector<Eigen::Index> active_set;  // indices pinned at x_i = 0
    int iterations = 0;
    double objective = 0.0;
    double multiplier = 0.0;                 // lambda of the equality constraint
    std::vector<double> objective_history;  // objective after every iteration
};

/// Largest KKT violations of a QpSolution, for certification in tests.
struct KktResiduals {
    double stationarity = 0.0;    // max |2 Sigma x - lambda d|_i over free i
    double dual_violation = 0.0;  // max(0, -(2 Sigma x - lambda d)_i) over active i
    double equality = 0.0;        // |x'd - 1|
    double primal_violation = 0.0;  // max(0, -x_i)
};

/// Primal active-set method. Starts at x = e_k / d_k with k = argmax d, solves
/// the equality-constrained subproblem on the free set by Cholesky, and frees
/// pinned variables by the smallest-index rule.
/// Throws Infeasible when every d_i <= 0 and MaxIterations after 10 n^2 steps.
QpSolution qp_solve(const MatrixXd& sigma, const VectorXd& d);

KktResiduals kkt_residuals(const MatrixXd& sigma, const VectorXd& d, const QpSolution& solution);

/// Long-only maximum Sharpe portfolio, w = x / (x'1) with x from
/// qp_solve(Sigma, mu - rf 1). Throws Infeasible when no mu_i exceeds rf.
Portfolio msr_no_short(const MarketModel& model, double rf);

/// Long-only minimum variance portfolio.
Portfolio gmv_no_short(const MarketModel& model);

/// msr_no_short at rf = 0, labelled TP.
Portfolio tangent_no_short(const MarketModel& model);

/// CE_i = mean_j [(r_i - rf_j)/sigma_i] / [(r_j - rf_j)/sigma_j].
/// Throws InvalidPairing when some portfolio j is beaten at its own rate by a
/// peer (summand above 1 + 1e-8) or has a non-positive own Sharpe ratio.
std::vector<double> discrete_cross_efficiency(std::span<const Portfolio> portfolios,
                                              std::span<const double> rates);

/// n + 1 rates r_min (n - i + 1)/n + r_max (i - 1)/n, i = 1..n+1.
std::vector<double> no_short_grid_rates(const RateInterval& interval, int n);

struct GridResult {
    std::vector<double> rates;
    std::vector<Portfolio> portfolios;
    std::vector<double> ce_scores;
    std::size_t best_index = 0;

    const Portfolio& best() const { return portfolios[best_index]; }
    double best_rate() const { return rates[best_index]; }
};

/// Long-only MCESR approximation over n + 1 grid rates. Ties in the score go to
/// the smaller rate.
GridResult mcesr_no_short(const MarketModel& model, const RateInterval& interval, int n = 1000);

}  // namespace mcesr
