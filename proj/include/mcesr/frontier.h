#pragma once

#include <optional>
#include <string>
#include <utility>

#include "mcesr/market_model.h"

namespace mcesr {

/// Fully invested portfolio with its expected return and risk per period.
/// expected_return and risk are always recomputed from the weights.
struct Portfolio {
    VectorXd weights;
    double expected_return = 0.0;
    double risk = 0.0;
    std::optional<double> rf_used;
    std::string label;
};

/// Builds a Portfolio from weights, computing w'mu and sqrt(w' Sigma w).
Portfolio make_portfolio(const MarketModel& model, VectorXd weights, std::string label,
                         std::optional<double> rf = std::nullopt);

/// r = intercept + slope * sigma
struct FrontierLine {
    double intercept = 0.0;
    double slope = 0.0;

    double at(double sigma) const noexcept { return intercept + slope * sigma; }
};

/// Slopes of the rays from the origin through TP and GMV, and of the upper
/// asymptote: m_tp = sqrt(a), m_ah = sqrt((ab - c^2)/b), m_gmv = c / sqrt(b).
struct Slopes {
    double m_tp = 0.0;
    double m_ah = 0.0;
    double m_gmv = 0.0;
};

/// Largest admissible risk-free rate margin: rf must satisfy
/// rf < r_GMV - 1e-9 * max(1, |r_GMV|).
double rate_margin(const MarketModel& model) noexcept;
bool is_admissible_rate(const MarketModel& model, double rf) noexcept;
/// Throws RateTooHigh when `rf` does not admit a tangency on the efficient branch.
void require_admissible_rate(const MarketModel& model, double rf);

Portfolio gmv_portfolio(const MarketModel& model);

/// Throws NonPositiveGmvReturn when c <= 0.
Portfolio tangent_portfolio(const MarketModel& model);

/// w = Sigma^-1 (mu - rf 1) / (c - b rf). Throws RateTooHigh.
Portfolio msr_portfolio(const MarketModel& model, double rf);

/// Minimum risk at expected return rho: sqrt((b rho^2 - 2c rho + a)/(ab - c^2)).
double frontier_risk_at_return(const MarketModel& model, double rho);

/// Upper and lower asymptote, r = c/b +- sqrt((ab - c^2)/b) sigma.
std::pair<FrontierLine, FrontierLine> asymptotes(const MarketModel& model);

/// Capital market line through (0, rf) and MSR(rf).
FrontierLine cml(const MarketModel& model, double rf);

Slopes slopes(const MarketModel& model);

/// (expected_return - rf) / risk. Throws ZeroRisk for risk <= 1e-14.
double sharpe_ratio(const Portfolio& p, double rf);

}  // namespace mcesr
