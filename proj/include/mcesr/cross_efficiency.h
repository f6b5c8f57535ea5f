#pragma once

#include <string_view>
#include <vector>

#include "mcesr/frontier.h"
#include "mcesr/market_model.h"

namespace mcesr {

/// Closed interval [r1, r2] of candidate risk-free rates, 0 <= r1 <= r2.
/// The upper bound r2 <= r_GMV is checked where a model is at hand.
class RateInterval {
public:
    RateInterval(double r1, double r2);

    double r1() const noexcept { return r1_; }
    double r2() const noexcept { return r2_; }
    double width() const noexcept { return r2_ - r1_; }
    /// r2 - r1 < 1e-14: averages over the interval collapse to point values.
    bool degenerate() const noexcept { return width() < 1e-14; }

private:
    double r1_;
    double r2_;
};

/// Optimal weights of the single-input (risk) single-output (return) DEA
/// ratio model for the tangent portfolio at a given rate: the coefficients of
/// the supporting line of the frontier at that portfolio.
struct DeaWeights {
    double u = 0.0;   // output weight, 1 / (r_MSR - rf)
    double v = 0.0;   // input weight, 1 / sigma_MSR
    double u0 = 0.0;  // return offset, rf

    /// u (r - u0) / (v sigma)
    double efficiency(double risk, double expected_return) const noexcept {
        return u * (expected_return - u0) / (v * risk);
    }
};

/// Averaged rate integrals over an interval,
///   i1 = mean of 1 / S(rf),  i2 = mean of rf / S(rf),
/// with S(rf) = sqrt(a - 2c rf + b rf^2).
struct RateIntegrals {
    double i1 = 0.0;
    double i2 = 0.0;
    bool degenerate = false;  // point values at r1 were returned
};

enum class CeMethod { Analytic, Quadrature, Grid };

std::string_view to_string(CeMethod method);

struct CrossEffReport {
    std::vector<double> rates;
    std::vector<double> scores;
    double best_rate = 0.0;
    Portfolio best_portfolio;
    CeMethod method = CeMethod::Analytic;
};

/// Sharpe ratio of MSR(rf) at rate rf, equal to sqrt(a - 2c rf + b rf^2).
/// Finite and positive for every rf, including the apex rf = r_GMV where it
/// equals the asymptote slope.
double max_sharpe(const MarketModel& model, double rf) noexcept;

/// Throws RateTooHigh when r2 exceeds r_GMV (plus margin).
void require_valid_interval(const MarketModel& model, const RateInterval& interval);

DeaWeights dea_weights(const MarketModel& model, double rf);

/// Efficiency of `p` judged with another portfolio's DEA weights.
double cross_efficiency_from_weights(const DeaWeights& weights, const Portfolio& p);

/// Ef_i(rf_j): the rf_j-Sharpe ratio of MSR(rf_i) relative to that of MSR(rf_j).
double cross_efficiency_pair(const MarketModel& model, double rf_i, double rf_j);

/// Defined for any interval, including ones reaching past r_GMV.
RateIntegrals integrals_i1_i2(const MarketModel& model, const RateInterval& interval);

/// Average of Ef_i(rf) for rf over the interval, by the closed-form integrals.
/// A degenerate interval yields the single-point value Ef_i(r1).
double average_cross_efficiency(const MarketModel& model, double rf_i, const RateInterval& interval);

/// Same average by composite Simpson quadrature of the pairwise ratio form
/// (odd node count, default 201). Cross-check for the closed form.
double average_cross_efficiency_quadrature(const MarketModel& model, double rf_i,
                                           const RateInterval& interval, int nodes = 201);

/// CE(r) with precomputed integrals. No admissibility check.
double cross_efficiency_closed_form(const MarketModel& model, double r, const RateIntegrals& integrals) noexcept;

/// Derivative of the average cross-efficiency with respect to the portfolio's rate.
double ce_derivative(const MarketModel& model, double r, const RateInterval& interval);

/// Rate of the tangent portfolio with maximal average cross-efficiency over
/// the interval. A degenerate interval returns r1.
double mcesr_rate(const MarketModel& model, const RateInterval& interval);

/// Optimal rate over [0, r_GMV] from the TP/GMV return ratio alone.
/// Throws NonPositiveGmvReturn or RatioTooSmall.
double mcesr_rate_full_interval(const MarketModel& model);

/// Optimal rate over [0, r_GMV] from the TP and GMV portfolios and the
/// asymptote slope, evaluated literally. Verification route.
double full_interval_rate_from_portfolios(const MarketModel& model);

/// Optimal rate over [0, r_GMV] from the slope ratios m_ah/m_gmv, m_tp/m_gmv,
/// m_tp/m_ah, m_gmv/m_ah. Verification route.
double full_interval_rate_from_slopes(const MarketModel& model);

/// MSR portfolio at mcesr_rate, labelled MCESR.
Portfolio mcesr_portfolio(const MarketModel& model, const RateInterval& interval);

/// Scores `grid_points` evenly spaced rates of the interval with the chosen
/// method. Analytic adds the closed-form optimum to the rate list.
CrossEffReport evaluate_cross_efficiency(const MarketModel& model, const RateInterval& interval,
                                         int grid_points, CeMethod method);

}  // namespace mcesr
