#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mcesr/cross_efficiency.h"
#include "mcesr/frontier.h"
#include "mcesr/market_model.h"

namespace mcesr {

enum class HoldingMode {
    Rebalanced,  // weights reset every period
    BuyAndHold,  // positions drift with their own returns
};

std::string_view to_string(HoldingMode mode);
/// "rebalanced", "buyhold" or "buy_and_hold". Throws InvalidInput.
HoldingMode parse_holding_mode(std::string_view text);

struct EquityCurve {
    std::vector<std::string> labels;
    std::vector<double> values;  // value after each period, starting from 1.0
    std::vector<double> gains;   // values - 1, accumulated directly
};

/// Percent change of a unit investment over the first `horizon` periods.
/// Throws HorizonTooLong when horizon exceeds the panel length.
double portfolio_value_change(const VectorXd& weights, const ReturnMatrix& returns, Eigen::Index horizon,
                              HoldingMode mode);

EquityCurve equity_curve(const VectorXd& weights, const ReturnMatrix& returns, HoldingMode mode);

struct StrategyResult {
    std::string strategy;  // GMV | TP | MSR | MCESR
    bool allow_short = true;
    Portfolio portfolio;
    std::vector<Eigen::Index> horizons;
    std::vector<double> percent_change;  // one per horizon
    EquityCurve curve;
};

struct StrategyReport {
    HoldingMode mode = HoldingMode::BuyAndHold;
    std::vector<StrategyResult> strategies;
};

struct StrategyConfig {
    RateInterval interval{0.0, 0.0};
    double msr_rate = 0.0;
    bool allow_short = true;
    std::vector<Eigen::Index> horizons;  // empty: the whole out-of-sample panel
    HoldingMode mode = HoldingMode::BuyAndHold;
    int grid_n = 1000;                   // long-only MCESR grid
};

/// Fits GMV, TP, MSR(msr_rate) and MCESR(interval) on the in-sample panel
/// (long-only variants when shorts are disallowed) and evaluates each on the
/// out-of-sample panel at every horizon.
StrategyReport compare_strategies(const ReturnMatrix& in_sample, const ReturnMatrix& out_sample,
                                  const StrategyConfig& config);

/// strategy,label,rf,horizon,mode,percent_change
std::string format_strategy_report_csv(const StrategyReport& report, int precision = 6);

}  // namespace mcesr
