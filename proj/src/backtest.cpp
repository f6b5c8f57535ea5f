#include "mcesr/backtest.h"

#include <cmath>
#include <cstdio>

#include "mcesr/error.h"
#include "mcesr/qp_no_short.h"

namespace mcesr {

namespace {

void require_compatible(const VectorXd& weights, const ReturnMatrix& returns) {
    if (weights.size() != returns.assets()) {
        throw Error(ErrorCode::InvalidInput, "weight count does not match the asset count");
    }
}

std::string format_number(double value, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
    return buf;
}

}  // namespace

std::string_view to_string(HoldingMode mode) {
    return mode == HoldingMode::Rebalanced ? "rebalanced" : "buyhold";
}

HoldingMode parse_holding_mode(std::string_view text) {
    if (text == "rebalanced") {
        return HoldingMode::Rebalanced;
    }
    if (text == "buyhold" || text == "buy_and_hold") {
        return HoldingMode::BuyAndHold;
    }
    throw Error(ErrorCode::InvalidInput, "unknown holding mode '" + std::string(text) + "'");
}

EquityCurve equity_curve(const VectorXd& weights, const ReturnMatrix& returns, HoldingMode mode) {
    require_compatible(weights, returns);
    const auto periods = static_cast<std::size_t>(returns.periods());
    EquityCurve curve;
    curve.labels = returns.period_labels();
    curve.values.reserve(periods);
    curve.gains.reserve(periods);
    if (mode == HoldingMode::Rebalanced) {
        double gain = 0.0;
        for (Eigen::Index t = 0; t < returns.periods(); ++t) {
            const double r = returns.values().row(t).dot(weights);
            gain += r + gain * r;
            curve.gains.push_back(gain);
        }
    } else {
        VectorXd asset_gain = VectorXd::Zero(weights.size());
        for (Eigen::Index t = 0; t < returns.periods(); ++t) {
            const auto r = returns.values().row(t).transpose().array();
            asset_gain.array() += r + asset_gain.array() * r;
            curve.gains.push_back(weights.dot(asset_gain));
        }
    }
    for (double g : curve.gains) {
        curve.values.push_back(1.0 + g);
    }
    return curve;
}

double portfolio_value_change(const VectorXd& weights, const ReturnMatrix& returns, Eigen::Index horizon,
                              HoldingMode mode) {
    if (horizon < 0 || horizon > returns.periods()) {
        throw Error(ErrorCode::HorizonTooLong, "horizon " + std::to_string(horizon) + " exceeds the " +
                                                   std::to_string(returns.periods()) + " available periods");
    }
    if (horizon == 0) {
        require_compatible(weights, returns);
        return 0.0;
    }
    const auto curve = equity_curve(weights, returns.rows(0, horizon), mode);
    return 100.0 * curve.gains.back();
}

StrategyReport compare_strategies(const ReturnMatrix& in_sample, const ReturnMatrix& out_sample,
                                  const StrategyConfig& config) {
    if (in_sample.asset_names() != out_sample.asset_names()) {
        throw Error(ErrorCode::InvalidInput, "in-sample and out-of-sample panels hold different assets");
    }
    std::vector<Eigen::Index> horizons = config.horizons;
    if (horizons.empty()) {
        horizons.push_back(out_sample.periods());
    }
    for (auto h : horizons) {
        if (h > out_sample.periods() || h < 0) {
            throw Error(ErrorCode::HorizonTooLong, "horizon " + std::to_string(h) + " exceeds the " +
                                                       std::to_string(out_sample.periods()) +
                                                       " out-of-sample periods");
        }
    }

    const auto model = estimate_moments(in_sample);
    std::vector<Portfolio> fitted;
    if (config.allow_short) {
        fitted.push_back(gmv_portfolio(model));
        fitted.push_back(tangent_portfolio(model));
        fitted.push_back(msr_portfolio(model, config.msr_rate));
        fitted.push_back(mcesr_portfolio(model, config.interval));
    } else {
        fitted.push_back(gmv_no_short(model));
        fitted.push_back(tangent_no_short(model));
        fitted.push_back(msr_no_short(model, config.msr_rate));
        fitted.push_back(mcesr_no_short(model, config.interval, config.grid_n).best());
    }

    StrategyReport report;
    report.mode = config.mode;
    for (auto& p : fitted) {
        StrategyResult result;
        result.strategy = p.label;
        result.allow_short = config.allow_short;
        result.horizons = horizons;
        result.curve = equity_curve(p.weights, out_sample, config.mode);
        for (auto h : horizons) {
            // the curve already holds every prefix
            result.percent_change.push_back(
                h == 0 ? 0.0 : 100.0 * result.curve.gains[static_cast<std::size_t>(h - 1)]);
        }
        result.portfolio = std::move(p);
        report.strategies.push_back(std::move(result));
    }
    return report;
}

std::string format_strategy_report_csv(const StrategyReport& report, int precision) {
    std::string out = "strategy,label,rf,horizon,mode,percent_change\n";
    for (const auto& s : report.strategies) {
        const auto rf = s.portfolio.rf_used ? format_number(*s.portfolio.rf_used, precision) : std::string();
        for (std::size_t k = 0; k < s.horizons.size(); ++k) {
            out += s.strategy + ',' + (s.allow_short ? "short" : "no_short") + ',' + rf + ',' +
                   std::to_string(s.horizons[k]) + ',' + std::string(to_string(report.mode)) + ',' +
                   format_number(s.percent_change[k], precision) + '\n';
        }
    }
    return out;
}

}  // namespace mcesr
