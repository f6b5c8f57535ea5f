#include "mcesr/frontier.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mcesr/error.h"

namespace mcesr {

namespace {

void require_upper_branch(const MarketModel& model) {
    if (!(model.c() > 0.0)) {
        throw Error(ErrorCode::NonPositiveGmvReturn,
                    "GMV expected return c/b = " + std::to_string(model.gmv_return()) +
                        " is not positive; the tangency from the origin is undefined");
    }
}

}  // namespace

Portfolio make_portfolio(const MarketModel& model, VectorXd weights, std::string label,
                         std::optional<double> rf) {
    Portfolio p;
    p.expected_return = model.portfolio_return(weights);
    p.risk = std::sqrt(std::max(model.portfolio_variance(weights), 0.0));
    p.weights = std::move(weights);
    p.rf_used = rf;
    p.label = std::move(label);
    return p;
}

double rate_margin(const MarketModel& model) noexcept {
    return 1e-9 * std::max(1.0, std::abs(model.gmv_return()));
}

bool is_admissible_rate(const MarketModel& model, double rf) noexcept {
    return std::isfinite(rf) && rf < model.gmv_return() - rate_margin(model);
}

void require_admissible_rate(const MarketModel& model, double rf) {
    if (!is_admissible_rate(model, rf)) {
        std::ostringstream msg;
        msg.precision(10);
        msg << "risk-free rate " << rf << " must be below the GMV return " << model.gmv_return()
            << " (minus margin " << rate_margin(model) << ")";
        throw Error(ErrorCode::RateTooHigh, msg.str());
    }
}

Portfolio gmv_portfolio(const MarketModel& model) {
    return make_portfolio(model, model.sigma_inv_one() / model.b(), "GMV");
}

Portfolio tangent_portfolio(const MarketModel& model) {
    require_upper_branch(model);
    auto p = msr_portfolio(model, 0.0);
    p.label = "TP";
    return p;
}

Portfolio msr_portfolio(const MarketModel& model, double rf) {
    require_admissible_rate(model, rf);
    const double denominator = model.c() - model.b() * rf;
    VectorXd w = (model.sigma_inv_mu() - rf * model.sigma_inv_one()) / denominator;
    return make_portfolio(model, std::move(w), "MSR", rf);
}

double frontier_risk_at_return(const MarketModel& model, double rho) {
    const double numerator = model.b() * rho * rho - 2.0 * model.c() * rho + model.a();
    return std::sqrt(numerator / model.discriminant());
}

std::pair<FrontierLine, FrontierLine> asymptotes(const MarketModel& model) {
    const double slope = std::sqrt(model.discriminant() / model.b());
    const double apex = model.gmv_return();
    return {FrontierLine{apex, slope}, FrontierLine{apex, -slope}};
}

FrontierLine cml(const MarketModel& model, double rf) {
    const auto m = msr_portfolio(model, rf);
    return FrontierLine{rf, (m.expected_return - rf) / m.risk};
}

Slopes slopes(const MarketModel& model) {
    require_upper_branch(model);
    const double root_b = std::sqrt(model.b());
    return Slopes{std::sqrt(model.a()), std::sqrt(model.discriminant() / model.b()),
                  model.c() / root_b};
}

double sharpe_ratio(const Portfolio& p, double rf) {
    if (!(p.risk > 1e-14)) {
        throw Error(ErrorCode::ZeroRisk, "portfolio '" + p.label + "' has zero risk");
    }
    return (p.expected_return - rf) / p.risk;
}

}  // namespace mcesr
