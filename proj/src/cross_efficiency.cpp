#include "mcesr/cross_efficiency.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mcesr/error.h"
#include "mcesr/kernels.h"

namespace mcesr {

namespace {

/// (c - b r)/sqrt(b): the GMV-slope term, (r_GMV - r)/sigma_GMV.
double gmv_excess(const MarketModel& model, double r) noexcept {
    return (model.c() - model.b() * r) / std::sqrt(model.b());
}

/// S(r) - G(r) > 0, evaluated without cancellation. S^2 - G^2 = (ab - c^2)/b.
double slope_gap(const MarketModel& model, double r) noexcept {
    const double s = max_sharpe(model, r);
    const double g = gmv_excess(model, r);
    if (g <= 0.0) {
        return s - g;
    }
    return (model.discriminant() / model.b()) / (s + g);
}

/// Pieces shared by the integrals and the optimal rate over [r1, r2]:
///   log_ratio = ln((S2 - G2)/(S1 - G1)),  slope_diff = S2 - S1.
struct EndpointTerms {
    double log_ratio;
    double slope_diff;
};

EndpointTerms endpoint_terms(const MarketModel& model, double r1, double r2) noexcept {
    const double width = r2 - r1;
    const double root_b = std::sqrt(model.b());
    const double s1 = max_sharpe(model, r1);
    const double s2 = max_sharpe(model, r2);
    const double d1 = slope_gap(model, r1);
    const double d2 = slope_gap(model, r2);
    // D2 - D1 = width sqrt(b) (D1 + D2)/(S1 + S2), all terms positive
    const double gap_growth = width * root_b * (d1 + d2) / (s1 + s2);
    // S2 - S1 = -width sqrt(b) (G1 + G2)/(S1 + S2)
    const double g_sum = gmv_excess(model, r1) + gmv_excess(model, r2);
    return EndpointTerms{std::log1p(gap_growth / d1), -width * root_b * g_sum / (s1 + s2)};
}

}  // namespace

RateInterval::RateInterval(double r1, double r2) : r1_(r1), r2_(r2) {
    if (!std::isfinite(r1) || !std::isfinite(r2) || r1 < 0.0 || r1 > r2) {
        std::ostringstream msg;
        msg << "rate interval [" << r1 << ", " << r2 << "] must satisfy 0 <= r1 <= r2";
        throw Error(ErrorCode::InvalidInput, msg.str());
    }
}

std::string_view to_string(CeMethod method) {
    switch (method) {
        case CeMethod::Analytic: return "analytic";
        case CeMethod::Quadrature: return "quadrature";
        case CeMethod::Grid: return "grid";
    }
    return "unknown";
}

double max_sharpe(const MarketModel& model, double rf) noexcept {
    return std::sqrt(model.excess_quadratic(rf));
}

void require_valid_interval(const MarketModel& model, const RateInterval& interval) {
    if (interval.r2() > model.gmv_return() + rate_margin(model)) {
        std::ostringstream msg;
        msg.precision(10);
        msg << "interval upper bound " << interval.r2() << " exceeds the GMV return "
            << model.gmv_return();
        throw Error(ErrorCode::RateTooHigh, msg.str());
    }
}

DeaWeights dea_weights(const MarketModel& model, double rf) {
    const auto m = msr_portfolio(model, rf);
    return DeaWeights{1.0 / (m.expected_return - rf), 1.0 / m.risk, rf};
}

double cross_efficiency_from_weights(const DeaWeights& weights, const Portfolio& p) {
    return weights.efficiency(p.risk, p.expected_return);
}

double cross_efficiency_pair(const MarketModel& model, double rf_i, double rf_j) {
    const auto pi = msr_portfolio(model, rf_i);
    const auto pj = msr_portfolio(model, rf_j);
    return ((pi.expected_return - rf_j) / pi.risk) / ((pj.expected_return - rf_j) / pj.risk);
}

RateIntegrals integrals_i1_i2(const MarketModel& model, const RateInterval& interval) {
    const double r1 = interval.r1();
    if (interval.degenerate()) {
        const double s = max_sharpe(model, r1);
        return RateIntegrals{1.0 / s, r1 / s, true};
    }
    const double width = interval.width();
    const double sigma_gmv = model.gmv_risk();
    const auto terms = endpoint_terms(model, r1, interval.r2());
    const double i1 = sigma_gmv * terms.log_ratio / width;
    const double i2 = model.gmv_return() * i1 + sigma_gmv * sigma_gmv * terms.slope_diff / width;
    return RateIntegrals{i1, i2, false};
}

double cross_efficiency_closed_form(const MarketModel& model, double r, const RateIntegrals& integrals) noexcept {
    // r_MSR/sigma_MSR = (a - c r)/S(r) and 1/sigma_MSR = (c - b r)/S(r)
    const double s = max_sharpe(model, r);
    return ((model.a() - model.c() * r) * integrals.i1 - (model.c() - model.b() * r) * integrals.i2) / s;
}

double average_cross_efficiency(const MarketModel& model, double rf_i, const RateInterval& interval) {
    require_admissible_rate(model, rf_i);
    require_valid_interval(model, interval);
    const auto integrals = integrals_i1_i2(model, interval);
    return cross_efficiency_closed_form(model, rf_i, integrals);
}

double average_cross_efficiency_quadrature(const MarketModel& model, double rf_i,
                                           const RateInterval& interval, int nodes) {
    require_valid_interval(model, interval);
    if (nodes < 3 || nodes % 2 == 0) {
        throw Error(ErrorCode::InvalidInput, "Simpson quadrature needs an odd node count >= 3");
    }
    const auto pi = msr_portfolio(model, rf_i);
    auto integrand = [&](double rf) {
        // the peer's own Sharpe ratio, from its portfolio where one exists
        const double peer = is_admissible_rate(model, rf)
                                ? sharpe_ratio(msr_portfolio(model, rf), rf)
                                : max_sharpe(model, rf);
        return ((pi.expected_return - rf) / pi.risk) / peer;
    };
    if (interval.degenerate()) {
        return integrand(interval.r1());
    }
    const int panels = nodes - 1;
    const double h = interval.width() / panels;
    double sum = integrand(interval.r1()) + integrand(interval.r2());
    for (int k = 1; k < panels; ++k) {
        sum += (k % 2 == 1 ? 4.0 : 2.0) * integrand(interval.r1() + k * h);
    }
    return sum * h / 3.0 / interval.width();
}

double ce_derivative(const MarketModel& model, double r, const RateInterval& interval) {
    require_admissible_rate(model, r);
    require_valid_interval(model, interval);
    const auto integrals = integrals_i1_i2(model, interval);
    const double s = max_sharpe(model, r);
    return model.discriminant() * (integrals.i2 - r * integrals.i1) / (s * s * s);
}

double mcesr_rate(const MarketModel& model, const RateInterval& interval) {
    require_valid_interval(model, interval);
    if (interval.degenerate()) {
        return interval.r1();
    }
    const auto terms = endpoint_terms(model, interval.r1(), interval.r2());
    const double rate = model.gmv_return() + model.gmv_risk() * terms.slope_diff / terms.log_ratio;
    // roundoff can only push the optimum onto an endpoint, never past it
    return std::clamp(rate, interval.r1(), interval.r2());
}

double mcesr_rate_full_interval(const MarketModel& model) {
    if (!(model.c() > 0.0)) {
        throw Error(ErrorCode::NonPositiveGmvReturn, "GMV expected return is not positive");
    }
    // ratio = r_TP / r_GMV = ab / c^2, so ratio - 1 = (ab - c^2)/c^2
    const double ratio_minus_one = model.discriminant() / (model.c() * model.c());
    if (!(ratio_minus_one > 1e-12)) {
        throw Error(ErrorCode::RatioTooSmall, "TP and GMV returns coincide; the frontier is degenerate");
    }
    const double root_ratio = std::sqrt(1.0 + ratio_minus_one);
    const double root_ratio_minus_one = std::sqrt(ratio_minus_one);
    // sqrt(ratio) - sqrt(ratio - 1) and sqrt(ratio) - 1 without cancellation
    const double numerator = 1.0 / (root_ratio + root_ratio_minus_one);
    const double root_ratio_less_one = ratio_minus_one / (root_ratio + 1.0);
    const double denominator = std::log(root_ratio_minus_one) - std::log(root_ratio_less_one);
    return model.gmv_return() * (1.0 - numerator / denominator);
}

double full_interval_rate_from_portfolios(const MarketModel& model) {
    const auto gmv = gmv_portfolio(model);
    const auto tp = tangent_portfolio(model);
    const double asymptote_slope = asymptotes(model).first.slope;
    const double tp_slope = tp.expected_return / tp.risk;
    const double gmv_slope = gmv.expected_return / gmv.risk;
    return gmv.expected_return +
           gmv.risk * (asymptote_slope - tp_slope) /
               (std::log(asymptote_slope) - std::log(tp_slope - gmv_slope));
}

double full_interval_rate_from_slopes(const MarketModel& model) {
    const auto m = slopes(model);
    return model.gmv_return() *
           (1.0 - (m.m_ah / m.m_gmv - m.m_tp / m.m_gmv) / std::log(m.m_tp / m.m_ah - m.m_gmv / m.m_ah));
}

Portfolio mcesr_portfolio(const MarketModel& model, const RateInterval& interval) {
    auto p = msr_portfolio(model, mcesr_rate(model, interval));
    p.label = "MCESR";
    return p;
}

CrossEffReport evaluate_cross_efficiency(const MarketModel& model, const RateInterval& interval,
                                         int grid_points, CeMethod method) {
    require_valid_interval(model, interval);
    if (grid_points < 1) {
        throw Error(ErrorCode::InvalidInput, "grid needs at least one rate");
    }
    CrossEffReport report;
    report.method = method;
    report.rates = kernels::linspace(interval.r1(), interval.r2(), grid_points);
    if (method == CeMethod::Analytic) {
        const double best = mcesr_rate(model, interval);
        auto pos = std::lower_bound(report.rates.begin(), report.rates.end(), best);
        if (pos == report.rates.end() || *pos != best) {
            report.rates.insert(pos, best);
        }
    }
    // the apex itself has no tangency portfolio
    while (!report.rates.empty() && !is_admissible_rate(model, report.rates.back())) {
        report.rates.pop_back();
    }
    if (report.rates.empty()) {
        throw Error(ErrorCode::RateTooHigh, "no admissible rate in the interval");
    }

    report.scores = method == CeMethod::Quadrature
                        ? kernels::quadrature_cross_efficiency_grid(model, interval, report.rates)
                        : kernels::average_cross_efficiency_grid(model, interval, report.rates);

    if (method == CeMethod::Analytic) {
        report.best_rate = mcesr_rate(model, interval);
    } else {
        const auto best = std::max_element(report.scores.begin(), report.scores.end());
        report.best_rate = report.rates[static_cast<std::size_t>(best - report.scores.begin())];
    }
    report.best_portfolio = msr_portfolio(model, report.best_rate);
    report.best_portfolio.label = "MCESR";
    return report;
}

}  // namespace mcesr
