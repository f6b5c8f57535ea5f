#include "mcesr/qp_no_short.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mcesr/error.h"
#include "mcesr/kernels.h"

namespace mcesr {

namespace {

std::vector<Eigen::Index> indices_where(const std::vector<bool>& mask, bool value) {
    std::vector<Eigen::Index> out;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i] == value) {
            out.push_back(static_cast<Eigen::Index>(i));
        }
    }
    return out;
}

void require_some_excess(const MarketModel& model, double rf) {
    if (!(model.mu().maxCoeff() > rf)) {
        std::ostringstream msg;
        msg.precision(10);
        msg << "no asset has expected return above rf = " << rf;
        throw Error(ErrorCode::Infeasible, msg.str());
    }
}

}  // namespace

QpSolution qp_solve(const MatrixXd& sigma, const VectorXd& d) {
    const auto n = d.size();
    if (n < 1 || sigma.rows() != n || sigma.cols() != n) {
        throw Error(ErrorCode::InvalidInput, "QP dimensions disagree");
    }
    Eigen::Index entry = 0;
    const double d_max = d.maxCoeff(&entry);
    if (!(d_max > 0.0)) {
        throw Error(ErrorCode::Infeasible, "x'd = 1 with x >= 0 needs some d_i > 0");
    }

    VectorXd x = VectorXd::Zero(n);
    x(entry) = 1.0 / d_max;
    std::vector<bool> active(static_cast<std::size_t>(n), true);
    active[static_cast<std::size_t>(entry)] = false;

    QpSolution solution;
    const int max_iterations = static_cast<int>(std::max<Eigen::Index>(10 * n * n, 10));
    Eigen::Index just_released = -1;

    for (int iteration = 1; iteration <= max_iterations; ++iteration) {
        const auto free = indices_where(active, false);
        const auto m = static_cast<Eigen::Index>(free.size());
        MatrixXd sigma_ff(m, m);
        VectorXd d_f(m);
        for (Eigen::Index i = 0; i < m; ++i) {
            d_f(i) = d(free[i]);
            for (Eigen::Index j = 0; j < m; ++j) {
                sigma_ff(i, j) = sigma(free[i], free[j]);
            }
        }
        Eigen::LLT<MatrixXd> llt(sigma_ff);
        if (llt.info() != Eigen::Success) {
            throw Error(ErrorCode::NotPositiveDefinite, "QP Hessian is not positive definite");
        }
        const VectorXd y = llt.solve(d_f);
        const double q = d_f.dot(y);
        const VectorXd target = y / q;

        // ratio test along target - x
        double step = 1.0;
        Eigen::Index blocking = -1;
        for (Eigen::Index i = 0; i < m; ++i) {
            const double xi = x(free[i]);
            const double p = target(i) - xi;
            if (p < 0.0) {
                const double ratio = xi / -p;
                if (ratio < step) {
                    step = ratio;
                    blocking = free[i];
                }
            }
        }

        solution.iterations = iteration;
        if (blocking >= 0 && !(blocking == just_released && step == 0.0)) {
            for (Eigen::Index i = 0; i < m; ++i) {
                x(free[i]) += step * (target(i) - x(free[i]));
            }
            x(blocking) = 0.0;
            active[static_cast<std::size_t>(blocking)] = true;
            just_released = -1;
            solution.objective_history.push_back(x.dot(sigma * x));
            continue;
        }
        if (blocking < 0) {
            for (Eigen::Index i = 0; i < m; ++i) {
                x(free[i]) = target(i);
            }
        }
        if (blocking >= 0) {
            // a variable freed last step wants straight back to its bound: optimal up to roundoff
            active[static_cast<std::size_t>(blocking)] = true;
        }
        solution.objective_history.push_back(x.dot(sigma * x));

        // multipliers of the pinned bounds; free the smallest violating index
        const double lambda = 2.0 / q;
        const VectorXd gradient = 2.0 * (sigma * x) - lambda * d;
        const double scale = std::max({(2.0 * (sigma * x)).cwiseAbs().maxCoeff(),
                                       (lambda * d).cwiseAbs().maxCoeff(), 1e-300});
        Eigen::Index release = -1;
        if (blocking < 0) {
            for (Eigen::Index i = 0; i < n; ++i) {
                if (active[static_cast<std::size_t>(i)] && gradient(i) < -1e-12 * scale) {
                    release = i;
                    break;
                }
            }
        }
        if (release < 0) {
            solution.x = x;
            solution.multiplier = lambda;
            solution.objective = x.dot(sigma * x);
            solution.active_set = indices_where(active, true);
            return solution;
        }
        active[static_cast<std::size_t>(release)] = false;
        just_released = release;
    }
    throw Error(ErrorCode::MaxIterations,
                "active-set method did not converge in " + std::to_string(max_iterations) + " iterations");
}

KktResiduals kkt_residuals(const MatrixXd& sigma, const VectorXd& d, const QpSolution& solution) {
    KktResiduals r;
    const VectorXd gradient = 2.0 * (sigma * solution.x) - solution.multiplier * d;
    std::vector<bool> active(static_cast<std::size_t>(d.size()), false);
    for (auto i : solution.active_set) {
        active[static_cast<std::size_t>(i)] = true;
    }
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        if (active[static_cast<std::size_t>(i)]) {
            r.dual_violation = std::max(r.dual_violation, -gradient(i));
        } else {
            r.stationarity = std::max(r.stationarity, std::abs(gradient(i)));
        }
        r.primal_violation = std::max(r.primal_violation, -solution.x(i));
    }
    r.equality = std::abs(solution.x.dot(d) - 1.0);
    return r;
}

Portfolio msr_no_short(const MarketModel& model, double rf) {
    require_some_excess(model, rf);
    const VectorXd excess = model.mu().array() - rf;
    const auto solution = qp_solve(model.sigma(), excess);
    return make_portfolio(model, solution.x / solution.x.sum(), "MSR", rf);
}

Portfolio gmv_no_short(const MarketModel& model) {
    const auto solution = qp_solve(model.sigma(), VectorXd::Ones(model.assets()));
    // x'1 = 1 already; renormalize away the last ulp
    return make_portfolio(model, solution.x / solution.x.sum(), "GMV");
}

Portfolio tangent_no_short(const MarketModel& model) {
    auto p = msr_no_short(model, 0.0);
    p.label = "TP";
    return p;
}

std::vector<double> discrete_cross_efficiency(std::span<const Portfolio> portfolios,
                                              std::span<const double> rates) {
    if (portfolios.size() != rates.size() || portfolios.empty()) {
        throw Error(ErrorCode::InvalidInput, "need one rate per portfolio");
    }
    std::vector<double> returns(portfolios.size());
    std::vector<double> risks(portfolios.size());
    for (std::size_t k = 0; k < portfolios.size(); ++k) {
        returns[k] = portfolios[k].expected_return;
        risks[k] = portfolios[k].risk;
    }
    return kernels::discrete_cross_efficiency(returns, risks, rates);
}

std::vector<double> no_short_grid_rates(const RateInterval& interval, int n) {
    if (n < 1) {
        throw Error(ErrorCode::InvalidInput, "grid needs n >= 1 parts");
    }
    std::vector<double> rates;
    rates.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 1; i <= n + 1; ++i) {
        rates.push_back(interval.r1() * (n - i + 1) / n + interval.r2() * (i - 1) / n);
    }
    return rates;
}

GridResult mcesr_no_short(const MarketModel& model, const RateInterval& interval, int n) {
    require_some_excess(model, interval.r2());
    GridResult result;
    result.rates = no_short_grid_rates(interval, n);
    result.portfolios = kernels::solve_no_short_grid(model, result.rates);
    result.ce_scores = discrete_cross_efficiency(result.portfolios, result.rates);
    // first maximum = smallest rate among ties
    result.best_index = static_cast<std::size_t>(
        std::max_element(result.ce_scores.begin(), result.ce_scores.end()) - result.ce_scores.begin());
    for (auto& p : result.portfolios) {
        p.label = "MSR";
    }
    result.portfolios[result.best_index].label = "MCESR";
    return result;
}

}  // namespace mcesr
