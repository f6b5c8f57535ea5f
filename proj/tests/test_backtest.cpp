#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "mcesr/backtest.h"
#include "mcesr/error.h"
#include "oracles.h"

using namespace mcesr;

namespace {

ReturnMatrix panel(const MatrixXd& v) {
    std::vector<std::string> names, labels;
    for (Eigen::Index j = 0; j < v.cols(); ++j) names.push_back("A" + std::to_string(j));
    for (Eigen::Index i = 0; i < v.rows(); ++i) labels.push_back(std::to_string(200001 + i));
    return ReturnMatrix(v, names, labels);
}

ReturnMatrix random_panel(std::mt19937_64& rng, int t, int n, double mean = 0.01, double sd = 0.05) {
    std::normal_distribution<double> z(mean, sd);
    MatrixXd v(t, n);
    for (int i = 0; i < t; ++i) {
        for (int j = 0; j < n; ++j) v(i, j) = z(rng);
    }
    return panel(v);
}

}  // namespace

TEST_CASE("portfolio_value_change") {
    SUBCASE("zero returns") {
        const auto r = panel(MatrixXd::Zero(5, 3));
        VectorXd w(3);
        w << 0.2, 0.3, 0.5;
        CHECK(portfolio_value_change(w, r, 5, HoldingMode::Rebalanced) == 0.0);
        CHECK(portfolio_value_change(w, r, 5, HoldingMode::BuyAndHold) == 0.0);
    }
    SUBCASE("single asset up then down") {
        MatrixXd v(2, 1);
        v << 0.1, -0.1;
        const auto r = panel(v);
        const VectorXd w = VectorXd::Ones(1);
        CHECK(portfolio_value_change(w, r, 2, HoldingMode::Rebalanced) == doctest::Approx(-1.0).epsilon(1e-13));
        CHECK(portfolio_value_change(w, r, 2, HoldingMode::BuyAndHold) == doctest::Approx(-1.0).epsilon(1e-13));
        CHECK(portfolio_value_change(w, r, 0, HoldingMode::BuyAndHold) == 0.0);
    }
    SUBCASE("horizon too long") {
        const auto r = panel(MatrixXd::Zero(3, 2));
        try {
            portfolio_value_change(VectorXd::Constant(2, 0.5), r, 4, HoldingMode::Rebalanced);
            FAIL("expected HorizonTooLong");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::HorizonTooLong);
        }
    }
    SUBCASE("matches a direct computation") {
        std::mt19937_64 rng(501);
        for (int trial = 0; trial < 50; ++trial) {
            const int n = 1 + trial % 6;
            const auto r = random_panel(rng, 12, n);
            const VectorXd w = oracle::invested_point(rng, n);
            double rebalanced = 1.0;
            for (int t = 0; t < 12; ++t) rebalanced *= 1.0 + w.dot(r.values().row(t).transpose());
            double held = 0.0;
            for (int j = 0; j < n; ++j) {
                double g = 1.0;
                for (int t = 0; t < 12; ++t) g *= 1.0 + r.values()(t, j);
                held += w(j) * g;
            }
            CHECK(portfolio_value_change(w, r, 12, HoldingMode::Rebalanced) ==
                  doctest::Approx(100.0 * (rebalanced - 1.0)).epsilon(1e-12));
            CHECK(portfolio_value_change(w, r, 12, HoldingMode::BuyAndHold) ==
                  doctest::Approx(100.0 * (held - 1.0)).epsilon(1e-12));
        }
    }
    SUBCASE("modes agree exactly for a single asset") {
        std::mt19937_64 rng(503);
        const auto r = random_panel(rng, 30, 1);
        const VectorXd w = VectorXd::Ones(1);
        for (Eigen::Index h = 0; h <= 30; ++h) {
            CHECK(portfolio_value_change(w, r, h, HoldingMode::Rebalanced) ==
                  portfolio_value_change(w, r, h, HoldingMode::BuyAndHold));
        }
    }
    SUBCASE("limited liability for nonnegative weights") {
        std::mt19937_64 rng(505);
        for (int trial = 0; trial < 50; ++trial) {
            const auto r = random_panel(rng, 24, 4, 0.0, 0.3);
            MatrixXd v = r.values().cwiseMax(-1.0);
            const auto bounded = panel(v);
            const VectorXd w = oracle::simplex_point(rng, 4);
            for (auto mode : {HoldingMode::Rebalanced, HoldingMode::BuyAndHold}) {
                CHECK(portfolio_value_change(w, bounded, 24, mode) >= -100.0);
            }
        }
    }
}

TEST_CASE("equity_curve") {
    MatrixXd v(2, 1);
    v << 0.1, 0.1;
    const auto c = equity_curve(VectorXd::Ones(1), panel(v), HoldingMode::Rebalanced);
    REQUIRE(c.values.size() == 2);
    CHECK(c.values[0] == doctest::Approx(1.1));
    CHECK(c.values[1] == doctest::Approx(1.21));
    CHECK(c.labels == std::vector<std::string>{"200001", "200002"});

    std::mt19937_64 rng(507);
    const auto r = random_panel(rng, 15, 3);
    const VectorXd w = oracle::invested_point(rng, 3);
    for (auto mode : {HoldingMode::Rebalanced, HoldingMode::BuyAndHold}) {
        const auto curve = equity_curve(w, r, mode);
        for (Eigen::Index h = 1; h <= 15; ++h) {
            CHECK(100.0 * (curve.values[static_cast<std::size_t>(h - 1)] - 1.0) ==
                  doctest::Approx(portfolio_value_change(w, r, h, mode)).epsilon(1e-13));
        }
    }
}

TEST_CASE("holding mode names") {
    CHECK(parse_holding_mode("rebalanced") == HoldingMode::Rebalanced);
    CHECK(parse_holding_mode("buyhold") == HoldingMode::BuyAndHold);
    CHECK(parse_holding_mode("buy_and_hold") == HoldingMode::BuyAndHold);
    CHECK(to_string(HoldingMode::Rebalanced) == "rebalanced");
    CHECK_THROWS_AS(parse_holding_mode("weekly"), Error);
}

TEST_CASE("compare_strategies") {
    std::mt19937_64 rng(509);
    const auto in = random_panel(rng, 120, 4, 0.01, 0.04);
    const auto model = estimate_moments(in);
    StrategyConfig config;
    config.interval = RateInterval(0.0, 0.8 * model.gmv_return());
    config.msr_rate = 0.5 * model.gmv_return();
    config.horizons = {3, 6};
    config.grid_n = 50;

    SUBCASE("flat out-of-sample period") {
        const auto out = panel(MatrixXd::Zero(6, 4));
        for (bool allow_short : {true, false}) {
            config.allow_short = allow_short;
            const auto report = compare_strategies(in, out, config);
            REQUIRE(report.strategies.size() == 4);
            for (const auto& s : report.strategies) {
                CHECK(s.allow_short == allow_short);
                CHECK(s.percent_change == std::vector<double>{0.0, 0.0});
            }
        }
    }
    SUBCASE("strategies and their fitted portfolios") {
        const auto out = random_panel(rng, 6, 4);
        config.allow_short = false;
        const auto report = compare_strategies(in, out, config);
        std::vector<std::string> names;
        for (const auto& s : report.strategies) {
            names.push_back(s.strategy);
            CHECK(s.portfolio.weights.minCoeff() >= 0.0);
            CHECK(s.percent_change[1] ==
                  doctest::Approx(portfolio_value_change(s.portfolio.weights, out, 6, config.mode)).epsilon(1e-13));
        }
        CHECK(names == std::vector<std::string>{"GMV", "TP", "MSR", "MCESR"});
        const auto csv = format_strategy_report_csv(report);
        CHECK(csv.rfind("strategy,label,rf,horizon,mode,percent_change\n", 0) == 0);
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
    }
    SUBCASE("horizon beyond the out-of-sample panel") {
        config.horizons = {7};
        CHECK_THROWS_AS(compare_strategies(in, panel(MatrixXd::Zero(6, 4)), config), Error);
    }
}
