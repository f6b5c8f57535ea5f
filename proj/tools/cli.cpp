#include "cli.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcesr/backtest.h"
#include "mcesr/cross_efficiency.h"
#include "mcesr/data.h"
#include "mcesr/error.h"
#include "mcesr/frontier.h"
#include "mcesr/market_model.h"
#include "mcesr/qp_no_short.h"

namespace mcesr::cli {

namespace {

using json = nlohmann::ordered_json;

std::string num(double value, int precision) {
    if (value == 0.0) {
        value = 0.0;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
    return buf;
}

double rounded(double value, int precision) {
    return std::strtod(num(value, precision).c_str(), nullptr);
}

json json_num(double value, int precision) {
    return rounded(value, precision);
}

std::vector<std::string> split_list(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) {
            parts.push_back(item);
        }
    }
    return parts;
}

double parse_number(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty() || !std::isfinite(value)) {
        throw Error(ErrorCode::InvalidInput, what + ": '" + text + "' is not a number");
    }
    return value;
}

std::pair<double, double> parse_interval(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw Error(ErrorCode::InvalidInput, "--interval expects R1:R2, got '" + text + "'");
    }
    return {parse_number(text.substr(0, colon), "--interval"), parse_number(text.substr(colon + 1), "--interval")};
}

/// Left-aligned first column, right-aligned others.
std::string format_table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& row : rows) {
        width.resize(std::max(width.size(), row.size()), 0);
        for (std::size_t j = 0; j < row.size(); ++j) {
            width[j] = std::max(width[j], row[j].size());
        }
    }
    std::string out;
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t j = 0; j < row.size(); ++j) {
            const std::string pad(width[j] - row[j].size(), ' ');
            if (j == 0) {
                line += row[j] + pad;
            } else {
                line += "  " + pad + row[j];
            }
        }
        line.erase(line.find_last_not_of(' ') + 1);
        out += line + '\n';
    }
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw Error(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
    }
    file << content;
    if (!file) {
        throw Error(ErrorCode::Io, "failed writing '" + path.string() + "'");
    }
}

std::filesystem::path prepare_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw Error(ErrorCode::Io, "cannot create directory '" + dir.string() + "': " + ec.message());
    }
    return dir;
}

std::string extension(OutputFormat format) {
    switch (format) {
        case OutputFormat::Csv: return ".csv";
        case OutputFormat::Json: return ".json";
        case OutputFormat::Table: break;
    }
    return ".txt";
}

void emit(const RunConfig& cfg, const std::string& command, const std::string& text, std::ostream& out) {
    out << text;
    if (cfg.out_dir) {
        write_file(prepare_dir(*cfg.out_dir) / (command + extension(cfg.format)), text);
    }
}

ReturnMatrix load_panel(const RunConfig& cfg) {
    auto panel = [&] {
        switch (cfg.kind) {
            case InputKind::French10: return load_french_10industry(cfg.input, cfg.percent);
            case InputKind::PricesCsv: return load_prices_csv(cfg.input);
            case InputKind::ReturnsCsv: break;
        }
        return load_returns_csv(cfg.input);
    }();
    if (cfg.percent && cfg.kind != InputKind::French10) {
        panel = panel.scaled(100.0);
    }
    if (!cfg.from.empty() || !cfg.to.empty()) {
        const auto& labels = panel.period_labels();
        panel = slice_periods(panel, cfg.from.empty() ? labels.front() : cfg.from,
                              cfg.to.empty() ? labels.back() : cfg.to);
    }
    return panel;
}

/// Estimation panel: the in-sample side when a split is given.
ReturnMatrix estimation_panel(const RunConfig& cfg, const ReturnMatrix& panel) {
    if (cfg.split.empty()) {
        return panel;
    }
    return split_periods(panel, cfg.split).in_sample;
}

RateInterval interval_for(const RunConfig& cfg, const MarketModel& model) {
    if (cfg.interval) {
        return RateInterval(cfg.interval->first, cfg.interval->second);
    }
    return RateInterval(0.0, std::max(0.0, model.gmv_return()));
}

double msr_rate_for(const RunConfig& cfg, const MarketModel& model) {
    return cfg.msr_rate ? *cfg.msr_rate : 0.5 * model.gmv_return();
}

CeMethod method_for(const RunConfig& cfg) {
    if (cfg.method == "quadrature") {
        return CeMethod::Quadrature;
    }
    if (cfg.method == "grid") {
        return CeMethod::Grid;
    }
    return CeMethod::Analytic;
}

Portfolio fit_portfolio(const std::string& which, const MarketModel& model, const RunConfig& cfg, bool allow_short) {
    if (which == "gmv") {
        return allow_short ? gmv_portfolio(model) : gmv_no_short(model);
    }
    if (which == "tp") {
        return allow_short ? tangent_portfolio(model) : tangent_no_short(model);
    }
    if (which == "msr") {
        const double rf = msr_rate_for(cfg, model);
        return allow_short ? msr_portfolio(model, rf) : msr_no_short(model, rf);
    }
    const auto interval = interval_for(cfg, model);
    if (!allow_short) {
        return mcesr_no_short(model, interval, cfg.grid).best();
    }
    const auto method = method_for(cfg);
    if (method == CeMethod::Analytic) {
        return mcesr_portfolio(model, interval);
    }
    return evaluate_cross_efficiency(model, interval, cfg.grid + 1, method).best_portfolio;
}

double reported_sharpe(const Portfolio& p) {
    return sharpe_ratio(p, p.rf_used.value_or(0.0));
}

// ---------------------------------------------------------------- stats

struct StatsBlock {
    std::string name;
    ReturnMatrix panel;
};

std::string stats_output(const RunConfig& cfg, const std::vector<StatsBlock>& blocks) {
    const int p = cfg.precision;
    if (cfg.format == OutputFormat::Json) {
        json doc = json::object();
        for (const auto& block : blocks) {
            json assets = json::array();
            for (const auto& s : descriptive_stats(block.panel)) {
                assets.push_back({{"name", s.name},
                                  {"return", json_num(s.mean, p)},
                                  {"risk", json_num(s.risk, p)},
                                  {"minimum", json_num(s.minimum, p)},
                                  {"maximum", json_num(s.maximum, p)}});
            }
            doc[block.name] = {{"first", block.panel.period_labels().front()},
                               {"last", block.panel.period_labels().back()},
                               {"observations", block.panel.periods()},
                               {"assets", assets}};
        }
        return doc.dump(2) + '\n';
    }
    if (cfg.format == OutputFormat::Csv) {
        std::string out = "period,asset,return,risk,minimum,maximum,observations\n";
        for (const auto& block : blocks) {
            for (const auto& s : descriptive_stats(block.panel)) {
                out += block.name + ',' + s.name + ',' + num(s.mean, p) + ',' + num(s.risk, p) + ',' +
                       num(s.minimum, p) + ',' + num(s.maximum, p) + ',' + std::to_string(block.panel.periods()) +
                       '\n';
            }
        }
        return out;
    }
    std::string out;
    for (const auto& block : blocks) {
        if (!out.empty()) {
            out += '\n';
        }
        out += block.name + ": " + block.panel.period_labels().front() + " to " + block.panel.period_labels().back() +
               " (" + std::to_string(block.panel.periods()) + " observations)\n";
        const auto stats = descriptive_stats(block.panel);
        std::vector<std::vector<std::string>> rows(5);
        rows[0].push_back("");
        rows[1].push_back("Return");
        rows[2].push_back("Risk");
        rows[3].push_back("Minimum");
        rows[4].push_back("Maximum");
        for (const auto& s : stats) {
            rows[0].push_back(s.name);
            rows[1].push_back(num(s.mean, p));
            rows[2].push_back(num(s.risk, p));
            rows[3].push_back(num(s.minimum, p));
            rows[4].push_back(num(s.maximum, p));
        }
        out += format_table(rows);
    }
    return out;
}

int cmd_stats(const RunConfig& cfg, std::ostream& out) {
    const auto panel = load_panel(cfg);
    std::vector<StatsBlock> blocks{{"total", panel}};
    if (!cfg.split.empty()) {
        auto parts = split_periods(panel, cfg.split);
        blocks.push_back({"in_sample", std::move(parts.in_sample)});
        blocks.push_back({"out_sample", std::move(parts.out_sample)});
    }
    emit(cfg, "stats", stats_output(cfg, blocks), out);
    return 0;
}

// ---------------------------------------------------------------- portfolio

std::string portfolio_output(const RunConfig& cfg, const Portfolio& pf, const std::vector<std::string>& assets) {
    const int p = cfg.precision;
    const double sharpe = reported_sharpe(pf);
    if (cfg.format == OutputFormat::Json) {
        json weights = json::object();
        for (std::size_t i = 0; i < assets.size(); ++i) {
            weights[assets[i]] = json_num(pf.weights(static_cast<Eigen::Index>(i)), p);
        }
        json doc = {{"label", pf.label},
                    {"rf", pf.rf_used ? json_num(*pf.rf_used, p) : json(nullptr)},
                    {"weights", weights},
                    {"expected_return", json_num(pf.expected_return, p)},
                    {"risk", json_num(pf.risk, p)},
                    {"sharpe", json_num(sharpe, p)}};
        return doc.dump(2) + '\n';
    }
    if (cfg.format == OutputFormat::Csv) {
        std::string header = "label,rf,expected_return,risk,sharpe";
        std::string row = pf.label + ',' + (pf.rf_used ? num(*pf.rf_used, p) : "") + ',' +
                          num(pf.expected_return, p) + ',' + num(pf.risk, p) + ',' + num(sharpe, p);
        for (std::size_t i = 0; i < assets.size(); ++i) {
            header += ',' + assets[i];
            row += ',' + num(pf.weights(static_cast<Eigen::Index>(i)), p);
        }
        return header + '\n' + row + '\n';
    }
    std::vector<std::vector<std::string>> rows{
        {"label", pf.label},
        {"rf", pf.rf_used ? num(*pf.rf_used, p) : "-"},
        {"expected_return", num(pf.expected_return, p)},
        {"risk", num(pf.risk, p)},
        {"sharpe", num(sharpe, p)},
    };
    for (std::size_t i = 0; i < assets.size(); ++i) {
        rows.push_back({"w[" + assets[i] + "]", num(pf.weights(static_cast<Eigen::Index>(i)), p)});
    }
    return format_table(rows);
}

int cmd_portfolio(const RunConfig& cfg, const std::string& which, std::ostream& out) {
    const auto panel = estimation_panel(cfg, load_panel(cfg));
    const auto model = estimate_moments(panel);
    const auto pf = fit_portfolio(which, model, cfg, cfg.allow_short);
    emit(cfg, "portfolio_" + which, portfolio_output(cfg, pf, panel.asset_names()), out);
    return 0;
}

// ---------------------------------------------------------------- backtest

std::vector<Eigen::Index> resolve_horizons(const RunConfig& cfg, const ReturnMatrix& out_sample) {
    std::vector<Eigen::Index> horizons;
    const auto& labels = out_sample.period_labels();
    for (const auto& token : cfg.horizons) {
        const auto hit = std::find(labels.begin(), labels.end(), token);
        if (hit != labels.end()) {
            horizons.push_back(static_cast<Eigen::Index>(hit - labels.begin()) + 1);
            continue;
        }
        const double value = parse_number(token, "--horizons");
        if (value < 0.0 || value != std::floor(value)) {
            throw Error(ErrorCode::InvalidInput,
                        "--horizons: '" + token + "' is neither a period count nor an out-of-sample date");
        }
        horizons.push_back(static_cast<Eigen::Index>(value));
    }
    return horizons;
}

std::vector<bool> regimes(const RunConfig& cfg) {
    if (cfg.both_regimes) {
        return {true, false};
    }
    return {cfg.allow_short};
}

std::vector<StrategyReport> run_backtests(const RunConfig& cfg, const PeriodSplit& parts) {
    const auto model = estimate_moments(parts.in_sample);
    StrategyConfig sc;
    sc.interval = interval_for(cfg, model);
    sc.msr_rate = msr_rate_for(cfg, model);
    sc.horizons = resolve_horizons(cfg, parts.out_sample);
    sc.mode = parse_holding_mode(cfg.mode);
    sc.grid_n = cfg.grid;
    std::vector<StrategyReport> reports;
    for (bool allow_short : regimes(cfg)) {
        sc.allow_short = allow_short;
        reports.push_back(compare_strategies(parts.in_sample, parts.out_sample, sc));
    }
    return reports;
}

std::string backtest_output(const RunConfig& cfg, const std::vector<StrategyReport>& reports) {
    const int p = cfg.precision;
    if (cfg.format == OutputFormat::Csv) {
        std::string out;
        for (const auto& report : reports) {
            auto text = format_strategy_report_csv(report, p);
            if (!out.empty()) {
                text.erase(0, text.find('\n') + 1);
            }
            out += text;
        }
        return out;
    }
    if (cfg.format == OutputFormat::Json) {
        json rows = json::array();
        for (const auto& report : reports) {
            for (const auto& s : report.strategies) {
                for (std::size_t k = 0; k < s.horizons.size(); ++k) {
                    rows.push_back(
                        {{"strategy", s.strategy},
                         {"label", s.allow_short ? "short" : "no_short"},
                         {"rf", s.portfolio.rf_used ? json_num(*s.portfolio.rf_used, p) : json(nullptr)},
                         {"horizon", s.horizons[k]},
                         {"mode", std::string(to_string(report.mode))},
                         {"percent_change", json_num(s.percent_change[k], p)}});
                }
            }
        }
        return rows.dump(2) + '\n';
    }
    std::vector<std::vector<std::string>> rows(1);
    rows[0].push_back("strategy");
    for (const auto& report : reports) {
        const auto& first = report.strategies.front();
        for (auto h : first.horizons) {
            rows[0].push_back(std::string(first.allow_short ? "short" : "no_short") + " h=" + std::to_string(h));
        }
    }
    const std::size_t strategies = reports.front().strategies.size();
    for (std::size_t i = 0; i < strategies; ++i) {
        std::vector<std::string> row{reports.front().strategies[i].strategy};
        for (const auto& report : reports) {
            for (double v : report.strategies[i].percent_change) {
                row.push_back(num(v, p) + "%");
            }
        }
        rows.push_back(std::move(row));
    }
    return "mode: " + std::string(to_string(reports.front().mode)) + "\n" + format_table(rows);
}

int cmd_backtest(const RunConfig& cfg, std::ostream& out) {
    if (cfg.split.empty()) {
        throw Error(ErrorCode::InvalidInput, "backtest needs --split to separate estimation and test periods");
    }
    const auto parts = split_periods(load_panel(cfg), cfg.split);
    emit(cfg, "backtest", backtest_output(cfg, run_backtests(cfg, parts)), out);
    return 0;
}

// ---------------------------------------------------------------- plotdata

/// Uniform draw in (0, 1) from the raw engine output, identical on every platform.
double unit_draw(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

std::string cloud_csv(const MarketModel& model, int precision) {
    const auto n = model.assets();
    std::mt19937_64 rng(20130101);
    std::string out = "sigma,r\n";
    for (int k = 0; k < 2000; ++k) {
        VectorXd w(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            w(i) = -std::log(unit_draw(rng));
        }
        w /= w.sum();
        out += num(std::sqrt(w.dot(model.sigma() * w)), precision) + ',' + num(w.dot(model.mu()), precision) + '\n';
    }
    return out;
}

int cmd_plotdata(const RunConfig& cfg, std::ostream& out) {
    const int p = cfg.precision;
    const auto panel = load_panel(cfg);
    const auto fit = estimation_panel(cfg, panel);
    const auto model = estimate_moments(fit);
    const bool allow_short = cfg.allow_short;
    const auto interval = interval_for(cfg, model);

    std::vector<Portfolio> marked;
    for (const std::string which : {"gmv", "tp", "msr", "mcesr"}) {
        marked.push_back(fit_portfolio(which, model, cfg, allow_short));
    }

    // frontier: the 400-point return grid plus the exact marked returns as vertices
    const double half_width = 3.0 * model.gmv_risk() * asymptotes(model).first.slope;
    std::vector<double> returns;
    for (int k = 0; k < 400; ++k) {
        returns.push_back(model.gmv_return() - half_width + 2.0 * half_width * k / 399.0);
    }
    for (const auto& pf : marked) {
        if (allow_short) {
            returns.push_back(pf.expected_return);
        }
    }
    returns.push_back(model.gmv_return());
    std::sort(returns.begin(), returns.end());
    returns.erase(std::unique(returns.begin(), returns.end()), returns.end());
    std::string frontier = "sigma,r\n";
    double sigma_max = 0.0;
    for (double r : returns) {
        const double s = frontier_risk_at_return(model, r);
        sigma_max = std::max(sigma_max, s);
        frontier += num(s, p) + ',' + num(r, p) + '\n';
    }

    std::string lines = "x0,y0,x1,y1,label\n";
    const auto line_row = [&](double intercept, double slope, const std::string& label) {
        lines += "0," + num(intercept, p) + ',' + num(sigma_max, p) + ',' + num(intercept + slope * sigma_max, p) +
                 ',' + label + '\n';
    };
    const auto [upper, lower] = asymptotes(model);
    line_row(upper.intercept, upper.slope, "asymptote_upper");
    line_row(lower.intercept, lower.slope, "asymptote_lower");
    for (const auto& pf : marked) {
        if (pf.rf_used) {
            line_row(*pf.rf_used, (pf.expected_return - *pf.rf_used) / pf.risk, "cml_" + pf.label);
        }
    }

    std::string points = "sigma,r,label\n";
    for (const auto& pf : marked) {
        points += num(pf.risk, p) + ',' + num(pf.expected_return, p) + ',' + pf.label + '\n';
    }
    for (Eigen::Index i = 0; i < model.assets(); ++i) {
        points += num(std::sqrt(model.sigma()(i, i)), p) + ',' + num(model.mu()(i), p) + ',' +
                  fit.asset_names()[static_cast<std::size_t>(i)] + '\n';
    }

    std::string tangents = "rf,sigma,r,ce\n";
    if (allow_short) {
        const auto report = evaluate_cross_efficiency(model, interval, cfg.grid + 1, CeMethod::Grid);
        for (std::size_t k = 0; k < report.rates.size(); ++k) {
            const auto pf = msr_portfolio(model, report.rates[k]);
            tangents += num(report.rates[k], p) + ',' + num(pf.risk, p) + ',' + num(pf.expected_return, p) + ',' +
                        num(report.scores[k], p) + '\n';
        }
    } else {
        const auto grid = mcesr_no_short(model, interval, cfg.grid);
        for (std::size_t k = 0; k < grid.rates.size(); ++k) {
            tangents += num(grid.rates[k], p) + ',' + num(grid.portfolios[k].risk, p) + ',' +
                        num(grid.portfolios[k].expected_return, p) + ',' + num(grid.ce_scores[k], p) + '\n';
        }
    }

    const auto dir = prepare_dir(cfg.out_dir.value_or("plotdata"));
    std::vector<std::pair<std::string, std::string>> files{
        {"frontier.csv", frontier}, {"lines.csv", lines},           {"points.csv", points},
        {"cloud.csv", cloud_csv(model, p)}, {"tangent_set.csv", tangents},
    };
    if (!cfg.split.empty()) {
        const auto out_sample = split_periods(panel, cfg.split).out_sample;
        const auto mode = parse_holding_mode(cfg.mode);
        std::string equity = "date,value,strategy\n";
        for (const auto& pf : marked) {
            const auto curve = equity_curve(pf.weights, out_sample, mode);
            for (std::size_t t = 0; t < curve.values.size(); ++t) {
                equity += curve.labels[t] + ',' + num(curve.values[t], p) + ',' + pf.label + '\n';
            }
        }
        files.emplace_back("equity.csv", equity);
    }
    for (const auto& [name, content] : files) {
        write_file(dir / name, content);
        out << "wrote " << (dir / name).string() << '\n';
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    std::string kind = "returns_csv";
    std::string format = "table";
    std::string interval;
    std::string horizons;
    std::string which;
    double msr_rate = 0.0;
    std::string out_dir;
    bool no_short = false;

    CLI::App app{"Mean-variance portfolio selection by maximal cross-efficiency Sharpe ratio", "mcesr"};
    app.set_config("--config", "", "Read option values from a TOML/INI file; command-line flags take precedence");
    app.add_option("--input", cfg.input, "Input data file")->required();
    app.add_option("--kind", kind, "Input layout")
        ->check(CLI::IsMember({"returns_csv", "prices_csv", "french10"}))
        ->capture_default_str();
    app.add_flag("--percent", cfg.percent, "Work in percent units (French files keep their published units)");
    app.add_option("--from", cfg.from, "First period label to keep");
    app.add_option("--to", cfg.to, "Last period label to keep");
    app.add_option("--split", cfg.split, "Last in-sample period label");
    app.add_option("--interval", interval, "Risk-free rate interval R1:R2 (default 0:r_GMV)");
    auto* msr_opt = app.add_option("--msr-rate", msr_rate, "Risk-free rate of the MSR portfolio (default r_GMV/2)");
    app.add_flag("--no-short", no_short, "Forbid short sales");
    app.add_flag("--both", cfg.both_regimes, "backtest: report both the short and the no-short regime");
    app.add_option("--grid", cfg.grid, "Grid subdivisions of the rate interval")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--horizons", horizons, "Comma-separated horizons: period counts or out-of-sample dates");
    app.add_option("--mode", cfg.mode, "Holding mode")
        ->check(CLI::IsMember({"rebalanced", "buyhold", "buy_and_hold"}))
        ->capture_default_str();
    app.add_option("--method", cfg.method, "Cross-efficiency evaluation for the short-sales MCESR")
        ->check(CLI::IsMember({"analytic", "quadrature", "grid"}))
        ->capture_default_str();
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"table", "csv", "json"}))
        ->capture_default_str();
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--precision", cfg.precision, "Significant digits of numeric output")
        ->check(CLI::Range(1, 15))
        ->capture_default_str();
    app.fallthrough();

    auto* stats = app.add_subcommand("stats", "Per-asset descriptive statistics");
    auto* portfolio = app.add_subcommand("portfolio", "Fit one portfolio");
    portfolio->add_option("which", which, "gmv, tp, msr or mcesr")
        ->required()
        ->check(CLI::IsMember({"gmv", "tp", "msr", "mcesr"}));
    auto* backtest = app.add_subcommand("backtest", "Out-of-sample comparison of GMV, TP, MSR and MCESR");
    auto* plotdata = app.add_subcommand("plotdata", "Write CSV files for frontier, lines, points and equity plots");
    app.require_subcommand(1);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        cfg.kind = kind == "french10"     ? InputKind::French10
                   : kind == "prices_csv" ? InputKind::PricesCsv
                                          : InputKind::ReturnsCsv;
        cfg.format = format == "csv" ? OutputFormat::Csv : format == "json" ? OutputFormat::Json : OutputFormat::Table;
        if (!interval.empty()) {
            cfg.interval = parse_interval(interval);
        }
        if (msr_opt->count() > 0) {
            cfg.msr_rate = msr_rate;
        }
        cfg.allow_short = !no_short;
        cfg.horizons = split_list(horizons, ',');
        if (!out_dir.empty()) {
            cfg.out_dir = out_dir;
        }

        if (stats->parsed()) {
            return cmd_stats(cfg, out);
        }
        if (portfolio->parsed()) {
            return cmd_portfolio(cfg, which, out);
        }
        if (backtest->parsed()) {
            return cmd_backtest(cfg, out);
        }
        if (plotdata->parsed()) {
            return cmd_plotdata(cfg, out);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return is_input_error(e.code()) ? 2 : 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace mcesr::cli
