#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.h"
#include "doctest.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path fixtures{MCESR_FIXTURE_DIR};
const std::string returns_fixture = (fixtures / "monthly_returns.csv").string();

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    Result r;
    r.code = mcesr::cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("mcesr_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(slurp(path));
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("usage and input errors") {
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"stats"}).code == 2);
    CHECK(run({"stats", "--input", returns_fixture, "--bogus"}).code == 2);
    CHECK(run({"stats", "--input", returns_fixture, "--precision", "16"}).code == 2);
    CHECK(run({"portfolio", "--input", returns_fixture}).code == 2);
    CHECK(run({"stats", "--input", "/nonexistent/file.csv"}).code == 2);

    const auto empty = scratch("empty") / "empty.csv";
    std::ofstream(empty).close();
    const auto r = run({"stats", "--input", empty.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("ParseError") != std::string::npos);

    CHECK(run({"backtest", "--input", returns_fixture}).code == 2);
    CHECK(run({"portfolio", "mcesr", "--input", returns_fixture, "--interval", "0.1"}).code == 2);
}

TEST_CASE("portfolio command") {
    SUBCASE("gmv on an identity-covariance panel is equally weighted") {
        const auto r = run({"portfolio", "gmv", "--input", (fixtures / "identity_cov.csv").string(), "--format", "json"});
        REQUIRE(r.code == 0);
        const auto doc = json::parse(r.out);
        CHECK(doc["label"] == "GMV");
        CHECK(doc["rf"].is_null());
        for (const auto& [name, w] : doc["weights"].items()) {
            CHECK(w.get<double>() == doctest::Approx(1.0 / 3.0).epsilon(1e-5));
        }
    }
    SUBCASE("json schema and key order") {
        const auto r = run({"portfolio", "mcesr", "--input", returns_fixture, "--format", "json"});
        REQUIRE(r.code == 0);
        const auto doc = nlohmann::ordered_json::parse(r.out);
        std::vector<std::string> keys;
        for (const auto& [k, v] : doc.items()) keys.push_back(k);
        CHECK(keys == std::vector<std::string>{"label", "rf", "weights", "expected_return", "risk", "sharpe"});
        CHECK(doc["weights"].size() == 5);
    }
    SUBCASE("rate above the GMV return is a domain error naming the bound") {
        const auto r = run({"portfolio", "msr", "--input", returns_fixture, "--msr-rate", "0.5"});
        CHECK(r.code == 1);
        CHECK(r.err.find("RateTooHigh") != std::string::npos);
        CHECK(r.err.find("GMV return") != std::string::npos);
    }
    SUBCASE("no-short weights are nonnegative") {
        const auto r = run({"portfolio", "mcesr", "--input", returns_fixture, "--no-short", "--grid", "100",
                            "--format", "json"});
        REQUIRE(r.code == 0);
        for (const auto& [name, w] : json::parse(r.out)["weights"].items()) CHECK(w.get<double>() >= 0.0);
    }
    SUBCASE("rate methods agree") {
        const auto analytic = json::parse(run({"portfolio", "mcesr", "--input", returns_fixture, "--format",
                                               "json", "--precision", "15"}).out);
        const auto grid = json::parse(run({"portfolio", "mcesr", "--input", returns_fixture, "--format", "json",
                                           "--precision", "15", "--method", "grid", "--grid", "10000"}).out);
        const auto quad = json::parse(run({"portfolio", "mcesr", "--input", returns_fixture, "--format", "json",
                                           "--precision", "15", "--method", "quadrature", "--grid", "200"}).out);
        const double r_gmv = json::parse(run({"portfolio", "gmv", "--input", returns_fixture, "--format", "json",
                                              "--precision", "15"}).out)["expected_return"];
        CHECK(std::abs(grid["rf"].get<double>() - analytic["rf"].get<double>()) <= 2.0 * r_gmv / 10000);
        CHECK(std::abs(quad["rf"].get<double>() - analytic["rf"].get<double>()) <= 2.0 * r_gmv / 200);
    }
}

TEST_CASE("config file with flag precedence") {
    const auto dir = scratch("config");
    const auto ini = dir / "run.ini";
    std::ofstream(ini) << "input = \"" << returns_fixture << "\"\nformat = json\nprecision = 4\n";
    const auto from_file = run({"portfolio", "tp", "--config", ini.string()});
    REQUIRE(from_file.code == 0);
    CHECK(json::parse(from_file.out)["label"] == "TP");
    const auto overridden = run({"portfolio", "tp", "--config", ini.string(), "--format", "csv"});
    REQUIRE(overridden.code == 0);
    CHECK(overridden.out.rfind("label,rf,", 0) == 0);
}

TEST_CASE("stats command") {
    const auto csv = run({"stats", "--input", returns_fixture, "--split", "201712", "--format", "csv"});
    const auto js = run({"stats", "--input", returns_fixture, "--split", "201712", "--format", "json"});
    REQUIRE(csv.code == 0);
    REQUIRE(js.code == 0);
    const auto doc = json::parse(js.out);
    std::istringstream in(csv.out);
    std::string line;
    std::getline(in, line);
    int rows = 0;
    while (std::getline(in, line)) {
        std::vector<std::string> c;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) c.push_back(cell);
        bool found = false;
        for (const auto& a : doc[c[0]]["assets"]) {
            if (a["name"] == c[1]) {
                found = true;
                CHECK(a["return"].get<double>() == std::stod(c[2]));
                CHECK(a["risk"].get<double>() == std::stod(c[3]));
                CHECK(a["minimum"].get<double>() == std::stod(c[4]));
                CHECK(a["maximum"].get<double>() == std::stod(c[5]));
            }
        }
        CHECK(found);
        ++rows;
    }
    CHECK(rows == 15);
    CHECK(doc["in_sample"]["observations"] == 96);
    CHECK(doc["out_sample"]["observations"] == 24);
}

TEST_CASE("backtest command") {
    const std::vector<std::string> base{"backtest", "--input", returns_fixture, "--split", "201712", "--both",
                                        "--grid", "50", "--horizons", "6,24"};
    auto with = [&](std::vector<std::string> extra) {
        auto args = base;
        args.insert(args.end(), extra.begin(), extra.end());
        return run(args);
    };
    const auto csv = with({"--format", "csv"});
    const auto js = with({"--format", "json"});
    REQUIRE(csv.code == 0);
    REQUIRE(js.code == 0);
    const auto doc = json::parse(js.out);
    std::istringstream in(csv.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "strategy,label,rf,horizon,mode,percent_change");
    std::size_t k = 0;
    while (std::getline(in, line)) {
        REQUIRE(k < doc.size());
        const auto& row = doc[k++];
        CHECK(line.rfind(row["strategy"].get<std::string>() + "," + row["label"].get<std::string>() + ",", 0) == 0);
        CHECK(std::stod(line.substr(line.rfind(',') + 1)) == row["percent_change"].get<double>());
    }
    CHECK(k == 16);
    CHECK(k == doc.size());

    SUBCASE("dates map to period counts") {
        const auto by_date = run({"backtest", "--input", returns_fixture, "--split", "201712", "--grid", "50",
                                  "--horizons", "201806,201912", "--format", "csv"});
        const auto by_count = run({"backtest", "--input", returns_fixture, "--split", "201712", "--grid", "50",
                                   "--horizons", "6,24", "--format", "csv"});
        CHECK(by_date.out == by_count.out);
    }
    SUBCASE("horizon beyond the panel") {
        const auto r = run({"backtest", "--input", returns_fixture, "--split", "201712", "--horizons", "25"});
        CHECK(r.code == 1);
        CHECK(r.err.find("HorizonTooLong") != std::string::npos);
    }
}

TEST_CASE("plotdata command") {
    const auto dir = scratch("plot");
    const auto r = run({"plotdata", "--input", returns_fixture, "--split", "201712", "--out", dir.string(),
                        "--precision", "15", "--grid", "50"});
    REQUIRE(r.code == 0);
    for (const char* name : {"frontier.csv", "lines.csv", "points.csv", "cloud.csv", "tangent_set.csv", "equity.csv"}) {
        CHECK(fs::exists(dir / name));
    }
    CHECK(slurp(dir / "frontier.csv").rfind("sigma,r\n", 0) == 0);
    CHECK(slurp(dir / "lines.csv").rfind("x0,y0,x1,y1,label\n", 0) == 0);
    CHECK(slurp(dir / "points.csv").rfind("sigma,r,label\n", 0) == 0);
    CHECK(slurp(dir / "equity.csv").rfind("date,value,strategy\n", 0) == 0);

    const auto frontier = read_csv(dir / "frontier.csv");
    const auto points = read_csv(dir / "points.csv");
    const auto point = [&](const std::string& label) {
        for (const auto& p : points) {
            if (p[2] == label) return std::pair{std::stod(p[0]), std::stod(p[1])};
        }
        FAIL("missing point " << label);
        return std::pair{0.0, 0.0};
    };

    SUBCASE("GMV is the minimum-risk frontier row") {
        std::size_t best = 0;
        for (std::size_t i = 1; i < frontier.size(); ++i) {
            if (std::stod(frontier[i][0]) < std::stod(frontier[best][0])) best = i;
        }
        const auto gmv = point("GMV");
        CHECK(std::stod(frontier[best][0]) == gmv.first);
        CHECK(std::stod(frontier[best][1]) == gmv.second);
    }
    SUBCASE("MCESR lies on the frontier polyline") {
        const auto [sigma, ret] = point("MCESR");
        double distance = 1e300;
        for (std::size_t i = 1; i < frontier.size(); ++i) {
            const double r0 = std::stod(frontier[i - 1][1]), r1 = std::stod(frontier[i][1]);
            if (ret < r0 || ret > r1) continue;
            const double s0 = std::stod(frontier[i - 1][0]), s1 = std::stod(frontier[i][0]);
            const double t = r1 > r0 ? (ret - r0) / (r1 - r0) : 0.0;
            distance = std::min(distance, std::abs(s0 + t * (s1 - s0) - sigma));
        }
        CHECK(distance <= 1e-6);
    }
    SUBCASE("CML endpoints reproduce the Sharpe slope") {
        for (const auto& line : read_csv(dir / "lines.csv")) {
            if (line[4].rfind("cml_", 0) != 0) continue;
            const auto [sigma, ret] = point(line[4].substr(4));
            const double rf = std::stod(line[1]);
            const double slope = (std::stod(line[3]) - std::stod(line[1])) / (std::stod(line[2]) - std::stod(line[0]));
            CHECK(std::abs(slope - (ret - rf) / sigma) <= 1e-10 * std::abs(slope));
        }
    }
}

TEST_CASE("every command is byte-for-byte deterministic") {
    const std::vector<std::vector<std::string>> commands{
        {"stats", "--input", returns_fixture, "--split", "201712"},
        {"stats", "--input", returns_fixture, "--format", "json"},
        {"portfolio", "gmv", "--input", returns_fixture, "--format", "csv"},
        {"portfolio", "tp", "--input", returns_fixture, "--no-short"},
        {"portfolio", "msr", "--input", returns_fixture, "--format", "json"},
        {"portfolio", "mcesr", "--input", returns_fixture, "--no-short", "--grid", "200", "--format", "json"},
        {"backtest", "--input", returns_fixture, "--split", "201712", "--both", "--grid", "50"},
    };
    for (const auto& args : commands) {
        const auto first = run(args);
        const auto second = run(args);
        CHECK(first.code == 0);
        CHECK(first.out == second.out);
    }
    const auto a = scratch("det_a"), b = scratch("det_b");
    for (const auto& dir : {a, b}) {
        run({"plotdata", "--input", returns_fixture, "--split", "201712", "--no-short", "--grid", "50", "--out",
             dir.string()});
    }
    for (const auto& entry : fs::directory_iterator(a)) {
        CHECK(slurp(entry.path()) == slurp(b / entry.path().filename()));
    }
}
