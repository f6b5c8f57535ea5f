#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mcesr::cli {

enum class InputKind { ReturnsCsv, PricesCsv, French10 };
enum class OutputFormat { Table, Csv, Json };

/// Parsed command-line state shared by every subcommand.
struct RunConfig {
    std::filesystem::path input;
    InputKind kind = InputKind::ReturnsCsv;
    bool percent = false;
    std::string from;
    std::string to;
    std::string split;
    std::optional<std::pair<double, double>> interval;  // default [0, r_GMV]
    std::optional<double> msr_rate;                     // default r_GMV / 2
    bool allow_short = true;
    bool both_regimes = false;
    int grid = 1000;
    std::vector<std::string> horizons;
    std::string mode = "buyhold";
    std::string method = "analytic";
    OutputFormat format = OutputFormat::Table;
    std::optional<std::filesystem::path> out_dir;
    int precision = 6;
};

/// Runs one command line (without the program name). Normal output goes to
/// `out`, diagnostics to `err`. Returns 0 on success, 1 on a domain error and
/// 2 on an input, parse or usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mcesr::cli
