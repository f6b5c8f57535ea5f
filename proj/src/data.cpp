#include "mcesr/data.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <vector>

#include <spdlog/spdlog.h>

#include "mcesr/error.h"

namespace mcesr {

namespace {

struct RawPanel {
    std::vector<std::string> names;
    std::vector<std::string> labels;
    std::vector<std::vector<double>> rows;
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        auto line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        lines.push_back(line);
        start = end + 1;
    }
    return lines;
}

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto end = line.find(sep, start);
        fields.push_back(trim(line.substr(start, end == std::string_view::npos ? end : end - start)));
        if (end == std::string_view::npos) {
            break;
        }
        start = end + 1;
    }
    return fields;
}

std::vector<std::string_view> split_whitespace(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == ',' || line[i] == '\r')) {
            ++i;
        }
        const auto start = i;
        while (i < line.size() && !(line[i] == ' ' || line[i] == '\t' || line[i] == ',' || line[i] == '\r')) {
            ++i;
        }
        if (i > start) {
            tokens.push_back(line.substr(start, i - start));
        }
    }
    return tokens;
}

bool parse_double(std::string_view token, double& out) {
    if (!token.empty() && token.front() == '+') {
        token.remove_prefix(1);
    }
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, out);
    return ec == std::errc() && ptr == end && std::isfinite(out);
}

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
}

/// 0 = not a label, 1 = YYYYMM, 2 = YYYY-MM-DD
int label_format(std::string_view s) {
    if (s.size() == 6 && all_digits(s)) {
        return 1;
    }
    if (s.size() == 10 && s[4] == '-' && s[7] == '-' && all_digits(s.substr(0, 4)) &&
        all_digits(s.substr(5, 2)) && all_digits(s.substr(8, 2))) {
        return 2;
    }
    return 0;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

RawPanel parse_panel(std::string_view text) {
    const auto lines = split_lines(text);
    std::size_t line_no = 0;
    while (line_no < lines.size() && trim(lines[line_no]).empty()) {
        ++line_no;
    }
    if (line_no == lines.size()) {
        throw Error(ErrorCode::ParseError, "file is empty");
    }

    RawPanel panel;
    const auto header = split_fields(lines[line_no], ',');
    std::string first(header[0]);
    std::transform(first.begin(), first.end(), first.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (first != "date") {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no + 1) +
                                               ": header must start with 'date', found '" + first + "'");
    }
    std::set<std::string> names;
    for (std::size_t k = 1; k < header.size(); ++k) {
        if (header[k].empty()) {
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no + 1) + ", column " +
                                                   std::to_string(k + 1) + ": empty asset name");
        }
        if (!names.insert(std::string(header[k])).second) {
            throw Error(ErrorCode::ParseError, "duplicate asset name '" + std::string(header[k]) + "'");
        }
        panel.names.emplace_back(header[k]);
    }
    if (panel.names.empty()) {
        throw Error(ErrorCode::ParseError, "header names no assets");
    }

    int format = 0;
    for (++line_no; line_no < lines.size(); ++line_no) {
        const auto line = lines[line_no];
        if (trim(line).empty()) {
            continue;
        }
        const auto where = "line " + std::to_string(line_no + 1);
        const auto fields = split_fields(line, ',');
        if (fields.size() != header.size()) {
            throw Error(ErrorCode::RaggedRow, where + ": expected " + std::to_string(header.size()) +
                                                  " fields, found " + std::to_string(fields.size()));
        }
        const int this_format = label_format(fields[0]);
        if (this_format == 0) {
            throw Error(ErrorCode::ParseError, where + ", column date: '" + std::string(fields[0]) +
                                                   "' is neither YYYY-MM-DD nor YYYYMM");
        }
        if (format != 0 && this_format != format) {
            throw Error(ErrorCode::ParseError, where + ", column date: mixed date formats");
        }
        format = this_format;
        std::vector<double> row(panel.names.size());
        for (std::size_t k = 1; k < fields.size(); ++k) {
            const auto cell = where + ", column " + panel.names[k - 1];
            if (fields[k].empty()) {
                throw Error(ErrorCode::ParseError, cell + ": empty cell");
            }
            if (!parse_double(fields[k], row[k - 1])) {
                throw Error(ErrorCode::ParseError, cell + ": '" + std::string(fields[k]) + "' is not a number");
            }
        }
        panel.labels.emplace_back(fields[0]);
        panel.rows.push_back(std::move(row));
    }
    if (panel.rows.empty()) {
        throw Error(ErrorCode::ParseError, "file has a header but no data rows");
    }

    std::vector<std::size_t> order(panel.rows.size());
    std::iota(order.begin(), order.end(), 0);
    if (!std::is_sorted(panel.labels.begin(), panel.labels.end())) {
        spdlog::warn("rows are not in date order; sorting");
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t l, std::size_t r) { return panel.labels[l] < panel.labels[r]; });
    }
    RawPanel sorted;
    sorted.names = std::move(panel.names);
    for (auto k : order) {
        if (!sorted.labels.empty() && sorted.labels.back() == panel.labels[k]) {
            throw Error(ErrorCode::DuplicateDate, "date '" + panel.labels[k] + "' appears twice");
        }
        sorted.labels.push_back(panel.labels[k]);
        sorted.rows.push_back(std::move(panel.rows[k]));
    }
    return sorted;
}

MatrixXd to_matrix(const std::vector<std::vector<double>>& rows, std::size_t columns) {
    MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(columns));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < columns; ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    return m;
}

std::string shortest(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

ReturnMatrix select_rows(const ReturnMatrix& returns, const std::vector<Eigen::Index>& rows) {
    MatrixXd values(static_cast<Eigen::Index>(rows.size()), returns.assets());
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        values.row(static_cast<Eigen::Index>(k)) = returns.values().row(rows[k]);
        labels.push_back(returns.period_labels()[static_cast<std::size_t>(rows[k])]);
    }
    return ReturnMatrix(std::move(values), returns.asset_names(), std::move(labels));
}

}  // namespace

ReturnMatrix parse_returns_csv(std::string_view text) {
    auto panel = parse_panel(text);
    const auto columns = panel.names.size();
    return ReturnMatrix(to_matrix(panel.rows, columns), std::move(panel.names), std::move(panel.labels));
}

ReturnMatrix load_returns_csv(const std::filesystem::path& path) { return parse_returns_csv(read_file(path)); }

ReturnMatrix parse_prices_csv(std::string_view text) {
    auto panel = parse_panel(text);
    for (std::size_t i = 0; i < panel.rows.size(); ++i) {
        for (std::size_t j = 0; j < panel.names.size(); ++j) {
            if (!(panel.rows[i][j] > 0.0)) {
                throw Error(ErrorCode::NonPositivePrice,
                            "date " + panel.labels[i] + ", column " + panel.names[j] + ": price " +
                                shortest(panel.rows[i][j]) + " is not positive");
            }
        }
    }
    if (panel.rows.size() < 2) {
        throw Error(ErrorCode::ParseError, "need at least two price rows to form a return");
    }
    const auto columns = panel.names.size();
    std::vector<std::vector<double>> returns;
    for (std::size_t i = 1; i < panel.rows.size(); ++i) {
        std::vector<double> row(columns);
        for (std::size_t j = 0; j < columns; ++j) {
            row[j] = panel.rows[i][j] / panel.rows[i - 1][j] - 1.0;
        }
        returns.push_back(std::move(row));
    }
    std::vector<std::string> labels(panel.labels.begin() + 1, panel.labels.end());
    return ReturnMatrix(to_matrix(returns, columns), std::move(panel.names), std::move(labels));
}

ReturnMatrix load_prices_csv(const std::filesystem::path& path) { return parse_prices_csv(read_file(path)); }

std::string format_returns_csv(const ReturnMatrix& returns) {
    std::string out = "date";
    for (const auto& name : returns.asset_names()) {
        out += ',';
        out += name;
    }
    out += '\n';
    for (Eigen::Index i = 0; i < returns.periods(); ++i) {
        out += returns.period_labels()[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < returns.assets(); ++j) {
            out += ',';
            out += shortest(returns.values()(i, j));
        }
        out += '\n';
    }
    return out;
}

void write_returns_csv(const std::filesystem::path& path, const ReturnMatrix& returns) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
    }
    out << format_returns_csv(returns);
    if (!out) {
        throw Error(ErrorCode::Io, "write to '" + path.string() + "' failed");
    }
}

ReturnMatrix parse_french_10industry(std::string_view text, bool keep_percent) {
    const auto lines = split_lines(text);
    auto is_data_row = [](const std::vector<std::string_view>& tokens) {
        if (tokens.size() < 3 || label_format(tokens[0]) != 1) {
            return false;
        }
        double dummy = 0.0;
        return std::all_of(tokens.begin() + 1, tokens.end(), [&](auto t) { return parse_double(t, dummy); });
    };

    std::size_t first_row = 0;
    while (first_row < lines.size() && !is_data_row(split_whitespace(lines[first_row]))) {
        ++first_row;
    }
    if (first_row == lines.size()) {
        throw Error(ErrorCode::ParseError, "no monthly 'YYYYMM v1 ... vn' block found");
    }
    std::size_t header_line = first_row;
    while (header_line > 0 && trim(lines[header_line - 1]).empty()) {
        --header_line;
    }
    if (header_line == 0) {
        throw Error(ErrorCode::ParseError, "monthly block has no column header line");
    }
    --header_line;
    std::vector<std::string> names;
    for (auto token : split_whitespace(lines[header_line])) {
        names.emplace_back(token);
    }

    std::vector<std::string> labels;
    std::vector<std::vector<double>> rows;
    for (std::size_t line_no = first_row; line_no < lines.size(); ++line_no) {
        const auto tokens = split_whitespace(lines[line_no]);
        if (tokens.empty() || !is_data_row(tokens)) {
            break;
        }
        const auto where = "line " + std::to_string(line_no + 1);
        if (tokens.size() != names.size() + 1) {
            throw Error(ErrorCode::ParseError, where + ": expected " + std::to_string(names.size()) +
                                                   " values, found " + std::to_string(tokens.size() - 1));
        }
        std::vector<double> row(names.size());
        for (std::size_t j = 0; j < names.size(); ++j) {
            parse_double(tokens[j + 1], row[j]);
            if (row[j] == -99.99 || row[j] == -999.0) {
                throw Error(ErrorCode::MissingData,
                            where + ", column " + names[j] + ": missing-value sentinel " + std::string(tokens[j + 1]));
            }
            if (!keep_percent) {
                row[j] /= 100.0;
            }
        }
        if (!labels.empty() && std::string(tokens[0]) <= labels.back()) {
            throw Error(ErrorCode::DuplicateDate, where + ": month " + std::string(tokens[0]) + " out of order");
        }
        labels.emplace_back(tokens[0]);
        rows.push_back(std::move(row));
    }
    const auto columns = names.size();
    return ReturnMatrix(to_matrix(rows, columns), std::move(names), std::move(labels));
}

ReturnMatrix load_french_10industry(const std::filesystem::path& path, bool keep_percent) {
    return parse_french_10industry(read_file(path), keep_percent);
}

PeriodSplit split_periods(const ReturnMatrix& returns, const std::string& boundary) {
    const auto& labels = returns.period_labels();
    const auto in_count = static_cast<Eigen::Index>(
        std::upper_bound(labels.begin(), labels.end(), boundary) - labels.begin());
    if (in_count == 0 || in_count == returns.periods()) {
        throw Error(ErrorCode::EmptySide, "split at '" + boundary + "' leaves the " +
                                              (in_count == 0 ? "in-sample" : "out-of-sample") + " part empty");
    }
    return PeriodSplit{returns.rows(0, in_count), returns.rows(in_count, returns.periods() - in_count), boundary};
}

ReturnMatrix slice_periods(const ReturnMatrix& returns, const std::string& from, const std::string& to) {
    std::vector<Eigen::Index> rows;
    for (Eigen::Index i = 0; i < returns.periods(); ++i) {
        const auto& label = returns.period_labels()[static_cast<std::size_t>(i)];
        if (label >= from && label <= to) {
            rows.push_back(i);
        }
    }
    if (rows.empty()) {
        throw Error(ErrorCode::EmptySide, "no periods between '" + from + "' and '" + to + "'");
    }
    return select_rows(returns, rows);
}

}  // namespace mcesr
