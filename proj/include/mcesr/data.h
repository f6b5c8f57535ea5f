#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "mcesr/market_model.h"

namespace mcesr {

struct PeriodSplit {
    ReturnMatrix in_sample;
    ReturnMatrix out_sample;
    std::string split_label;
};

/// Comma-separated panel: header "date,NAME1,...,NAMEn", then one row per
/// period with an ISO-8601 (YYYY-MM-DD) or YYYYMM label and n decimal returns.
/// Rows are returned sorted by label. Throws ParseError, DuplicateDate, RaggedRow.
ReturnMatrix load_returns_csv(const std::filesystem::path& path);
ReturnMatrix parse_returns_csv(std::string_view text);

/// Same layout holding prices; returns r_t = p_t / p_{t-1} - 1 labelled by the
/// later period. Throws NonPositivePrice.
ReturnMatrix load_prices_csv(const std::filesystem::path& path);
ReturnMatrix parse_prices_csv(std::string_view text);

/// Inverse of parse_returns_csv; values use the shortest round-trip decimal form.
std::string format_returns_csv(const ReturnMatrix& returns);
void write_returns_csv(const std::filesystem::path& path, const ReturnMatrix& returns);

/// Ken French industry portfolio file (TXT or CSV download): the first monthly
/// block after its column header, up to the first blank line. Values are in
/// percent in the file; they are divided by 100 unless keep_percent is set.
/// Sentinels -99.99 and -999 raise MissingData.
ReturnMatrix load_french_10industry(const std::filesystem::path& path, bool keep_percent = false);
ReturnMatrix parse_french_10industry(std::string_view text, bool keep_percent = false);

/// Rows with label <= boundary go in-sample, the rest out-of-sample.
/// Throws EmptySide when either part is empty.
PeriodSplit split_periods(const ReturnMatrix& returns, const std::string& boundary);

/// Rows with from <= label <= to. Throws EmptySide when none match.
ReturnMatrix slice_periods(const ReturnMatrix& returns, const std::string& from, const std::string& to);

}  // namespace mcesr
