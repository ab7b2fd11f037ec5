#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "coda/composition.hpp"
#include "coda/config.hpp"

namespace coda {

struct Firm {
    std::string id;
    Composition composition;
    /// Every non-part column of the CSV, by header name.
    std::map<std::string, std::string> externals;
};

struct FirmDataset {
    std::vector<Firm> firms;
    std::vector<std::string> part_labels;
    /// Rows removed by the drop_row zero policy.
    std::size_t dropped_rows = 0;
    /// Cells filled in by the replace zero policy.
    std::size_t replaced_cells = 0;

    std::size_t n() const noexcept { return firms.size(); }
};

/// One parsed CSV row before zero handling; values follow RawTable::part_labels.
struct RawRow {
    std::string firm_id;
    std::size_t line = 0;
    std::vector<double> values;
    std::map<std::string, std::string> externals;
};

struct RawTable {
    std::vector<std::string> part_labels;
    std::vector<RawRow> rows;
};

struct ZeroPolicyResult {
    RawTable table;
    std::size_t dropped_rows = 0;
    std::size_t replaced_cells = 0;
};

/**
 * Parse CSV text (comma separated, header first, '.' decimals, optional
 * double-quoted fields). The header must contain `firm_id`, every configured
 * part and the group variable if one is configured. Negative magnitudes are
 * rejected here with a CompositionError.
 */
RawTable read_csv_table(std::istream& in, const AnalysisConfig& config);

/// Zero handling; expects no negative values.
ZeroPolicyResult apply_zero_policy(RawTable table, const ZeroPolicy& policy);

/// read_csv_table + apply_zero_policy + composition validation.
FirmDataset load_dataset_csv(std::istream& in, const AnalysisConfig& config);
FirmDataset load_dataset_csv(const std::filesystem::path& path, const AnalysisConfig& config);

/// Firms grouped by the value of external `variable`, order preserved in each group.
std::map<std::string, FirmDataset> split_by_group(const FirmDataset& ds, const std::string& variable);

}  // namespace coda
