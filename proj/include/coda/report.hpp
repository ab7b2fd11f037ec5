#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coda/config.hpp"
#include "coda/dataset.hpp"
#include "coda/robust_stats.hpp"

namespace coda {

enum class VariableKind { Balance, Ratio };

/**
 * Statistics for one analysed variable. A quantity that cannot be computed
 * on this data (too few firms, zero variance, ...) is left empty and its
 * reason is recorded in `degenerate` under the quantity's name.
 */
struct VariableReport {
    std::string name;
    VariableKind kind = VariableKind::Balance;
    bool permuted = false;
    std::vector<std::string> numerator;
    std::vector<std::string> denominator;

    /// One value per firm, dataset order.
    std::vector<double> values;

    std::optional<double> mean;
    std::optional<double> sd;
    std::optional<double> skewness;
    std::optional<double> kurtosis;
    std::optional<stats::BoxSummary> box;
    std::optional<stats::GroupComparison> comparison;
    std::map<std::string, std::string> degenerate;
};

struct GroupSection {
    std::string variable;
    /// Level whose mean comes first in the t-test (positive t: larger mean).
    std::string positive_level;
    std::string other_level;
    std::size_t n_positive = 0;
    std::size_t n_other = 0;
};

struct AnalysisReport {
    AnalysisConfig config;
    std::size_t n = 0;
    std::size_t dropped_rows = 0;
    std::size_t replaced_cells = 0;
    std::optional<std::string> timestamp;
    /// Set when a group variable is configured and splits the firms into
    /// exactly two levels; otherwise `group_note` says why not.
    std::optional<GroupSection> groups;
    std::optional<std::string> group_note;
    /// Balances then standard ratios in config order, each followed by its
    /// permuted form.
    std::vector<VariableReport> variables;
};

/// Per-firm balances and ratios (with permuted forms), their descriptive
/// statistics and box summaries, and group comparisons when configured.
AnalysisReport run_analysis(const FirmDataset& ds, const AnalysisConfig& config,
                            std::optional<std::string> timestamp = std::nullopt);

enum class ReportFormat { Json, Csv };

/// JSON: fixed key order, shortest round-trip numbers. CSV: one row per
/// variable with columns variable,n,mean,sd,skewness,kurtosis,n_outliers,
/// n_extreme,t,df,p,r_squared; unavailable values are empty.
std::string emit_report(const AnalysisReport& report, ReportFormat format);

/// firm_id followed by one column per balance.
std::string emit_transform_csv(const FirmDataset& ds, const PartitionTree& tree);

}  // namespace coda
