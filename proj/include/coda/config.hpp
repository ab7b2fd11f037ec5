#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coda/classic_ratios.hpp"
#include "coda/partition_tree.hpp"

namespace coda {

enum class ZeroMode { Reject, DropRow, Replace };

/// How zero magnitudes are handled before compositions are built.
/// Negative magnitudes are always an error, whatever the mode.
struct ZeroPolicy {
    ZeroMode mode = ZeroMode::Reject;
    /// Replace mode: a zero in column c becomes delta_fraction * min positive value of c.
    double delta_fraction = 0.65;
};

std::string_view to_string(ZeroMode mode);

/**
 * Settings for one analysis run. Text form (one `key = value` per line,
 * `#` starts a comment):
 *
 *     parts = TA, NCL, CL
 *     sbp = (TA|(NCL|CL))
 *     balance_names = y1, y2                      # optional
 *     standard_ratios = r1: TA / NCL + CL; r2: NCL / CL
 *     group_variable = brand                      # optional
 *     group_positive = yes                        # optional
 *     zero_policy.mode = reject | drop_row | replace
 *     zero_policy.delta_fraction = 0.65
 *
 * `group_positive` names the level whose mean is taken first in the
 * t-test, so a positive t means that group has the larger mean. Without it
 * the first level seen in the data is used.
 */
struct AnalysisConfig {
    std::vector<std::string> parts;
    std::string sbp;
    std::vector<std::string> balance_names;
    std::vector<RatioSpec> standard_ratios;
    std::optional<std::string> group_variable;
    std::optional<std::string> group_positive;
    ZeroPolicy zero_policy;

    /// Parsed `sbp` carrying `balance_names` when given.
    PartitionTree tree() const;
};

/// Throws ConfigError with the offending line number.
AnalysisConfig parse_config(std::string_view text);
AnalysisConfig load_config(const std::filesystem::path& path);
std::string format_config(const AnalysisConfig& config);

/// Tree leaves equal `parts`, ratio labels are parts, policy values in range.
/// Throws ConfigError (or the tree's SyntaxError / LabelMismatch).
void validate_config(const AnalysisConfig& config);

}  // namespace coda
