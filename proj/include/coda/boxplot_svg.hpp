#pragma once

#include <span>
#include <string>

#include "coda/robust_stats.hpp"

namespace coda {

struct NamedBox {
    std::string name;
    stats::BoxSummary box;
};

/**
 * Side-by-side box plots in one SVG document, 200 x 400 units per variable.
 * All boxes share a linear vertical scale spanning the overall data range.
 * Open circles mark outliers beyond the inner fences, filled circles those
 * beyond the outer fences. Identical input yields identical bytes.
 *
 * Throws StatsError(EmptyData) when `boxes` is empty.
 */
std::string emit_boxplot_svg(std::span<const NamedBox> boxes);

}  // namespace coda
