#pragma once

#include <string>
#include <vector>

#include "coda/composition.hpp"

namespace coda {

/// Standard financial ratio: sum of numerator parts over sum of denominator parts.
struct RatioSpec {
    std::string name;
    std::vector<std::string> numerator_labels;
    std::vector<std::string> denominator_labels;
    /// Set on specs produced by invert_spec(); toggled by each inversion.
    bool permuted = false;

    /// `name`, with a "p" suffix for the permuted form.
    std::string display_name() const { return permuted ? name + "p" : name; }

    friend bool operator==(const RatioSpec&, const RatioSpec&) = default;
};

/// Throws LabelError when a group is empty or the groups share a label.
void validate_ratio_spec(const RatioSpec& spec);

double eval_ratio(const Composition& x, const RatioSpec& spec);

/// Numerator and denominator swapped; invert_spec(invert_spec(s)) == s.
RatioSpec invert_spec(const RatioSpec& spec);

/// Two-magnitude firm of the ten-firm ray-geometry example.
struct DemoFirm {
    std::string id;
    double mg1 = 0.0;
    double mg2 = 0.0;
};

/// Angle in degrees between the abscissa and the ray from the origin through
/// (mg1, mg2); its tangent is mg2/mg1.
double ray_angle_degrees(const DemoFirm& firm);

struct DemoRow {
    DemoFirm firm;
    double alpha_deg = 0.0;
    double ratio21 = 0.0;  ///< mg2/mg1: height of the ray at x = 1
    double ratio12 = 0.0;  ///< mg1/mg2: abscissa of the ray at y = 1
    double ilr = 0.0;      ///< sqrt(1/2) ln(mg2/mg1)
};

/// The built-in ten-firm sector whose magnitudes are symmetric about 45 degrees.
const std::vector<DemoFirm>& table1_firms();

std::vector<DemoRow> table1_demo();

/// CSV with header firm,mg1,mg2,alpha_deg,ratio21,ratio12,ilr.
std::string format_table1_csv(const std::vector<DemoRow>& rows);

}  // namespace coda
