#include "coda/classic_ratios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "coda/error.hpp"
#include "coda/format.hpp"

namespace coda {

namespace {

double group_sum(const Composition& x, const std::vector<std::string>& labels) {
    double sum = 0.0;
    for (const std::string& label : labels) {
        sum += x.value(label);
    }
    return sum;
}

}  // namespace

void validate_ratio_spec(const RatioSpec& spec) {
    if (spec.numerator_labels.empty()) {
        throw LabelError(LabelError::Kind::EmptyGroup, "numerator");
    }
    if (spec.denominator_labels.empty()) {
        throw LabelError(LabelError::Kind::EmptyGroup, "denominator");
    }
    for (const std::string& label : spec.numerator_labels) {
        if (std::find(spec.denominator_labels.begin(), spec.denominator_labels.end(), label) !=
            spec.denominator_labels.end()) {
            throw LabelError(LabelError::Kind::OverlappingGroups, label);
        }
    }
}

double eval_ratio(const Composition& x, const RatioSpec& spec) {
    validate_ratio_spec(spec);
    return group_sum(x, spec.numerator_labels) / group_sum(x, spec.denominator_labels);
}

RatioSpec invert_spec(const RatioSpec& spec) {
    return RatioSpec{spec.name, spec.denominator_labels, spec.numerator_labels, !spec.permuted};
}

double ray_angle_degrees(const DemoFirm& firm) {
    return std::atan2(firm.mg2, firm.mg1) * 180.0 / std::numbers::pi;
}

const std::vector<DemoFirm>& table1_firms() {
    static const std::vector<DemoFirm> firms = {
        {"E1", 0.5, 4.0}, {"E2", 1.5, 3.0}, {"E3", 1.5, 2.5}, {"E4", 1.8, 3.0}, {"E5", 1.5, 1.5},
        {"E6", 3.0, 3.0}, {"E7", 3.0, 1.8}, {"E8", 2.5, 1.5}, {"E9", 3.0, 1.5}, {"E10", 4.0, 0.5},
    };
    return firms;
}

std::vector<DemoRow> table1_demo() {
    std::vector<DemoRow> rows;
    rows.reserve(table1_firms().size());
    for (const DemoFirm& f : table1_firms()) {
        // Log difference rather than log of the quotient keeps mirrored firms
        // exactly antisymmetric.
        const double ilr = std::sqrt(0.5) * (std::log(f.mg2) - std::log(f.mg1));
        rows.push_back({f, ray_angle_degrees(f), f.mg2 / f.mg1, f.mg1 / f.mg2, ilr});
    }
    return rows;
}

std::string format_table1_csv(const std::vector<DemoRow>& rows) {
    std::string out = "firm,mg1,mg2,alpha_deg,ratio21,ratio12,ilr\n";
    for (const DemoRow& r : rows) {
        out += r.firm.id;
        for (double v : {r.firm.mg1, r.firm.mg2, r.alpha_deg, r.ratio21, r.ratio12, r.ilr}) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

}  // namespace coda
