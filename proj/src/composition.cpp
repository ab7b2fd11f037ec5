#include "coda/composition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "coda/error.hpp"

namespace coda {

namespace {

// Mean of ln(x_i) over `indices`, summed in ascending index order so that the
// same group always produces bit-identical results regardless of which side
// of a balance it sits on.
double mean_log(std::span<const double> logs, std::vector<std::size_t> indices) {
    std::sort(indices.begin(), indices.end());
    double sum = 0.0;
    for (std::size_t i : indices) {
        sum += logs[i];
    }
    return sum / static_cast<double>(indices.size());
}

double balance_scale(std::size_t r, std::size_t s) {
    return std::sqrt(static_cast<double>(r * s) / static_cast<double>(r + s));
}

std::vector<double> log_parts(const Composition& x) {
    std::vector<double> logs;
    logs.reserve(x.dimension());
    for (const Part& p : x.parts()) {
        logs.push_back(std::log(p.value));
    }
    return logs;
}

// Composition index of every tree leaf; throws LabelMismatch if the label sets differ.
std::vector<std::size_t> leaf_positions(const Composition& x, const PartitionTree& tree) {
    const std::vector<std::string> labels = x.labels();
    validate_tree(tree, labels);
    std::vector<std::size_t> pos;
    pos.reserve(tree.dimension());
    for (const std::string& label : tree.leaf_labels()) {
        pos.push_back(*x.index_of(label));
    }
    return pos;
}

std::vector<std::size_t> group_indices(const Composition& x, std::span<const std::string> labels,
                                       const char* side) {
    if (labels.empty()) {
        throw LabelError(LabelError::Kind::EmptyGroup, side);
    }
    std::vector<std::size_t> out;
    out.reserve(labels.size());
    for (const std::string& label : labels) {
        auto idx = x.index_of(label);
        if (!idx) {
            throw LabelError(LabelError::Kind::UnknownLabel, label);
        }
        if (std::find(out.begin(), out.end(), *idx) == out.end()) {
            out.push_back(*idx);
        }
    }
    return out;
}

}  // namespace

Composition Composition::from_parts(std::span<const Part> raw) {
    std::vector<CompositionError::Issue> issues;
    if (raw.size() < 2) {
        issues.push_back({CompositionError::Kind::TooFewParts, {}, 0.0});
    }
    std::set<std::string> seen;
    std::set<std::string> reported;
    for (const Part& p : raw) {
        if (p.label.empty()) {
            issues.push_back({CompositionError::Kind::EmptyLabel, {}, p.value});
        } else if (!seen.insert(p.label).second && reported.insert(p.label).second) {
            issues.push_back({CompositionError::Kind::DuplicateLabel, p.label, p.value});
        }
        if (!(p.value > 0.0) || !std::isfinite(p.value)) {
            issues.push_back({CompositionError::Kind::NonPositivePart, p.label, p.value});
        }
    }
    if (!issues.empty()) {
        throw CompositionError(std::move(issues));
    }
    return Composition(std::vector<Part>(raw.begin(), raw.end()));
}

std::vector<std::string> Composition::labels() const {
    std::vector<std::string> out;
    out.reserve(parts_.size());
    for (const Part& p : parts_) {
        out.push_back(p.label);
    }
    return out;
}

std::optional<std::size_t> Composition::index_of(std::string_view label) const noexcept {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i].label == label) {
            return i;
        }
    }
    return std::nullopt;
}

double Composition::value(std::string_view label) const {
    auto idx = index_of(label);
    if (!idx) {
        throw LabelError(LabelError::Kind::UnknownLabel, std::string(label));
    }
    return parts_[*idx].value;
}

Composition Composition::scaled(double factor) const {
    std::vector<Part> parts = parts_;
    for (Part& p : parts) {
        p.value *= factor;
    }
    return from_parts(parts);
}

Composition Composition::closed() const {
    double total = 0.0;
    for (const Part& p : parts_) {
        total += p.value;
    }
    return scaled(1.0 / total);
}

std::vector<double> BalanceVector::values() const {
    std::vector<double> out;
    out.reserve(coords.size());
    for (const Coordinate& c : coords) {
        out.push_back(c.value);
    }
    return out;
}

std::vector<double> ContrastMatrix::apply(std::span<const double> v) const {
    if (v.size() != cols) {
        throw LengthMismatch(cols, v.size());
    }
    std::vector<double> out(rows, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < cols; ++c) {
            acc += entries[r * cols + c] * v[c];
        }
        out[r] = acc;
    }
    return out;
}

double balance(const Composition& x, std::span<const std::string> num_labels,
               std::span<const std::string> den_labels) {
    std::vector<std::size_t> num = group_indices(x, num_labels, "numerator");
    std::vector<std::size_t> den = group_indices(x, den_labels, "denominator");
    for (std::size_t i : num) {
        if (std::find(den.begin(), den.end(), i) != den.end()) {
            throw LabelError(LabelError::Kind::OverlappingGroups, x.parts()[i].label);
        }
    }
    const std::vector<double> logs = log_parts(x);
    const double scale = balance_scale(num.size(), den.size());
    return scale * (mean_log(logs, num) - mean_log(logs, den));
}

BalanceVector ilr_transform(const Composition& x, const PartitionTree& tree) {
    const std::vector<std::size_t> pos = leaf_positions(x, tree);
    const std::vector<double> logs = log_parts(x);

    auto to_composition_order = [&pos](const std::vector<std::size_t>& leaves) {
        std::vector<std::size_t> out;
        out.reserve(leaves.size());
        for (std::size_t leaf : leaves) {
            out.push_back(pos[leaf]);
        }
        return out;
    };

    BalanceVector y;
    y.tree_fingerprint = tree.fingerprint();
    y.coords.reserve(tree.coordinate_count());
    for (std::size_t i = 0; i < tree.coordinate_count(); ++i) {
        const PartitionNode& node = tree.nodes()[i];
        const double scale = balance_scale(node.numerator_leaves.size(), node.denominator_leaves.size());
        const double value = scale * (mean_log(logs, to_composition_order(node.numerator_leaves)) -
                                      mean_log(logs, to_composition_order(node.denominator_leaves)));
        y.coords.push_back({tree.coordinate_names()[i], value});
    }
    return y;
}

Composition ilr_inverse(const BalanceVector& y, const PartitionTree& tree) {
    if (y.tree_fingerprint != tree.fingerprint()) {
        throw TreeMismatch(tree.fingerprint(), y.tree_fingerprint);
    }
    const std::vector<double> values = y.values();
    return ilr_inverse(values, tree);
}

Composition ilr_inverse(std::span<const double> y, const PartitionTree& tree) {
    if (y.size() != tree.coordinate_count()) {
        throw LengthMismatch(tree.coordinate_count(), y.size());
    }
    const ContrastMatrix v = contrast_matrix(tree);
    // clr = V^T y; shift by the max before exponentiating to stay in range.
    std::vector<double> clr(v.cols, 0.0);
    for (std::size_t r = 0; r < v.rows; ++r) {
        for (std::size_t c = 0; c < v.cols; ++c) {
            clr[c] += v(r, c) * y[r];
        }
    }
    const double top = *std::max_element(clr.begin(), clr.end());
    std::vector<double> expo(clr.size());
    double total = 0.0;
    for (std::size_t c = 0; c < clr.size(); ++c) {
        expo[c] = std::exp(clr[c] - top);
        total += expo[c];
    }
    std::vector<Part> parts;
    parts.reserve(clr.size());
    for (std::size_t c = 0; c < clr.size(); ++c) {
        parts.push_back({tree.leaf_labels()[c], expo[c] / total});
    }
    return Composition::from_parts(parts);
}

std::vector<double> clr_transform(const Composition& x) {
    std::vector<double> logs = log_parts(x);
    const double centre = std::accumulate(logs.begin(), logs.end(), 0.0) / static_cast<double>(logs.size());
    for (double& v : logs) {
        v -= centre;
    }
    return logs;
}

double pairwise_logratio(const Composition& x, std::string_view a, std::string_view b) {
    if (a == b) {
        throw LabelError(LabelError::Kind::SameLabel, std::string(a));
    }
    const double xa = x.value(a);
    const double xb = x.value(b);
    return std::sqrt(0.5) * (std::log(xa) - std::log(xb));
}

double aitchison_distance(const Composition& x, const Composition& z, const PartitionTree& tree) {
    const BalanceVector yx = ilr_transform(x, tree);
    const BalanceVector yz = ilr_transform(z, tree);
    double sum = 0.0;
    for (std::size_t i = 0; i < yx.size(); ++i) {
        const double d = yx.coords[i].value - yz.coords[i].value;
        sum += d * d;
    }
    return std::sqrt(sum);
}

ContrastMatrix contrast_matrix(const PartitionTree& tree) {
    ContrastMatrix m;
    m.part_labels = tree.leaf_labels();
    m.rows = tree.coordinate_count();
    m.cols = tree.dimension();
    m.entries.assign(m.rows * m.cols, 0.0);
    for (std::size_t r = 0; r < m.rows; ++r) {
        const PartitionNode& node = tree.nodes()[r];
        const auto nr = static_cast<double>(node.numerator_leaves.size());
        const auto ns = static_cast<double>(node.denominator_leaves.size());
        const double plus = std::sqrt(ns / (nr * (nr + ns)));
        const double minus = -std::sqrt(nr / (ns * (nr + ns)));
        for (std::size_t leaf : node.numerator_leaves) {
            m.entries[r * m.cols + leaf] = plus;
        }
        for (std::size_t leaf : node.denominator_leaves) {
            m.entries[r * m.cols + leaf] = minus;
        }
    }
    return m;
}

}  // namespace coda
