#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coda/partition_tree.hpp"

namespace coda {

struct Part {
    std::string label;
    double value = 0.0;
};

/**
 * Strictly positive, labelled magnitudes (D >= 2). Only relative sizes carry
 * information; every log-ratio quantity below is invariant to a common
 * rescaling of the parts.
 */
class Composition {
public:
    /// Validates `raw`; throws CompositionError listing every offending part.
    static Composition from_parts(std::span<const Part> raw);

    std::size_t dimension() const noexcept { return parts_.size(); }
    const std::vector<Part>& parts() const noexcept { return parts_; }
    std::vector<std::string> labels() const;

    std::optional<std::size_t> index_of(std::string_view label) const noexcept;
    /// Throws LabelError(UnknownLabel).
    double value(std::string_view label) const;

    /// All parts multiplied by `factor` (> 0).
    Composition scaled(double factor) const;
    /// Parts divided by their sum.
    Composition closed() const;

private:
    explicit Composition(std::vector<Part> parts) : parts_(std::move(parts)) {}

    std::vector<Part> parts_;
};

inline Composition validate_composition(std::span<const Part> raw) { return Composition::from_parts(raw); }

struct Coordinate {
    std::string name;
    double value = 0.0;
};

/// ilr coordinates of one composition, tagged with the generating tree.
struct BalanceVector {
    std::vector<Coordinate> coords;
    std::uint64_t tree_fingerprint = 0;

    std::size_t size() const noexcept { return coords.size(); }
    std::vector<double> values() const;
};

/// (D-1) x D map from clr to ilr coordinates, row-major.
struct ContrastMatrix {
    std::vector<std::string> part_labels;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> entries;

    double operator()(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
    std::span<const double> row(std::size_t r) const { return {entries.data() + r * cols, cols}; }
    /// Matrix-vector product with a vector of length cols.
    std::vector<double> apply(std::span<const double> v) const;
};

/**
 * sqrt(r*s/(r+s)) * ln(g(num)/g(den)), where g is the geometric mean and
 * r, s are the group sizes. Swapping the groups negates the result exactly.
 */
double balance(const Composition& x, std::span<const std::string> num_labels,
               std::span<const std::string> den_labels);

/// One balance per internal node of `tree`, in pre-order.
BalanceVector ilr_transform(const Composition& x, const PartitionTree& tree);

/**
 * Inverse of ilr_transform. Absolute scale is not recoverable from
 * log-ratios, so the result is closed to unit sum. Parts follow the tree's
 * leaf order.
 */
Composition ilr_inverse(const BalanceVector& y, const PartitionTree& tree);
Composition ilr_inverse(std::span<const double> y, const PartitionTree& tree);

/// ln(x_i / g(x)); components follow the composition's part order and sum to 0.
std::vector<double> clr_transform(const Composition& x);

/// sqrt(1/2) * ln(x_a / x_b).
double pairwise_logratio(const Composition& x, std::string_view a, std::string_view b);

/// Euclidean distance between ilr coordinates; the same for every tree.
double aitchison_distance(const Composition& x, const Composition& z, const PartitionTree& tree);

/// Columns follow the tree's leaf order.
ContrastMatrix contrast_matrix(const PartitionTree& tree);

}  // namespace coda
