#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace coda {

/**
 * One side of a partition node: either a single part (leaf) or a nested node.
 * `index` refers to PartitionTree::leaf_labels() for leaves and to
 * PartitionTree::nodes() otherwise.
 */
struct PartitionChild {
    bool is_leaf = true;
    std::size_t index = 0;

    friend bool operator==(const PartitionChild&, const PartitionChild&) = default;
};

/**
 * Internal node of a sequential binary partition. The numerator group is the
 * left side of the textual form, the denominator group the right side.
 * The leaf lists hold indices into PartitionTree::leaf_labels(), ascending.
 */
struct PartitionNode {
    PartitionChild numerator;
    PartitionChild denominator;
    std::vector<std::size_t> numerator_leaves;
    std::vector<std::size_t> denominator_leaves;

    friend bool operator==(const PartitionNode&, const PartitionNode&) = default;
};

/**
 * Sequential binary partition over D part labels.
 *
 * Nodes are stored in pre-order: nodes()[0] is the root and every node
 * precedes its numerator-side descendants, which precede its
 * denominator-side descendants. Node i defines balance coordinate i.
 * Leaf labels are ordered by their left-to-right appearance in the text.
 *
 * Trees are immutable once built; use parse_sbp() to construct one.
 */
class PartitionTree {
public:
    std::size_t dimension() const noexcept { return leaf_labels_.size(); }
    std::size_t coordinate_count() const noexcept { return nodes_.size(); }

    const std::vector<std::string>& leaf_labels() const noexcept { return leaf_labels_; }
    const std::vector<PartitionNode>& nodes() const noexcept { return nodes_; }

    /// Names of the balance coordinates, "y1".."y{D-1}" unless renamed.
    const std::vector<std::string>& coordinate_names() const noexcept { return coordinate_names_; }

    /// Copy of this tree with custom coordinate names (one per internal node).
    PartitionTree with_coordinate_names(std::vector<std::string> names) const;

    /// Stable 64-bit FNV-1a hash of the canonical text form.
    std::uint64_t fingerprint() const noexcept { return fingerprint_; }

    /// Leaf labels under the numerator / denominator side of node `node`.
    std::vector<std::string> numerator_labels(std::size_t node) const;
    std::vector<std::string> denominator_labels(std::size_t node) const;

    /// Structural equality: same shape, same labels on the same sides.
    friend bool operator==(const PartitionTree& a, const PartitionTree& b) {
        return a.leaf_labels_ == b.leaf_labels_ && a.nodes_ == b.nodes_;
    }

private:
    friend PartitionTree parse_sbp(std::string_view text);

    std::vector<std::string> leaf_labels_;
    std::vector<PartitionNode> nodes_;
    std::vector<std::string> coordinate_names_;
    std::uint64_t fingerprint_ = 0;
};

/**
 * Parse the partition DSL:
 *
 *     node  := '(' sub '|' sub ')'
 *     sub   := label | node
 *     label := [A-Za-z_][A-Za-z0-9_]*
 *
 * Whitespace between tokens is ignored. Throws SyntaxError (with the byte
 * offset of the offending token) or DuplicateLeaf.
 */
PartitionTree parse_sbp(std::string_view text);

/// Canonical text form without whitespace, e.g. "(TA|(NCL|CL))".
std::string format_sbp(const PartitionTree& tree);

/// Throws LabelMismatch unless the tree's leaves are exactly `expected_labels`.
void validate_tree(const PartitionTree& tree, std::span<const std::string> expected_labels);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

}  // namespace coda
