#include "coda/partition_tree.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <utility>

#include "coda/error.hpp"

namespace coda {

namespace {

bool is_label_start(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool is_label_char(char c) { return is_label_start(c) || (c >= '0' && c <= '9'); }

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

class SbpParser {
public:
    explicit SbpParser(std::string_view text) : text_(text) {}

    void parse_root(std::vector<std::string>& labels, std::vector<PartitionNode>& nodes) {
        labels_ = &labels;
        nodes_ = &nodes;
        skip_space();
        if (peek() != '(') {
            throw SyntaxError(pos_, "'('");
        }
        parse_node();
        skip_space();
        if (pos_ != text_.size()) {
            throw SyntaxError(pos_, "end of input");
        }
    }

private:
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_space() {
        while (pos_ < text_.size() && is_space(text_[pos_])) {
            ++pos_;
        }
    }

    void expect(char c) {
        skip_space();
        if (peek() != c || pos_ >= text_.size()) {
            throw SyntaxError(pos_, std::string("'") + c + "'");
        }
        ++pos_;
    }

    // Returns the node index; leaf lists are filled after both sides are known.
    std::size_t parse_node() {
        expect('(');
        const std::size_t index = nodes_->size();
        nodes_->emplace_back();
        PartitionChild num = parse_sub();
        expect('|');
        PartitionChild den = parse_sub();
        expect(')');

        PartitionNode& node = (*nodes_)[index];
        node.numerator = num;
        node.denominator = den;
        node.numerator_leaves = leaves_of(num);
        node.denominator_leaves = leaves_of(den);
        return index;
    }

    PartitionChild parse_sub() {
        skip_space();
        if (peek() == '(' && pos_ < text_.size()) {
            return PartitionChild{false, parse_node()};
        }
        if (pos_ >= text_.size() || !is_label_start(peek())) {
            throw SyntaxError(pos_, "label or '('");
        }
        const std::size_t start = pos_;
        while (pos_ < text_.size() && is_label_char(text_[pos_])) {
            ++pos_;
        }
        std::string label(text_.substr(start, pos_ - start));
        if (!seen_.insert(label).second) {
            throw DuplicateLeaf(label, start);
        }
        labels_->push_back(std::move(label));
        return PartitionChild{true, labels_->size() - 1};
    }

    std::vector<std::size_t> leaves_of(const PartitionChild& child) const {
        if (child.is_leaf) {
            return {child.index};
        }
        const PartitionNode& n = (*nodes_)[child.index];
        std::vector<std::size_t> out = n.numerator_leaves;
        out.insert(out.end(), n.denominator_leaves.begin(), n.denominator_leaves.end());
        std::sort(out.begin(), out.end());
        return out;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::vector<std::string>* labels_ = nullptr;
    std::vector<PartitionNode>* nodes_ = nullptr;
    std::set<std::string> seen_;
};

void format_child(const PartitionTree& tree, const PartitionChild& child, std::string& out);

void format_node(const PartitionTree& tree, std::size_t index, std::string& out) {
    const PartitionNode& node = tree.nodes()[index];
    out += '(';
    format_child(tree, node.numerator, out);
    out += '|';
    format_child(tree, node.denominator, out);
    out += ')';
}

void format_child(const PartitionTree& tree, const PartitionChild& child, std::string& out) {
    if (child.is_leaf) {
        out += tree.leaf_labels()[child.index];
    } else {
        format_node(tree, child.index, out);
    }
}

std::vector<std::string> labels_at(const PartitionTree& tree, const std::vector<std::size_t>& idx) {
    std::vector<std::string> out;
    out.reserve(idx.size());
    for (std::size_t i : idx) {
        out.push_back(tree.leaf_labels()[i]);
    }
    return out;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

PartitionTree parse_sbp(std::string_view text) {
    PartitionTree tree;
    SbpParser(text).parse_root(tree.leaf_labels_, tree.nodes_);
    tree.coordinate_names_.reserve(tree.nodes_.size());
    for (std::size_t i = 0; i < tree.nodes_.size(); ++i) {
        tree.coordinate_names_.push_back("y" + std::to_string(i + 1));
    }
    tree.fingerprint_ = fnv1a64(format_sbp(tree));
    return tree;
}

std::string format_sbp(const PartitionTree& tree) {
    std::string out;
    if (!tree.nodes().empty()) {
        format_node(tree, 0, out);
    }
    return out;
}

PartitionTree PartitionTree::with_coordinate_names(std::vector<std::string> names) const {
    if (names.size() != nodes_.size()) {
        throw LengthMismatch(nodes_.size(), names.size());
    }
    PartitionTree copy = *this;
    copy.coordinate_names_ = std::move(names);
    return copy;
}

std::vector<std::string> PartitionTree::numerator_labels(std::size_t node) const {
    return labels_at(*this, nodes_.at(node).numerator_leaves);
}

std::vector<std::string> PartitionTree::denominator_labels(std::size_t node) const {
    return labels_at(*this, nodes_.at(node).denominator_leaves);
}

void validate_tree(const PartitionTree& tree, std::span<const std::string> expected_labels) {
    const std::set<std::string> have(tree.leaf_labels().begin(), tree.leaf_labels().end());
    const std::set<std::string> want(expected_labels.begin(), expected_labels.end());
    std::vector<std::string> missing;
    std::vector<std::string> extra;
    std::set_difference(want.begin(), want.end(), have.begin(), have.end(), std::back_inserter(missing));
    std::set_difference(have.begin(), have.end(), want.begin(), want.end(), std::back_inserter(extra));
    if (!missing.empty() || !extra.empty()) {
        throw LabelMismatch(std::move(missing), std::move(extra));
    }
}

}  // namespace coda
