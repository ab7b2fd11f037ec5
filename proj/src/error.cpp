#include "coda/error.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace coda {

namespace {

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& s : items) {
        if (!out.empty()) {
            out += ", ";
        }
        out += s;
    }
    return out;
}

std::string describe(const std::vector<CompositionError::Issue>& issues) {
    std::ostringstream os;
    os << "invalid composition:";
    const char* sep = " ";
    for (const auto& issue : issues) {
        os << sep;
        sep = "; ";
        switch (issue.kind) {
        case CompositionError::Kind::NonPositivePart:
            os << "part '" << issue.label << "' is not strictly positive (" << issue.value << ")";
            break;
        case CompositionError::Kind::DuplicateLabel:
            os << "duplicate label '" << issue.label << "'";
            break;
        case CompositionError::Kind::EmptyLabel:
            os << "empty label";
            break;
        case CompositionError::Kind::TooFewParts:
            os << "at least 2 parts required";
            break;
        }
    }
    return os.str();
}

std::string describe(LabelError::Kind kind, const std::string& label) {
    switch (kind) {
    case LabelError::Kind::UnknownLabel:
        return "unknown label '" + label + "'";
    case LabelError::Kind::OverlappingGroups:
        return "label '" + label + "' appears in both groups";
    case LabelError::Kind::EmptyGroup:
        return "empty " + label + " group";
    case LabelError::Kind::SameLabel:
        return "log-ratio of label '" + label + "' with itself";
    }
    return "label error";
}

std::string hex(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex << v;
    return os.str();
}

}  // namespace

CompositionError::CompositionError(std::vector<Issue> issues, const std::string& context)
    : Error(context.empty() ? describe(issues) : context + ": " + describe(issues)), issues_(std::move(issues)) {}

bool CompositionError::has(Kind kind) const noexcept {
    return std::any_of(issues_.begin(), issues_.end(), [kind](const Issue& i) { return i.kind == kind; });
}

LabelError::LabelError(Kind kind, std::string label)
    : Error(describe(kind, label)), kind_(kind), label_(std::move(label)) {}

LabelMismatch::LabelMismatch(std::vector<std::string> missing, std::vector<std::string> extra)
    : Error("label mismatch: missing {" + join(missing) + "}, extra {" + join(extra) + "}"),
      missing_(std::move(missing)),
      extra_(std::move(extra)) {}

LengthMismatch::LengthMismatch(std::size_t expected, std::size_t actual)
    : Error("length mismatch: expected " + std::to_string(expected) + ", got " + std::to_string(actual)),
      expected_(expected),
      actual_(actual) {}

TreeMismatch::TreeMismatch(std::uint64_t expected, std::uint64_t actual)
    : Error("balance vector belongs to tree " + hex(actual) + ", not " + hex(expected)) {}

SyntaxError::SyntaxError(std::size_t offset, std::string expected)
    : Error("syntax error at byte offset " + std::to_string(offset) + ": expected " + expected),
      offset_(offset),
      expected_(std::move(expected)) {}

DuplicateLeaf::DuplicateLeaf(std::string label, std::size_t offset)
    : Error("duplicate leaf '" + label + "' at byte offset " + std::to_string(offset)),
      label_(std::move(label)),
      offset_(offset) {}

StatsError::StatsError(Kind kind, std::string message) : Error(std::move(message)), kind_(kind) {}

DatasetError::DatasetError(Kind kind, std::string message, std::size_t line, std::string column)
    : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      kind_(kind),
      line_(line),
      column_(std::move(column)) {}

ConfigError::ConfigError(std::string message, std::size_t line)
    : Error(line > 0 ? "config line " + std::to_string(line) + ": " + message : message), line_(line) {}

}  // namespace coda
