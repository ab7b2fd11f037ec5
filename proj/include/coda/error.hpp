#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace coda {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A raw part list failed composition validation. Carries every offending part,
/// not just the first one found.
class CompositionError : public Error {
public:
    enum class Kind { NonPositivePart, DuplicateLabel, EmptyLabel, TooFewParts };

    struct Issue {
        Kind kind;
        std::string label;
        double value = 0.0;
    };

    /// `context` (e.g. "line 3, firm f1") is prefixed to the message when set.
    explicit CompositionError(std::vector<Issue> issues, const std::string& context = {});

    const std::vector<Issue>& issues() const noexcept { return issues_; }
    bool has(Kind kind) const noexcept;

private:
    std::vector<Issue> issues_;
};

/// A label argument does not fit the composition or the group layout.
class LabelError : public Error {
public:
    enum class Kind { UnknownLabel, OverlappingGroups, EmptyGroup, SameLabel };

    LabelError(Kind kind, std::string label);

    Kind kind() const noexcept { return kind_; }
    const std::string& label() const noexcept { return label_; }

private:
    Kind kind_;
    std::string label_;
};

/// Leaf labels of a partition tree differ from the expected label set.
class LabelMismatch : public Error {
public:
    LabelMismatch(std::vector<std::string> missing, std::vector<std::string> extra);

    /// Expected labels the tree does not contain.
    const std::vector<std::string>& missing() const noexcept { return missing_; }
    /// Tree labels that were not expected.
    const std::vector<std::string>& extra() const noexcept { return extra_; }

private:
    std::vector<std::string> missing_;
    std::vector<std::string> extra_;
};

class LengthMismatch : public Error {
public:
    LengthMismatch(std::size_t expected, std::size_t actual);

    std::size_t expected() const noexcept { return expected_; }
    std::size_t actual() const noexcept { return actual_; }

private:
    std::size_t expected_;
    std::size_t actual_;
};

/// A balance vector is paired with a tree other than the one that produced it.
class TreeMismatch : public Error {
public:
    TreeMismatch(std::uint64_t expected, std::uint64_t actual);
};

/// Malformed partition-tree text. `offset` is a byte offset into the input.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t offset, std::string expected);

    std::size_t offset() const noexcept { return offset_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::string expected_;
};

class DuplicateLeaf : public Error {
public:
    DuplicateLeaf(std::string label, std::size_t offset);

    const std::string& label() const noexcept { return label_; }
    std::size_t offset() const noexcept { return offset_; }

private:
    std::string label_;
    std::size_t offset_;
};

class StatsError : public Error {
public:
    enum class Kind {
        EmptyData,
        TooFewObservations,
        ZeroVariance,
        ZeroPooledVariance,
        InvalidDf,
        InvalidProbability,
        SingleGroup,
        NotBinary,
    };

    StatsError(Kind kind, std::string message);

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Failure while reading or preparing a firm dataset. `line` is 1-based
/// (the header is line 1); 0 when not tied to a line.
class DatasetError : public Error {
public:
    enum class Kind {
        FileNotFound,
        EmptyFile,
        MissingColumn,
        MalformedNumber,
        MalformedRow,
        DuplicateFirmId,
        ZeroCell,
        NoPositiveValue,
        AllRowsDropped,
        UnknownVariable,
        MissingValue,
    };

    DatasetError(Kind kind, std::string message, std::size_t line = 0, std::string column = {});

    Kind kind() const noexcept { return kind_; }
    std::size_t line() const noexcept { return line_; }
    const std::string& column() const noexcept { return column_; }

private:
    Kind kind_;
    std::size_t line_;
    std::string column_;
};

/// Invalid analysis configuration file or inconsistent settings.
class ConfigError : public Error {
public:
    ConfigError(std::string message, std::size_t line = 0);

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace coda
