#include "coda/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>

#include "coda/error.hpp"
#include "coda/format.hpp"

namespace coda {

namespace {

struct CsvRecord {
    std::vector<std::string> fields;
    std::size_t line = 0;
};

// Reads one record; quoted fields may span lines and use "" for a quote.
// Returns nullopt at end of input.
std::optional<CsvRecord> next_record(std::istream& in, std::size_t& line) {
    if (in.peek() == std::char_traits<char>::eof()) {
        return std::nullopt;
    }
    CsvRecord rec;
    rec.line = ++line;
    std::string field;
    bool quoted = false;
    bool was_quoted = false;
    char c = 0;
    while (in.get(c)) {
        if (quoted) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get(c);
                    field += '"';
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        if (c == '"' && field.empty() && !was_quoted) {
            quoted = true;
            was_quoted = true;
        } else if (c == ',') {
            rec.fields.push_back(std::move(field));
            field.clear();
            was_quoted = false;
        } else if (c == '\n') {
            break;
        } else if (c != '\r') {
            field += c;
        }
    }
    if (quoted) {
        throw DatasetError(DatasetError::Kind::MalformedRow, "unterminated quoted field", rec.line);
    }
    rec.fields.push_back(std::move(field));
    return rec;
}

bool is_blank(const CsvRecord& rec) {
    return rec.fields.size() == 1 && rec.fields[0].find_first_not_of(" \t") == std::string::npos;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_decimal(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) {
        return std::nullopt;
    }
    const char* begin = t.data();
    if (*begin == '+') ++begin;
    double v = 0.0;
    const auto res = std::from_chars(begin, t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size() || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

std::string cell_ref(const RawRow& row, const std::string& part) { return row.firm_id + "/" + part; }

}  // namespace

RawTable read_csv_table(std::istream& in, const AnalysisConfig& config) {
    std::size_t line = 0;
    std::optional<CsvRecord> header = next_record(in, line);
    if (!header || is_blank(*header)) {
        throw DatasetError(DatasetError::Kind::EmptyFile, "missing header row", 1);
    }
    std::vector<std::string> names;
    for (const std::string& f : header->fields) {
        names.push_back(trim(f));
    }
    // Strip a UTF-8 byte order mark.
    if (!names.empty() && names[0].rfind("\xEF\xBB\xBF", 0) == 0) {
        names[0].erase(0, 3);
    }
    auto column_of = [&names](const std::string& name) -> std::size_t {
        const auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) {
            throw DatasetError(DatasetError::Kind::MissingColumn, "missing column '" + name + "'", 1, name);
        }
        return static_cast<std::size_t>(it - names.begin());
    };

    const std::size_t id_col = column_of("firm_id");
    std::vector<std::size_t> part_cols;
    for (const std::string& p : config.parts) {
        part_cols.push_back(column_of(p));
    }
    if (config.group_variable) {
        column_of(*config.group_variable);
    }

    RawTable table;
    table.part_labels = config.parts;
    std::map<std::string, std::size_t> ids;
    while (auto rec = next_record(in, line)) {
        if (is_blank(*rec)) {
            continue;
        }
        if (rec->fields.size() != names.size()) {
            throw DatasetError(DatasetError::Kind::MalformedRow,
                               "expected " + std::to_string(names.size()) + " fields, found " +
                                   std::to_string(rec->fields.size()),
                               rec->line);
        }
        RawRow row;
        row.line = rec->line;
        row.firm_id = trim(rec->fields[id_col]);
        if (row.firm_id.empty()) {
            throw DatasetError(DatasetError::Kind::MissingValue, "empty firm_id", rec->line, "firm_id");
        }
        if (auto [it, inserted] = ids.emplace(row.firm_id, rec->line); !inserted) {
            throw DatasetError(DatasetError::Kind::DuplicateFirmId,
                               "duplicate firm_id '" + row.firm_id + "' (first seen on line " +
                                   std::to_string(it->second) + ")",
                               rec->line, "firm_id");
        }
        std::vector<CompositionError::Issue> negatives;
        for (std::size_t k = 0; k < part_cols.size(); ++k) {
            const std::optional<double> v = parse_decimal(rec->fields[part_cols[k]]);
            if (!v) {
                throw DatasetError(DatasetError::Kind::MalformedNumber,
                                   "column '" + config.parts[k] + "': '" + rec->fields[part_cols[k]] +
                                       "' is not a decimal number",
                                   rec->line, config.parts[k]);
            }
            if (*v < 0.0) {
                negatives.push_back({CompositionError::Kind::NonPositivePart, config.parts[k], *v});
            }
            row.values.push_back(*v == 0.0 ? 0.0 : *v);
        }
        if (!negatives.empty()) {
            throw CompositionError(std::move(negatives),
                                   "line " + std::to_string(rec->line) + ", firm " + row.firm_id);
        }
        for (std::size_t c = 0; c < names.size(); ++c) {
            if (c != id_col && std::find(part_cols.begin(), part_cols.end(), c) == part_cols.end()) {
                row.externals.emplace(names[c], trim(rec->fields[c]));
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

ZeroPolicyResult apply_zero_policy(RawTable table, const ZeroPolicy& policy) {
    ZeroPolicyResult result;
    const std::size_t d = table.part_labels.size();

    std::vector<std::string> zero_cells;
    for (const RawRow& row : table.rows) {
        for (std::size_t k = 0; k < d; ++k) {
            if (row.values[k] == 0.0) {
                zero_cells.push_back(cell_ref(row, table.part_labels[k]));
            }
        }
    }
    if (zero_cells.empty()) {
        result.table = std::move(table);
        return result;
    }

    switch (policy.mode) {
    case ZeroMode::Reject: {
        std::string list;
        for (const std::string& c : zero_cells) {
            list += (list.empty() ? "" : ", ") + c;
        }
        throw DatasetError(DatasetError::Kind::ZeroCell,
                           std::to_string(zero_cells.size()) + " zero cell(s) under the reject policy: " + list);
    }
    case ZeroMode::DropRow: {
        const std::size_t before = table.rows.size();
        std::erase_if(table.rows, [](const RawRow& row) {
            return std::any_of(row.values.begin(), row.values.end(), [](double v) { return v == 0.0; });
        });
        result.dropped_rows = before - table.rows.size();
        if (table.rows.empty()) {
            throw DatasetError(DatasetError::Kind::AllRowsDropped, "every row contains a zero part");
        }
        break;
    }
    case ZeroMode::Replace: {
        for (std::size_t k = 0; k < d; ++k) {
            double smallest = std::numeric_limits<double>::infinity();
            for (const RawRow& row : table.rows) {
                if (row.values[k] > 0.0) {
                    smallest = std::min(smallest, row.values[k]);
                }
            }
            const double fill = policy.delta_fraction * smallest;
            for (RawRow& row : table.rows) {
                if (row.values[k] == 0.0) {
                    if (!std::isfinite(smallest)) {
                        throw DatasetError(DatasetError::Kind::NoPositiveValue,
                                           "column '" + table.part_labels[k] + "' has no positive value to scale",
                                           0, table.part_labels[k]);
                    }
                    row.values[k] = fill;
                    ++result.replaced_cells;
                }
            }
        }
        break;
    }
    }
    result.table = std::move(table);
    return result;
}

FirmDataset load_dataset_csv(std::istream& in, const AnalysisConfig& config) {
    ZeroPolicyResult prepared = apply_zero_policy(read_csv_table(in, config), config.zero_policy);
    FirmDataset ds;
    ds.part_labels = prepared.table.part_labels;
    ds.dropped_rows = prepared.dropped_rows;
    ds.replaced_cells = prepared.replaced_cells;
    ds.firms.reserve(prepared.table.rows.size());
    std::vector<Part> parts(ds.part_labels.size());
    for (RawRow& row : prepared.table.rows) {
        for (std::size_t k = 0; k < parts.size(); ++k) {
            parts[k] = Part{ds.part_labels[k], row.values[k]};
        }
        try {
            ds.firms.push_back(Firm{row.firm_id, Composition::from_parts(parts), std::move(row.externals)});
        } catch (const CompositionError& e) {
            throw CompositionError(e.issues(), "line " + std::to_string(row.line) + ", firm " + row.firm_id);
        }
    }
    return ds;
}

FirmDataset load_dataset_csv(const std::filesystem::path& path, const AnalysisConfig& config) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DatasetError(DatasetError::Kind::FileNotFound, "cannot open data file " + path.string());
    }
    return load_dataset_csv(in, config);
}

std::map<std::string, FirmDataset> split_by_group(const FirmDataset& ds, const std::string& variable) {
    std::map<std::string, FirmDataset> groups;
    for (const Firm& firm : ds.firms) {
        const auto it = firm.externals.find(variable);
        if (it == firm.externals.end()) {
            throw DatasetError(DatasetError::Kind::UnknownVariable, "unknown variable '" + variable + "'", 0,
                               variable);
        }
        if (it->second.empty()) {
            throw DatasetError(DatasetError::Kind::MissingValue,
                               "firm '" + firm.id + "' has no value for '" + variable + "'", 0, variable);
        }
        FirmDataset& group = groups[it->second];
        if (group.part_labels.empty()) {
            group.part_labels = ds.part_labels;
        }
        group.firms.push_back(firm);
    }
    return groups;
}

}  // namespace coda
