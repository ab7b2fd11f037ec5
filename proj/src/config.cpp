#include "coda/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "coda/error.hpp"
#include "coda/format.hpp"

namespace coda {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

std::vector<std::string> parse_list(const std::string& value, std::size_t line) {
    std::vector<std::string> items = split(value, ',');
    for (const std::string& item : items) {
        if (item.empty()) {
            throw ConfigError("empty item in list '" + value + "'", line);
        }
    }
    return items;
}

std::vector<std::string> parse_group(std::string side, std::size_t line) {
    side = trim(side);
    if (side.size() >= 2 && side.front() == '(' && side.back() == ')') {
        side = trim(side.substr(1, side.size() - 2));
    }
    std::vector<std::string> labels = split(side, '+');
    for (const std::string& label : labels) {
        if (label.empty()) {
            throw ConfigError("empty label in ratio group '" + side + "'", line);
        }
    }
    return labels;
}

std::vector<RatioSpec> parse_ratios(const std::string& value, std::size_t line) {
    std::vector<RatioSpec> out;
    for (const std::string& item : split(value, ';')) {
        if (item.empty()) {
            continue;
        }
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
            throw ConfigError("ratio '" + item + "' must look like 'name: A + B / C'", line);
        }
        RatioSpec spec;
        spec.name = trim(std::string_view(item).substr(0, colon));
        const std::vector<std::string> sides = split(std::string_view(item).substr(colon + 1), '/');
        if (spec.name.empty() || sides.size() != 2) {
            throw ConfigError("ratio '" + item + "' must look like 'name: A + B / C'", line);
        }
        spec.numerator_labels = parse_group(sides[0], line);
        spec.denominator_labels = parse_group(sides[1], line);
        out.push_back(std::move(spec));
    }
    return out;
}

ZeroMode parse_mode(const std::string& value, std::size_t line) {
    if (value == "reject") return ZeroMode::Reject;
    if (value == "drop_row") return ZeroMode::DropRow;
    if (value == "replace") return ZeroMode::Replace;
    throw ConfigError("zero_policy.mode must be reject, drop_row or replace, not '" + value + "'", line);
}

double parse_real(const std::string& value, std::size_t line) {
    double v = 0.0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
    if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
        throw ConfigError("'" + value + "' is not a number", line);
    }
    return v;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0) out += sep;
        out += items[i];
    }
    return out;
}

}  // namespace

std::string_view to_string(ZeroMode mode) {
    switch (mode) {
    case ZeroMode::Reject:
        return "reject";
    case ZeroMode::DropRow:
        return "drop_row";
    case ZeroMode::Replace:
        return "replace";
    }
    return "reject";
}

PartitionTree AnalysisConfig::tree() const {
    PartitionTree t = parse_sbp(sbp);
    if (!balance_names.empty()) {
        if (balance_names.size() != t.coordinate_count()) {
            throw ConfigError("balance_names lists " + std::to_string(balance_names.size()) +
                              " names but the partition has " + std::to_string(t.coordinate_count()) +
                              " balances");
        }
        t = t.with_coordinate_names(balance_names);
    }
    return t;
}

AnalysisConfig parse_config(std::string_view text) {
    AnalysisConfig cfg;
    std::set<std::string> seen;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string content = trim(std::string_view(raw).substr(0, hash));
        if (content.empty()) {
            continue;
        }
        const auto eq = content.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("expected 'key = value'", line);
        }
        const std::string key = trim(std::string_view(content).substr(0, eq));
        const std::string value = trim(std::string_view(content).substr(eq + 1));
        if (!seen.insert(key).second) {
            throw ConfigError("duplicate key '" + key + "'", line);
        }
        if (key == "parts") {
            cfg.parts = parse_list(value, line);
        } else if (key == "sbp") {
            cfg.sbp = value;
        } else if (key == "balance_names") {
            cfg.balance_names = parse_list(value, line);
        } else if (key == "standard_ratios") {
            cfg.standard_ratios = parse_ratios(value, line);
        } else if (key == "group_variable") {
            if (!value.empty()) cfg.group_variable = value;
        } else if (key == "group_positive") {
            if (!value.empty()) cfg.group_positive = value;
        } else if (key == "zero_policy.mode") {
            cfg.zero_policy.mode = parse_mode(value, line);
        } else if (key == "zero_policy.delta_fraction") {
            cfg.zero_policy.delta_fraction = parse_real(value, line);
        } else {
            throw ConfigError("unknown key '" + key + "'", line);
        }
    }
    if (cfg.parts.empty()) {
        throw ConfigError("missing required key 'parts'");
    }
    if (cfg.sbp.empty()) {
        throw ConfigError("missing required key 'sbp'");
    }
    return cfg;
}

AnalysisConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string format_config(const AnalysisConfig& config) {
    std::string out;
    out += "parts = " + join(config.parts, ", ") + "\n";
    out += "sbp = " + config.sbp + "\n";
    if (!config.balance_names.empty()) {
        out += "balance_names = " + join(config.balance_names, ", ") + "\n";
    }
    if (!config.standard_ratios.empty()) {
        std::vector<std::string> items;
        for (const RatioSpec& r : config.standard_ratios) {
            items.push_back(r.name + ": " + join(r.numerator_labels, " + ") + " / " +
                            join(r.denominator_labels, " + "));
        }
        out += "standard_ratios = " + join(items, "; ") + "\n";
    }
    if (config.group_variable) {
        out += "group_variable = " + *config.group_variable + "\n";
    }
    if (config.group_positive) {
        out += "group_positive = " + *config.group_positive + "\n";
    }
    out += "zero_policy.mode = " + std::string(to_string(config.zero_policy.mode)) + "\n";
    out += "zero_policy.delta_fraction = " + format_double(config.zero_policy.delta_fraction) + "\n";
    return out;
}

void validate_config(const AnalysisConfig& config) {
    std::set<std::string> parts;
    for (const std::string& p : config.parts) {
        if (!parts.insert(p).second) {
            throw ConfigError("part '" + p + "' listed twice");
        }
        if (p == "firm_id") {
            throw ConfigError("'firm_id' is reserved and cannot be a part");
        }
    }
    if (config.parts.size() < 2) {
        throw ConfigError("at least two parts are required");
    }
    const PartitionTree tree = config.tree();
    validate_tree(tree, config.parts);

    std::set<std::string> names;
    for (const std::string& n : tree.coordinate_names()) {
        names.insert(n);
    }
    for (const RatioSpec& r : config.standard_ratios) {
        validate_ratio_spec(r);
        for (const auto* group : {&r.numerator_labels, &r.denominator_labels}) {
            for (const std::string& label : *group) {
                if (!parts.contains(label)) {
                    throw ConfigError("ratio '" + r.name + "' uses '" + label + "', which is not a part");
                }
            }
        }
        names.insert(r.name);
    }
    if (names.size() != tree.coordinate_count() + config.standard_ratios.size()) {
        throw ConfigError("balance and ratio names must be unique");
    }
    if (config.group_variable && parts.contains(*config.group_variable)) {
        throw ConfigError("group_variable '" + *config.group_variable + "' is also a part");
    }
    const double delta = config.zero_policy.delta_fraction;
    if (!(delta > 0.0 && delta < 1.0)) {
        throw ConfigError("zero_policy.delta_fraction must lie in (0, 1)");
    }
}

}  // namespace coda
