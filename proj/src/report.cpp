#include "coda/report.hpp"

#include <algorithm>

#include "coda/error.hpp"
#include "coda/format.hpp"
#include "json.hpp"

namespace coda {

namespace {

using ordered_json = nlohmann::ordered_json;

template <typename F>
void record(VariableReport& v, const char* what, std::optional<double>& slot, F&& compute) {
    try {
        slot = compute();
    } catch (const Error& e) {
        v.degenerate[what] = e.what();
    }
}

void describe_variable(VariableReport& v) {
    const std::span<const double> data = v.values;
    record(v, "mean", v.mean, [&] { return stats::mean(data); });
    record(v, "sd", v.sd, [&] { return stats::sample_sd(data); });
    record(v, "skewness", v.skewness, [&] { return stats::skewness(data); });
    record(v, "kurtosis", v.kurtosis, [&] { return stats::excess_kurtosis(data); });
    try {
        v.box = stats::box_summary(data);
    } catch (const Error& e) {
        v.degenerate["box"] = e.what();
    }
}

void compare_groups(VariableReport& v, const std::vector<bool>& in_positive) {
    std::vector<double> a;
    std::vector<double> b;
    for (std::size_t i = 0; i < v.values.size(); ++i) {
        (in_positive[i] ? a : b).push_back(v.values[i]);
    }
    try {
        v.comparison = stats::two_sample_t_equal_var(a, b);
    } catch (const Error& e) {
        v.degenerate["t_test"] = e.what();
    }
}

std::vector<std::string> level_order(const FirmDataset& ds, const std::string& variable) {
    std::vector<std::string> levels;
    for (const Firm& f : ds.firms) {
        const std::string& level = f.externals.at(variable);
        if (std::find(levels.begin(), levels.end(), level) == levels.end()) {
            levels.push_back(level);
        }
    }
    return levels;
}

ordered_json opt(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json config_json(const AnalysisConfig& c) {
    ordered_json j;
    j["parts"] = c.parts;
    j["sbp"] = format_sbp(parse_sbp(c.sbp));
    j["balance_names"] = c.tree().coordinate_names();
    ordered_json ratios = ordered_json::array();
    for (const RatioSpec& r : c.standard_ratios) {
        ordered_json rj;
        rj["name"] = r.name;
        rj["numerator"] = r.numerator_labels;
        rj["denominator"] = r.denominator_labels;
        ratios.push_back(std::move(rj));
    }
    j["standard_ratios"] = std::move(ratios);
    j["group_variable"] = c.group_variable ? ordered_json(*c.group_variable) : ordered_json(nullptr);
    j["group_positive"] = c.group_positive ? ordered_json(*c.group_positive) : ordered_json(nullptr);
    j["zero_policy"] = {{"mode", std::string(to_string(c.zero_policy.mode))},
                        {"delta_fraction", c.zero_policy.delta_fraction}};
    return j;
}

ordered_json box_json(const stats::BoxSummary& b) {
    ordered_json j;
    j["min"] = b.min;
    j["q1"] = b.q1;
    j["median"] = b.median;
    j["q3"] = b.q3;
    j["max"] = b.max;
    j["iqr"] = b.iqr;
    j["inner_fences"] = {b.inner_lower, b.inner_upper};
    j["outer_fences"] = {b.outer_lower, b.outer_upper};
    j["whiskers"] = {b.whisker_low, b.whisker_high};
    j["n_outliers"] = b.outliers.size();
    j["n_extreme"] = b.extreme_outliers.size();
    j["outliers"] = b.outliers;
    j["extreme_outliers"] = b.extreme_outliers;
    return j;
}

ordered_json variable_json(const VariableReport& v) {
    ordered_json j;
    j["name"] = v.name;
    j["kind"] = v.kind == VariableKind::Balance ? "balance" : "ratio";
    j["permuted"] = v.permuted;
    j["numerator"] = v.numerator;
    j["denominator"] = v.denominator;
    j["n"] = v.values.size();
    j["mean"] = opt(v.mean);
    j["sd"] = opt(v.sd);
    j["skewness"] = opt(v.skewness);
    j["kurtosis"] = opt(v.kurtosis);
    j["box"] = v.box ? box_json(*v.box) : ordered_json(nullptr);
    if (v.comparison) {
        const stats::GroupComparison& g = *v.comparison;
        j["comparison"] = {{"t", g.t_value},
                           {"df", g.df},
                           {"p", g.p_value},
                           {"r_squared", g.r_squared},
                           {"mean_positive", g.mean_a},
                           {"mean_other", g.mean_b},
                           {"n_positive", g.n_a},
                           {"n_other", g.n_b}};
    } else {
        j["comparison"] = nullptr;
    }
    ordered_json deg = ordered_json::object();
    for (const auto& [key, reason] : v.degenerate) {
        deg[key] = reason;
    }
    j["degenerate"] = std::move(deg);
    return j;
}

std::string emit_json(const AnalysisReport& r) {
    ordered_json j;
    ordered_json meta;
    meta["n"] = r.n;
    meta["dropped_rows"] = r.dropped_rows;
    meta["replaced_cells"] = r.replaced_cells;
    meta["timestamp"] = r.timestamp ? ordered_json(*r.timestamp) : ordered_json(nullptr);
    meta["config"] = config_json(r.config);
    j["metadata"] = std::move(meta);
    if (r.groups) {
        j["groups"] = {{"variable", r.groups->variable},
                       {"positive_level", r.groups->positive_level},
                       {"other_level", r.groups->other_level},
                       {"n_positive", r.groups->n_positive},
                       {"n_other", r.groups->n_other}};
    } else {
        j["groups"] = nullptr;
    }
    j["group_note"] = r.group_note ? ordered_json(*r.group_note) : ordered_json(nullptr);
    ordered_json vars = ordered_json::array();
    for (const VariableReport& v : r.variables) {
        vars.push_back(variable_json(v));
    }
    j["variables"] = std::move(vars);
    return j.dump(2) + "\n";
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') out += '"';
    }
    return out + "\"";
}

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::string emit_csv(const AnalysisReport& r) {
    std::string out = "variable,n,mean,sd,skewness,kurtosis,n_outliers,n_extreme,t,df,p,r_squared\n";
    for (const VariableReport& v : r.variables) {
        out += csv_field(v.name);
        out += ',' + std::to_string(v.values.size());
        out += ',' + cell(v.mean);
        out += ',' + cell(v.sd);
        out += ',' + cell(v.skewness);
        out += ',' + cell(v.kurtosis);
        out += ',' + (v.box ? std::to_string(v.box->outliers.size()) : std::string());
        out += ',' + (v.box ? std::to_string(v.box->extreme_outliers.size()) : std::string());
        if (v.comparison) {
            out += ',' + format_double(v.comparison->t_value);
            out += ',' + std::to_string(v.comparison->df);
            out += ',' + format_double(v.comparison->p_value);
            out += ',' + format_double(v.comparison->r_squared);
        } else {
            out += ",,,,";
        }
        out += '\n';
    }
    return out;
}

}  // namespace

AnalysisReport run_analysis(const FirmDataset& ds, const AnalysisConfig& config, std::optional<std::string> timestamp) {
    validate_config(config);
    const PartitionTree tree = config.tree();

    AnalysisReport report;
    report.config = config;
    report.n = ds.n();
    report.dropped_rows = ds.dropped_rows;
    report.replaced_cells = ds.replaced_cells;
    report.timestamp = std::move(timestamp);

    for (std::size_t i = 0; i < tree.coordinate_count(); ++i) {
        VariableReport v;
        v.name = tree.coordinate_names()[i];
        v.kind = VariableKind::Balance;
        v.numerator = tree.numerator_labels(i);
        v.denominator = tree.denominator_labels(i);
        VariableReport p = v;
        p.name += "p";
        p.permuted = true;
        std::swap(p.numerator, p.denominator);
        report.variables.push_back(std::move(v));
        report.variables.push_back(std::move(p));
    }
    for (const RatioSpec& spec : config.standard_ratios) {
        for (const RatioSpec& s : {spec, invert_spec(spec)}) {
            VariableReport v;
            v.name = s.display_name();
            v.kind = VariableKind::Ratio;
            v.permuted = s.permuted;
            v.numerator = s.numerator_labels;
            v.denominator = s.denominator_labels;
            report.variables.push_back(std::move(v));
        }
    }

    const std::size_t balances = tree.coordinate_count();
    for (VariableReport& v : report.variables) {
        v.values.reserve(ds.n());
    }
    for (const Firm& firm : ds.firms) {
        const BalanceVector y = ilr_transform(firm.composition, tree);
        for (std::size_t i = 0; i < balances; ++i) {
            report.variables[2 * i].values.push_back(y.coords[i].value);
            report.variables[2 * i + 1].values.push_back(-y.coords[i].value);
        }
        for (std::size_t r = 0; r < config.standard_ratios.size(); ++r) {
            const RatioSpec& spec = config.standard_ratios[r];
            report.variables[2 * balances + 2 * r].values.push_back(eval_ratio(firm.composition, spec));
            report.variables[2 * balances + 2 * r + 1].values.push_back(
                eval_ratio(firm.composition, invert_spec(spec)));
        }
    }

    for (VariableReport& v : report.variables) {
        describe_variable(v);
    }

    if (config.group_variable) {
        const std::string& variable = *config.group_variable;
        const auto groups = split_by_group(ds, variable);
        if (groups.size() != 2) {
            report.group_note = "group variable '" + variable + "' has " + std::to_string(groups.size()) +
                                " level(s); exactly 2 are needed for a two-sample comparison";
        } else {
            std::vector<std::string> levels = level_order(ds, variable);
            if (config.group_positive) {
                if (!groups.contains(*config.group_positive)) {
                    throw ConfigError("group_positive '" + *config.group_positive + "' is not a level of '" +
                                      variable + "'");
                }
                if (levels[0] != *config.group_positive) {
                    std::swap(levels[0], levels[1]);
                }
            }
            GroupSection section{variable, levels[0], levels[1], groups.at(levels[0]).n(),
                                 groups.at(levels[1]).n()};
            std::vector<bool> in_positive;
            in_positive.reserve(ds.n());
            for (const Firm& f : ds.firms) {
                in_positive.push_back(f.externals.at(variable) == section.positive_level);
            }
            for (VariableReport& v : report.variables) {
                compare_groups(v, in_positive);
            }
            report.groups = std::move(section);
        }
    }
    return report;
}

std::string emit_report(const AnalysisReport& report, ReportFormat format) {
    return format == ReportFormat::Json ? emit_json(report) : emit_csv(report);
}

std::string emit_transform_csv(const FirmDataset& ds, const PartitionTree& tree) {
    std::string out = "firm_id";
    for (const std::string& name : tree.coordinate_names()) {
        out += ',' + name;
    }
    out += '\n';
    for (const Firm& firm : ds.firms) {
        out += csv_field(firm.id);
        for (const Coordinate& c : ilr_transform(firm.composition, tree).coords) {
            out += ',' + format_double(c.value);
        }
        out += '\n';
    }
    return out;
}

}  // namespace coda
