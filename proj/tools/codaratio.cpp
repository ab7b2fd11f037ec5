// codaratio: log-ratio (balance) coordinates versus standard financial ratios.
//
//   codaratio analyze   --data firms.csv --config study.cfg [--out report.json|report.csv] [--svg plots.svg]
//   codaratio transform --data firms.csv --config study.cfg
//   codaratio validate  --data firms.csv --config study.cfg
//   codaratio demo table1
//
// Exit codes: 0 success, 1 invalid data or configuration, 2 usage error.

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "coda/boxplot_svg.hpp"
#include "coda/classic_ratios.hpp"
#include "coda/config.hpp"
#include "coda/dataset.hpp"
#include "coda/error.hpp"
#include "coda/report.hpp"

namespace {

constexpr int kExitInvalid = 1;
constexpr int kExitUsage = 2;

struct Inputs {
    std::string data;
    std::string config;
};

void add_inputs(CLI::App& cmd, Inputs& in) {
    cmd.add_option("--data", in.data, "firm-level CSV file")->required();
    cmd.add_option("--config", in.config, "analysis configuration file")->required();
}

std::pair<coda::AnalysisConfig, coda::FirmDataset> load(const Inputs& in) {
    coda::AnalysisConfig config = coda::load_config(in.config);
    coda::validate_config(config);
    coda::FirmDataset ds = coda::load_dataset_csv(std::filesystem::path(in.data), config);
    return {std::move(config), std::move(ds)};
}

// SOURCE_DATE_EPOCH keeps reports reproducible; no timestamp otherwise.
std::optional<std::string> report_timestamp(const std::string& explicit_ts) {
    if (!explicit_ts.empty()) {
        return explicit_ts;
    }
    const char* epoch = std::getenv("SOURCE_DATE_EPOCH");
    if (epoch == nullptr || *epoch == '\0') {
        return std::nullopt;
    }
    const std::time_t t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return std::string(buf);
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw coda::Error("cannot write " + path);
    }
    out << bytes;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int run_analyze(const Inputs& in, const std::string& out_path, const std::string& svg_path,
                const std::string& timestamp) {
    auto [config, ds] = load(in);
    const coda::AnalysisReport report = coda::run_analysis(ds, config, report_timestamp(timestamp));
    const auto format = ends_with(out_path, ".csv") ? coda::ReportFormat::Csv : coda::ReportFormat::Json;
    const std::string bytes = coda::emit_report(report, format);
    if (out_path.empty()) {
        std::cout << bytes;
    } else {
        write_file(out_path, bytes);
    }
    if (!svg_path.empty()) {
        std::vector<coda::NamedBox> boxes;
        for (const coda::VariableReport& v : report.variables) {
            if (v.box) {
                boxes.push_back({v.name, *v.box});
            }
        }
        write_file(svg_path, coda::emit_boxplot_svg(boxes));
    }
    return 0;
}

int run_transform(const Inputs& in) {
    auto [config, ds] = load(in);
    std::cout << coda::emit_transform_csv(ds, config.tree());
    return 0;
}

int run_validate(const Inputs& in) {
    auto [config, ds] = load(in);
    std::cout << "ok: " << ds.n() << " firms, " << ds.part_labels.size() << " parts";
    if (ds.dropped_rows > 0) {
        std::cout << ", " << ds.dropped_rows << " row(s) dropped for zeros";
    }
    if (ds.replaced_cells > 0) {
        std::cout << ", " << ds.replaced_cells << " zero cell(s) replaced";
    }
    std::cout << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compositional (log-ratio) financial ratios for sector analysis"};
    app.require_subcommand(1);

    Inputs analyze_in;
    std::string out_path;
    std::string svg_path;
    std::string timestamp;
    auto* analyze = app.add_subcommand("analyze", "descriptive statistics, outliers and group tests");
    add_inputs(*analyze, analyze_in);
    analyze->add_option("--out", out_path, "report path; .csv for CSV, JSON otherwise (default: JSON to stdout)");
    analyze->add_option("--svg", svg_path, "write box plots of every variable to this SVG file");
    analyze->add_option("--timestamp", timestamp, "timestamp recorded in the report metadata");

    Inputs transform_in;
    auto* transform = app.add_subcommand("transform", "print firm_id and balance coordinates as CSV");
    add_inputs(*transform, transform_in);

    Inputs validate_in;
    auto* validate = app.add_subcommand("validate", "check data and configuration");
    add_inputs(*validate, validate_in);

    auto* demo = app.add_subcommand("demo", "built-in demonstrations");
    demo->require_subcommand(1);
    auto* table1 = demo->add_subcommand("table1", "ten-firm ray geometry example as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*analyze) return run_analyze(analyze_in, out_path, svg_path, timestamp);
        if (*transform) return run_transform(transform_in);
        if (*validate) return run_validate(validate_in);
        if (*table1) {
            std::cout << coda::format_table1_csv(coda::table1_demo());
            return 0;
        }
    } catch (const coda::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitUsage;
}
