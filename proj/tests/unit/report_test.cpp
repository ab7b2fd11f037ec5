#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "coda/error.hpp"
#include "coda/report.hpp"
#include "json.hpp"

namespace coda {
namespace {

AnalysisConfig config_with_group() {
    return parse_config(
        "parts = TA, NCL, CL\n"
        "sbp = (TA|(NCL|CL))\n"
        "standard_ratios = r1: TA / NCL + CL; r2: NCL / CL\n"
        "group_variable = brand\n"
        "group_positive = yes\n");
}

FirmDataset load(const std::string& csv, const AnalysisConfig& c) {
    std::istringstream in(csv);
    return load_dataset_csv(in, c);
}

std::string random_csv(std::mt19937_64& rng, std::size_t n) {
    std::lognormal_distribution<double> mag(3.0, 1.0);
    std::bernoulli_distribution brand(0.3);
    std::ostringstream out;
    out << "firm_id,TA,NCL,CL,brand\n";
    for (std::size_t i = 0; i < n; ++i) {
        out << "F" << i << ',' << mag(rng) << ',' << mag(rng) << ',' << mag(rng) << ','
            << (i < 2 ? "yes" : i < 4 ? "no" : brand(rng) ? "yes" : "no") << '\n';
    }
    return out.str();
}

const VariableReport& find(const AnalysisReport& r, const std::string& name) {
    for (const VariableReport& v : r.variables) {
        if (v.name == name) return v;
    }
    throw std::runtime_error("no variable " + name);
}

TEST(RunAnalysis, VariableLayout) {
    std::mt19937_64 rng(59);
    const AnalysisConfig c = config_with_group();
    const AnalysisReport r = run_analysis(load(random_csv(rng, 40), c), c);
    std::vector<std::string> names;
    for (const VariableReport& v : r.variables) names.push_back(v.name);
    EXPECT_EQ(names, (std::vector<std::string>{"y1", "y1p", "y2", "y2p", "r1", "r1p", "r2", "r2p"}));
    EXPECT_EQ(find(r, "y1p").numerator, (std::vector<std::string>{"NCL", "CL"}));
    EXPECT_EQ(find(r, "r1p").denominator, std::vector<std::string>{"TA"});
    EXPECT_TRUE(find(r, "r2p").permuted);
    EXPECT_EQ(r.n, 40u);
    for (const VariableReport& v : r.variables) EXPECT_EQ(v.values.size(), 40u);
}

TEST(RunAnalysis, PermutedBalanceMirrors) {
    std::mt19937_64 rng(61);
    const AnalysisConfig c = config_with_group();
    for (int rep = 0; rep < 20; ++rep) {
        const AnalysisReport r = run_analysis(load(random_csv(rng, 10 + 7 * rep), c), c);
        for (const char* name : {"y1", "y2"}) {
            const VariableReport& y = find(r, name);
            const VariableReport& p = find(r, std::string(name) + "p");
            for (std::size_t i = 0; i < y.values.size(); ++i) EXPECT_EQ(p.values[i], -y.values[i]);
            EXPECT_EQ(*p.mean, -*y.mean);
            EXPECT_EQ(*p.sd, *y.sd);
            EXPECT_EQ(*p.skewness, -*y.skewness);
            EXPECT_EQ(*p.kurtosis, *y.kurtosis);
            EXPECT_EQ(p.box->outliers.size(), y.box->outliers.size());
            EXPECT_EQ(p.box->extreme_outliers.size(), y.box->extreme_outliers.size());
            EXPECT_EQ(p.comparison->t_value, -y.comparison->t_value);
            EXPECT_EQ(p.comparison->p_value, y.comparison->p_value);
            EXPECT_EQ(p.comparison->r_squared, y.comparison->r_squared);
        }
    }
}

TEST(RunAnalysis, IdenticalFirmsAreDegenerate) {
    const AnalysisConfig c = config_with_group();
    const FirmDataset ds = load("firm_id,TA,NCL,CL,brand\nA,1,2,3,yes\nB,1,2,3,no\nC,1,2,3,yes\nD,1,2,3,no\n", c);
    const AnalysisReport r = run_analysis(ds, c);
    for (const VariableReport& v : r.variables) {
        EXPECT_TRUE(v.mean.has_value());
        EXPECT_EQ(*v.sd, 0.0);
        EXPECT_FALSE(v.skewness.has_value());
        EXPECT_FALSE(v.kurtosis.has_value());
        EXPECT_TRUE(v.degenerate.contains("skewness"));
        EXPECT_TRUE(v.degenerate.contains("kurtosis"));
        EXPECT_TRUE(v.degenerate.contains("t_test"));
        EXPECT_FALSE(v.comparison.has_value());
    }
    const auto json = nlohmann::json::parse(emit_report(r, ReportFormat::Json));
    EXPECT_TRUE(json["variables"][0]["skewness"].is_null());
    EXPECT_TRUE(json["variables"][0]["degenerate"].contains("skewness"));
}

TEST(RunAnalysis, GroupSignFollowsPositiveLevel) {
    const std::string csv =
        "firm_id,TA,NCL,CL,brand\n"
        "A,10,1,1,no\nB,12,1,1,no\nC,11,1,1,no\n"
        "D,100,1,1,yes\nE,90,1,1,yes\nF,120,1,1,yes\n";
    AnalysisConfig c = config_with_group();
    const AnalysisReport r = run_analysis(load(csv, c), c);
    ASSERT_TRUE(r.groups.has_value());
    EXPECT_EQ(r.groups->positive_level, "yes");
    EXPECT_EQ(r.groups->n_positive, 3u);
    EXPECT_GT(find(r, "y1").comparison->t_value, 0.0);
    EXPECT_EQ(find(r, "y1").comparison->df, 4u);

    c.group_positive.reset();  // first level seen is "no"
    const AnalysisReport flipped = run_analysis(load(csv, c), c);
    EXPECT_EQ(flipped.groups->positive_level, "no");
    EXPECT_EQ(find(flipped, "y1").comparison->t_value, -find(r, "y1").comparison->t_value);

    c.group_positive = "maybe";
    EXPECT_THROW(run_analysis(load(csv, c), c), ConfigError);
}

TEST(RunAnalysis, GroupNoteForNonBinaryVariable) {
    const AnalysisConfig c = config_with_group();
    const AnalysisReport r =
        run_analysis(load("firm_id,TA,NCL,CL,brand\nA,1,2,3,yes\nB,2,2,3,yes\nC,3,2,3,yes\n", c), c);
    EXPECT_FALSE(r.groups.has_value());
    ASSERT_TRUE(r.group_note.has_value());
    EXPECT_NE(r.group_note->find("1 level"), std::string::npos);
}

TEST(RunAnalysis, NoRatiosOnlyBalances) {
    const AnalysisConfig c = parse_config("parts = A, B\nsbp = (A|B)\n");
    const AnalysisReport r = run_analysis(load("firm_id,A,B\nX,1,2\nY,3,1\nZ,2,2\n", c), c);
    ASSERT_EQ(r.variables.size(), 2u);
    const std::string csv = emit_report(r, ReportFormat::Csv);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}

TEST(EmitReport, DeterministicAndParsable) {
    std::mt19937_64 rng(67);
    const AnalysisConfig c = config_with_group();
    const FirmDataset ds = load(random_csv(rng, 60), c);
    const std::string a = emit_report(run_analysis(ds, c), ReportFormat::Json);
    const std::string b = emit_report(run_analysis(ds, c), ReportFormat::Json);
    EXPECT_EQ(a, b);
    EXPECT_EQ(emit_report(run_analysis(ds, c), ReportFormat::Csv), emit_report(run_analysis(ds, c), ReportFormat::Csv));

    const auto j = nlohmann::json::parse(a);
    EXPECT_EQ(j["metadata"]["n"], 60);
    EXPECT_TRUE(j["metadata"]["timestamp"].is_null());
    EXPECT_EQ(j["metadata"]["config"]["sbp"], "(TA|(NCL|CL))");
    EXPECT_EQ(j["variables"].size(), 8u);
    EXPECT_EQ(j["variables"][1]["name"], "y1p");
    EXPECT_EQ(j["groups"]["positive_level"], "yes");

    const std::string stamped = emit_report(run_analysis(ds, c, "2020-01-01T00:00:00Z"), ReportFormat::Json);
    EXPECT_EQ(nlohmann::json::parse(stamped)["metadata"]["timestamp"], "2020-01-01T00:00:00Z");
}

TEST(EmitReport, CsvRows) {
    std::mt19937_64 rng(71);
    const AnalysisConfig c = config_with_group();
    const std::string csv = emit_report(run_analysis(load(random_csv(rng, 25), c), c), ReportFormat::Csv);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "variable,n,mean,sd,skewness,kurtosis,n_outliers,n_extreme,t,df,p,r_squared");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), 11);
    }
    EXPECT_EQ(rows, 8u);
}

TEST(EmitTransform, Columns) {
    const AnalysisConfig c = config_with_group();
    const FirmDataset ds = load("firm_id,TA,NCL,CL,brand\nA,4,2,1,yes\n", c);
    const std::string csv = emit_transform_csv(ds, c.tree());
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "firm_id,y1,y2");
    std::istringstream in(csv.substr(csv.find('\n') + 1));
    std::string id, y1, y2;
    std::getline(in, id, ',');
    std::getline(in, y1, ',');
    std::getline(in, y2);
    EXPECT_EQ(id, "A");
    // sqrt(2/3) * (ln 4 - (ln 2 + ln 1)/2), mpmath
    EXPECT_NEAR(std::stod(y1), 0.848928454510332771, 1e-12);
    EXPECT_NEAR(std::stod(y2), 0.490129071734273596, 1e-12);
}

}  // namespace
}  // namespace coda
