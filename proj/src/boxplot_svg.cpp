#include "coda/boxplot_svg.hpp"

#include <algorithm>

#include "coda/error.hpp"
#include "coda/format.hpp"

namespace coda {

namespace {

constexpr double kPanelWidth = 200.0;
constexpr double kPanelHeight = 400.0;
constexpr double kPlotTop = 40.0;
constexpr double kPlotBottom = 360.0;
constexpr double kBoxHalf = 40.0;
constexpr double kCapHalf = 20.0;
constexpr double kRadius = 4.0;

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string num(double v) { return format_fixed(v, 2); }

class Scale {
public:
    Scale(double lo, double hi) : lo_(lo), hi_(hi) {
        if (!(hi_ > lo_)) {
            lo_ -= 1.0;
            hi_ += 1.0;
        }
    }

    double operator()(double v) const { return kPlotTop + (hi_ - v) / (hi_ - lo_) * (kPlotBottom - kPlotTop); }
    double lo() const { return lo_; }
    double hi() const { return hi_; }

private:
    double lo_;
    double hi_;
};

void line(std::string& out, const char* cls, double x1, double y1, double x2, double y2) {
    out += "<line class=\"" + std::string(cls) + "\" x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) +
           "\" y2=\"" + num(y2) + "\"/>\n";
}

void circle(std::string& out, bool extreme, double cx, double cy) {
    out += "<circle class=\"" + std::string(extreme ? "extreme" : "outlier") + "\" cx=\"" + num(cx) + "\" cy=\"" +
           num(cy) + "\" r=\"" + num(kRadius) + "\"/>\n";
}

}  // namespace

std::string emit_boxplot_svg(std::span<const NamedBox> boxes) {
    if (boxes.empty()) {
        throw StatsError(StatsError::Kind::EmptyData, "no box summaries to plot");
    }
    double lo = boxes.front().box.min;
    double hi = boxes.front().box.max;
    for (const NamedBox& b : boxes) {
        lo = std::min(lo, b.box.min);
        hi = std::max(hi, b.box.max);
    }
    const Scale y(lo, hi);
    const double width = kPanelWidth * static_cast<double>(boxes.size());

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" + num(kPanelHeight) +
           "\" viewBox=\"0 0 " + num(width) + " " + num(kPanelHeight) + "\">\n";
    out += "<style>line,rect{stroke:black;stroke-width:1}rect.box{fill:none}line.median{stroke-width:2}"
           "line.zero{stroke:gray;stroke-dasharray:4 4}circle.outlier{fill:none;stroke:black}"
           "circle.extreme{fill:black;stroke:black}text{font-family:sans-serif;font-size:12px}</style>\n";
    out += "<text class=\"axis\" x=\"4.00\" y=\"" + num(y(y.hi()) - 4.0) + "\">" + format_double(y.hi()) + "</text>\n";
    out += "<text class=\"axis\" x=\"4.00\" y=\"" + num(y(y.lo()) + 14.0) + "\">" + format_double(y.lo()) +
           "</text>\n";
    if (y.lo() < 0.0 && y.hi() > 0.0) {
        line(out, "zero", 0.0, y(0.0), width, y(0.0));
    }

    for (std::size_t i = 0; i < boxes.size(); ++i) {
        const stats::BoxSummary& b = boxes[i].box;
        const double cx = kPanelWidth * static_cast<double>(i) + kPanelWidth / 2.0;
        out += "<g class=\"variable\" data-name=\"" + xml_escape(boxes[i].name) + "\">\n";
        line(out, "whisker", cx, y(b.whisker_high), cx, y(b.q3));
        line(out, "whisker", cx, y(b.q1), cx, y(b.whisker_low));
        line(out, "cap", cx - kCapHalf, y(b.whisker_high), cx + kCapHalf, y(b.whisker_high));
        line(out, "cap", cx - kCapHalf, y(b.whisker_low), cx + kCapHalf, y(b.whisker_low));
        out += "<rect class=\"box\" x=\"" + num(cx - kBoxHalf) + "\" y=\"" + num(y(b.q3)) + "\" width=\"" +
               num(2.0 * kBoxHalf) + "\" height=\"" + num(y(b.q1) - y(b.q3)) + "\"/>\n";
        line(out, "median", cx - kBoxHalf, y(b.median), cx + kBoxHalf, y(b.median));
        for (double v : b.outliers) {
            const bool extreme = std::binary_search(b.extreme_outliers.begin(), b.extreme_outliers.end(), v);
            circle(out, extreme, cx, y(v));
        }
        out += "<text class=\"label\" x=\"" + num(cx) + "\" y=\"390.00\" text-anchor=\"middle\">" +
               xml_escape(boxes[i].name) + "</text>\n";
        out += "</g>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace coda
