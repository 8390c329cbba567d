#include "fbrd/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace fbrd {

namespace {

constexpr int kW = 720, kH = 480;
constexpr int kMarginL = 70, kMarginR = 20, kMarginT = 40, kMarginB = 55;

const char* kSeriesColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"};

struct Mapper {
    double x0, x1, y0, y1;
    double px(double x) const {
        return kMarginL + (x - x0) / (x1 - x0) * (kW - kMarginL - kMarginR);
    }
    double py(double y) const {
        return kH - kMarginB - (y - y0) / (y1 - y0) * (kH - kMarginT - kMarginB);
    }
};

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

void open_svg(std::ofstream& out, const std::string& title, const std::string& checksum) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
        << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n";
    out << "<metadata>manifest-checksum:" << checksum << "</metadata>\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\""
        << " font-size=\"16\">" << title << "</text>\n";
}

void axes(std::ofstream& out, const Mapper& m, const std::string& x_label,
          const std::string& y_label) {
    out << "<rect x=\"" << kMarginL << "\" y=\"" << kMarginT << "\" width=\""
        << kW - kMarginL - kMarginR << "\" height=\"" << kH - kMarginT - kMarginB
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = m.x0 + (m.x1 - m.x0) * i / 5;
        const double yv = m.y0 + (m.y1 - m.y0) * i / 5;
        out << "<text x=\"" << m.px(xv) << "\" y=\"" << kH - kMarginB + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt_tick(xv) << "</text>\n";
        out << "<line x1=\"" << m.px(xv) << "\" y1=\"" << kH - kMarginB << "\" x2=\"" << m.px(xv)
            << "\" y2=\"" << kH - kMarginB + 4 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << kMarginL - 8 << "\" y=\"" << m.py(yv) + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt_tick(yv) << "</text>\n";
        out << "<line x1=\"" << kMarginL - 4 << "\" y1=\"" << m.py(yv) << "\" x2=\"" << kMarginL
            << "\" y2=\"" << m.py(yv) << "\" stroke=\"black\"/>\n";
    }
    out << "<text x=\"" << (kMarginL + kW - kMarginR) / 2 << "\" y=\"" << kH - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label
        << "</text>\n";
    out << "<text x=\"16\" y=\"" << (kMarginT + kH - kMarginB) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\""
        << " transform=\"rotate(-90 16 " << (kMarginT + kH - kMarginB) / 2 << ")\">" << y_label
        << "</text>\n";
}

}  // namespace

void write_line_chart_svg(const std::filesystem::path& path,
                          const std::vector<PlotSeries>& series, const std::string& title,
                          const std::string& x_label, const std::string& y_label,
                          const std::string& checksum) {
    if (series.empty()) throw UsageError("write_line_chart_svg: empty series");
    for (const auto& s : series)
        if (s.xs.empty() || s.xs.size() != s.ys.size())
            throw UsageError("write_line_chart_svg: empty or mismatched series");

    Mapper m{series[0].xs[0], series[0].xs[0], series[0].ys[0], series[0].ys[0]};
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            m.x0 = std::min(m.x0, s.xs[i]);
            m.x1 = std::max(m.x1, s.xs[i]);
            m.y0 = std::min(m.y0, s.ys[i]);
            m.y1 = std::max(m.y1, s.ys[i]);
        }
    if (m.x1 == m.x0) m.x1 = m.x0 + 1;
    if (m.y1 == m.y0) m.y1 = m.y0 + 1;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path.string());
    open_svg(out, title, checksum);
    axes(out, m, x_label, y_label);
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        out << "<polyline fill=\"none\" stroke=\"" << kSeriesColors[k % 6]
            << "\" stroke-width=\"1.5\" points=\"";
        // keep file size sane for long h(t) series
        const std::size_t stride = std::max<std::size_t>(1, s.xs.size() / 4000);
        for (std::size_t i = 0; i < s.xs.size(); i += stride)
            out << m.px(s.xs[i]) << "," << m.py(s.ys[i]) << " ";
        out << m.px(s.xs.back()) << "," << m.py(s.ys.back());
        out << "\"/>\n";
        if (!s.label.empty()) {
            out << "<text x=\"" << kW - kMarginR - 8 << "\" y=\"" << kMarginT + 18 + 16 * k
                << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\""
                << kSeriesColors[k % 6] << "\">" << s.label << "</text>\n";
        }
    }
    out << "</svg>\n";
}

void write_outcome_heatmap_svg(const std::filesystem::path& path, const OutcomeMatrix& mat,
                               const std::string& title, const std::string& checksum) {
    if (mat.Ls.empty() || mat.sigmas.empty())
        throw UsageError("write_outcome_heatmap_svg: empty matrix");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path.string());
    open_svg(out, title, checksum);

    const double cw = static_cast<double>(kW - kMarginL - kMarginR) / mat.Ls.size();
    const double ch = static_cast<double>(kH - kMarginT - kMarginB) / mat.sigmas.size();
    auto color = [](OutcomeKind k) {
        switch (k) {
            case OutcomeKind::Vanishing: return "#d62728";
            case OutcomeKind::Spreading: return "#2ca02c";
            default: return "#ffbf00";  // Transition or Undetermined
        }
    };
    for (std::size_t i = 0; i < mat.Ls.size(); ++i) {
        for (std::size_t j = 0; j < mat.sigmas.size(); ++j) {
            const double x = kMarginL + i * cw;
            const double y = kH - kMarginB - (j + 1) * ch;
            out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cw << "\" height=\""
                << ch << "\" fill=\"" << color(mat.at(i, j).kind)
                << "\" stroke=\"white\" stroke-width=\"0.5\"/>\n";
        }
    }
    for (std::size_t i = 0; i < mat.Ls.size(); ++i)
        out << "<text x=\"" << kMarginL + (i + 0.5) * cw << "\" y=\"" << kH - kMarginB + 16
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
            << fmt_tick(mat.Ls[i]) << "</text>\n";
    for (std::size_t j = 0; j < mat.sigmas.size(); ++j)
        out << "<text x=\"" << kMarginL - 6 << "\" y=\"" << kH - kMarginB - (j + 0.5) * ch + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
            << fmt_tick(mat.sigmas[j]) << "</text>\n";
    out << "<text x=\"" << (kMarginL + kW - kMarginR) / 2 << "\" y=\"" << kH - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">zone length L"
        << "</text>\n";
    out << "<text x=\"16\" y=\"" << (kMarginT + kH - kMarginB) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\""
        << " transform=\"rotate(-90 16 " << (kMarginT + kH - kMarginB) / 2
        << ")\">sigma</text>\n";
    const char* legend[3] = {"Vanishing", "Transition/Undetermined", "Spreading"};
    const char* lcol[3] = {"#d62728", "#ffbf00", "#2ca02c"};
    for (int k = 0; k < 3; ++k) {
        out << "<rect x=\"" << kMarginL + 140 * k << "\" y=\"" << kMarginT - 14
            << "\" width=\"10\" height=\"10\" fill=\"" << lcol[k] << "\"/>\n";
        out << "<text x=\"" << kMarginL + 140 * k + 14 << "\" y=\"" << kMarginT - 5
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << legend[k] << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace fbrd
