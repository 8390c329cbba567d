#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fbrd/classify.hpp"

namespace fbrd {

struct PlotSeries {
    std::vector<double> xs, ys;
    std::string label;
};

// Standalone SVG line chart with axes, tick labels and a title. checksum is
// embedded as <metadata> so plots can be traced back to their manifest.
void write_line_chart_svg(const std::filesystem::path& path,
                          const std::vector<PlotSeries>& series, const std::string& title,
                          const std::string& x_label, const std::string& y_label,
                          const std::string& checksum);

// Categorical heat map of outcomes over (L, sigma): Vanishing / Spreading /
// Transition-or-Undetermined, with a legend.
void write_outcome_heatmap_svg(const std::filesystem::path& path, const OutcomeMatrix& m,
                               const std::string& title, const std::string& checksum);

}  // namespace fbrd
