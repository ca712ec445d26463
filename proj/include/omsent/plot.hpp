#pragma once

#include <string>
#include <vector>

namespace omsent {

struct PlotSeries {
    std::string label;
    std::vector<double> x;  // kappa t
    std::vector<double> y;  // E_N
};

/// Standalone SVG line chart, kappa t against E_N, one legend entry per
/// series. Output bytes depend only on the input. Throws DomainError when
/// `series` is empty.
std::string render_plot(const std::vector<PlotSeries>& series, const std::string& title = "");

/// Series from a trace CSV (kappa_t, E_N columns).
PlotSeries load_plot_series(const std::string& path, const std::string& label);

}  // namespace omsent
