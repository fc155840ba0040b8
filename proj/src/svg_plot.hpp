#pragma once

#include <string>
#include <vector>

#include "series.hpp"

namespace invsim {

struct PlotSeries {
    std::string label;
    std::string color;
    const std::vector<double>* x = nullptr;
    const std::vector<double>* y = nullptr;
};

// Minimal SVG line plot: axes, ticks, labels, legend, decimated polylines.
void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<PlotSeries>& series);

// The figure set for one run: roll profile, roll rates, thrust, rudder,
// elevator+aileron, AoA+sideslip, pitch+yaw and the pitch-yaw orbit plot.
// Returns the number of files written (8).
int write_run_plots(const ControlSeries& series, const std::string& dir);

}  // namespace invsim
