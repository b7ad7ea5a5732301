#pragma once

#include <optional>
#include <string>
#include <vector>

namespace alseg {

struct SvgSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> band;  // half-width around y (std); empty = no band
};

// Minimal deterministic line chart: axes with ticks, one polyline per
// series, optional translucent +-band, legend in the top-left plot corner.
void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<SvgSeries>& series);

}  // namespace alseg
