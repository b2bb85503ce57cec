#pragma once

// CSV tables (authoritative) and SVG previews (cosmetic) for analysis output.
//
//   prsl.csv     theta_rad,prsl_db
//   doppler.csv  theta_rad,g_db
//   caf.csv      lag,theta_rad,re,im,mag_db     (mag_db relative to |R(0,0)|)
//
// Numbers are written with 12 significant digits.

#include <ostream>
#include <span>
#include <string>

#include "drcw/analysis.hpp"

namespace drcw {

std::string format_number(double v);

void write_curve_csv(std::ostream& out, const char* value_column, const DopplerGrid& grid,
                     std::span<const double> values);
void write_caf_csv(std::ostream& out, const CafGrid& caf);

std::string svg_line_plot(const std::string& title, const std::string& y_label,
                          std::span<const double> x, std::span<const double> y, double y_min);
std::string svg_heatmap(const std::string& title, const CafGrid& caf, double floor_db);

}  // namespace drcw
