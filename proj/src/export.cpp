#include "drcw/export.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "drcw/error.hpp"

namespace drcw {

std::string format_number(double v) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(12) << v;
    return os.str();
}

void write_curve_csv(std::ostream& out, const char* value_column, const DopplerGrid& grid,
                     std::span<const double> values) {
    if (values.size() != grid.size()) throw ValidationError("curve and grid lengths differ");
    out << "theta_rad," << value_column << "\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out << format_number(grid.points[i]) << ',' << format_number(values[i]) << "\n";
    }
}

void write_caf_csv(std::ostream& out, const CafGrid& caf) {
    const double peak = std::abs(caf.at(0, caf.doppler.zero_index));
    out << "lag,theta_rad,re,im,mag_db\n";
    for (std::ptrdiff_t k = -caf.max_lag; k <= caf.max_lag; ++k) {
        for (std::size_t j = 0; j < caf.doppler.size(); ++j) {
            const cplx v = caf.at(k, j);
            out << k << ',' << format_number(caf.doppler.points[j]) << ',' << format_number(v.real()) << ','
                << format_number(v.imag()) << ',' << format_number(peak > 0.0 ? to_db(std::abs(v) / peak) : kDbFloor)
                << "\n";
        }
    }
}

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 360.0;
constexpr double kMargin = 50.0;

}  // namespace

std::string svg_line_plot(const std::string& title, const std::string& y_label, std::span<const double> x,
                          std::span<const double> y, double y_min) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    const double x_lo = x.empty() ? -std::numbers::pi : x.front();
    const double x_hi = x.empty() ? std::numbers::pi : x.back();
    double y_hi = y.empty() ? 0.0 : *std::max_element(y.begin(), y.end());
    y_hi = std::max(y_hi, y_min + 1.0);
    auto px = [&](double v) { return kMargin + (v - x_lo) / (x_hi - x_lo) * (kWidth - 2 * kMargin); };
    auto py = [&](double v) {
        v = std::clamp(v, y_min, y_hi);
        return kHeight - kMargin - (v - y_min) / (y_hi - y_min) * (kHeight - 2 * kMargin);
    };
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n"
       << "<text x=\"12\" y=\"" << kHeight / 2 << "\" font-size=\"12\" transform=\"rotate(-90 12 " << kHeight / 2
       << ")\">" << y_label << "</text>\n"
       << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kWidth - 2 * kMargin << "\" height=\""
       << kHeight - 2 * kMargin << "\" fill=\"none\" stroke=\"black\"/>\n"
       << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        os << std::setprecision(6) << px(x[i]) << ',' << py(y[i]) << ' ';
    }
    os << "\"/>\n</svg>\n";
    return os.str();
}

std::string svg_heatmap(const std::string& title, const CafGrid& caf, double floor_db) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    const double peak = std::abs(caf.at(0, caf.doppler.zero_index));
    const auto rows = caf.values.rows();
    const auto cols = caf.values.cols();
    const Eigen::Index stride = std::max<Eigen::Index>(1, (cols + 255) / 256);
    const double cw = (kWidth - 2 * kMargin) * static_cast<double>(stride) / static_cast<double>(cols);
    const double ch = (kHeight - 2 * kMargin) / static_cast<double>(rows);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
    for (Eigen::Index k = 0; k < rows; ++k) {
        for (Eigen::Index j = 0; j < cols; j += stride) {
            const double db = peak > 0.0 ? to_db(std::abs(caf.values(k, j)) / peak) : kDbFloor;
            const double t = std::clamp(1.0 - db / floor_db, 0.0, 1.0);
            const int shade = static_cast<int>(std::lround(255.0 * (1.0 - t)));
            os << "<rect x=\"" << std::setprecision(6) << kMargin + static_cast<double>(j / stride) * cw << "\" y=\""
               << kMargin + static_cast<double>(rows - 1 - k) * ch << "\" width=\"" << cw + 0.05 << "\" height=\""
               << ch + 0.05 << "\" fill=\"rgb(" << shade << ',' << shade << ",255)\"/>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace drcw
