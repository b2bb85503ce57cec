#include "drcw/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "drcw/error.hpp"

namespace drcw {

namespace {

// Sum of w_m exp(j theta m) split by pulse type (s_m = +1 -> x1, else x2).
struct PulseSums {
    cplx first;
    cplx second;
};

PulseSums pulse_sums(const DesignResult& design, double theta) {
    PulseSums sums{0.0, 0.0};
    for (std::size_t m = 0; m < design.size(); ++m) {
        const cplx term = design.weights[m] * std::polar(1.0, theta * static_cast<double>(m));
        (design.transmit_order[m] > 0 ? sums.first : sums.second) += term;
    }
    return sums;
}

void check_design(const DesignResult& design) {
    if (design.size() == 0 || design.transmit_order.size() != design.size()) {
        throw ValidationError("design has inconsistent or empty sequences");
    }
}

std::vector<cplx> factor_on_grid(const DesignResult& design, const DopplerGrid& grid, bool signed_weights) {
    check_design(design);
    std::vector<cplx> out(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        cplx sum = 0.0;
        for (std::size_t m = 0; m < design.size(); ++m) {
            const double amp = signed_weights ? design.transmit_order[m] * design.weights[m] : design.weights[m];
            sum += amp * std::polar(1.0, grid.points[j] * static_cast<double>(m));
        }
        out[j] = sum;
    }
    return out;
}

double crossing(double x0, double x1, double g0, double g1, double level) {
    return x0 + (x1 - x0) * (g0 - level) / (g0 - g1);
}

}  // namespace

DopplerGrid DopplerGrid::uniform(std::size_t count) {
    if (count < 2) throw ValidationError("Doppler grid needs at least 2 points");
    DopplerGrid grid;
    grid.resolution = 2.0 * std::numbers::pi / static_cast<double>(count);
    grid.zero_index = count / 2;
    grid.points.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        grid.points[i] = (static_cast<double>(i) - static_cast<double>(grid.zero_index)) * grid.resolution;
    }
    return grid;
}

std::size_t DopplerGrid::nearest(double theta) const {
    const auto it = std::lower_bound(points.begin(), points.end(), theta);
    if (it == points.begin()) return 0;
    if (it == points.end()) return points.size() - 1;
    const auto hi = static_cast<std::size_t>(it - points.begin());
    return theta - points[hi - 1] <= points[hi] - theta ? hi - 1 : hi;
}

CafGrid composite_ambiguity(const DesignResult& design, const GolayPair& pair, const DopplerGrid& grid) {
    check_design(design);
    if (grid.size() == 0) throw ValidationError("empty Doppler grid");
    const Acf r1 = acf(pair.x1);
    const Acf r2 = acf(pair.x2);

    CafGrid caf;
    caf.max_lag = r1.max_lag();
    caf.doppler = grid;
    const auto lags = static_cast<Eigen::Index>(r1.values.size());
    caf.values.resize(lags, static_cast<Eigen::Index>(grid.size()));
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const PulseSums sums = pulse_sums(design, grid.points[j]);
        for (Eigen::Index k = 0; k < lags; ++k) {
            caf.values(k, static_cast<Eigen::Index>(j)) =
                static_cast<double>(r1.values[static_cast<std::size_t>(k)]) * sums.first +
                static_cast<double>(r2.values[static_cast<std::size_t>(k)]) * sums.second;
        }
    }
    return caf;
}

std::vector<cplx> range_factor(const DesignResult& design, const DopplerGrid& grid) {
    return factor_on_grid(design, grid, true);
}

std::vector<cplx> doppler_factor(const DesignResult& design, const DopplerGrid& grid) {
    return factor_on_grid(design, grid, false);
}

cplx range_factor_at(const DesignResult& design, double theta) {
    check_design(design);
    cplx sum = 0.0;
    for (std::size_t m = 0; m < design.size(); ++m)
        sum += design.y[m] * std::polar(1.0, theta * static_cast<double>(m));
    return sum;
}

std::vector<double> magnitudes(const std::vector<cplx>& values) {
    std::vector<double> out(values.size());
    std::transform(values.begin(), values.end(), out.begin(), [](cplx v) { return std::abs(v); });
    return out;
}

double to_db(double ratio) {
    if (!(ratio > 0.0)) return kDbFloor;
    return std::max(20.0 * std::log10(ratio), kDbFloor);
}

std::vector<double> relative_db(std::span<const double> magnitude) {
    const double peak = magnitude.empty() ? 0.0 : *std::max_element(magnitude.begin(), magnitude.end());
    std::vector<double> out(magnitude.size());
    for (std::size_t i = 0; i < magnitude.size(); ++i) out[i] = peak > 0.0 ? to_db(magnitude[i] / peak) : kDbFloor;
    return out;
}

std::vector<double> prsl_curve(const CafGrid& caf, PrslNorm norm) {
    const auto cols = caf.values.cols();
    if (cols == 0) throw ValidationError("empty ambiguity grid");
    const double global_peak = std::abs(caf.at(0, caf.doppler.zero_index));
    std::vector<double> out(static_cast<std::size_t>(cols));
    for (Eigen::Index j = 0; j < cols; ++j) {
        double side = 0.0;
        for (Eigen::Index k = 0; k < caf.values.rows(); ++k) {
            if (k == caf.max_lag) continue;
            side = std::max(side, std::abs(caf.values(k, j)));
        }
        const double ref = norm == PrslNorm::global ? global_peak : std::abs(caf.values(caf.max_lag, j));
        out[static_cast<std::size_t>(j)] = ref > 0.0 ? to_db(side / ref) : kDbFloor;
    }
    return out;
}

double prsl_at(const DesignResult& design, const GolayPair& pair, double theta, PrslNorm norm) {
    check_design(design);
    const Acf r1 = acf(pair.x1);
    const Acf r2 = acf(pair.x2);
    const PulseSums sums = pulse_sums(design, theta);
    double side = 0.0;
    for (std::ptrdiff_t k = -r1.max_lag(); k <= r1.max_lag(); ++k) {
        if (k == 0) continue;
        side = std::max(side, std::abs(static_cast<double>(r1.at(k)) * sums.first +
                                       static_cast<double>(r2.at(k)) * sums.second));
    }
    double ref = 0.0;
    if (norm == PrslNorm::global) {
        ref = static_cast<double>(pair.length()) *
              std::accumulate(design.weights.begin(), design.weights.end(), 0.0);
    } else {
        ref = std::abs(static_cast<double>(r1.at(0)) * sums.first + static_cast<double>(r2.at(0)) * sums.second);
    }
    return ref > 0.0 ? to_db(side / ref) : kDbFloor;
}

DopplerInterval rsba(std::span<const double> curve, const DopplerGrid& grid, double center, double threshold) {
    if (curve.size() != grid.size() || grid.size() == 0) {
        throw ValidationError("PRSL curve and Doppler grid differ in length");
    }
    DopplerInterval out;
    const std::size_t c = grid.nearest(center);
    out.center = grid.points[c];
    if (!(curve[c] < threshold)) return out;
    std::size_t lo = c;
    std::size_t hi = c;
    while (lo > 0 && curve[lo - 1] < threshold) --lo;
    while (hi + 1 < curve.size() && curve[hi + 1] < threshold) ++hi;
    out.lower = grid.points[lo];
    out.upper = grid.points[hi];
    out.empty = false;
    return out;
}

double mainlobe_width(std::span<const double> g, const DopplerGrid& grid) {
    if (g.size() != grid.size()) throw ValidationError("Doppler profile and grid differ in length");
    const std::size_t z = grid.zero_index;
    const double peak = g[z];
    if (!(peak > 0.0)) throw ValidationError("Doppler profile vanishes at zero Doppler");
    const double level = peak / std::numbers::sqrt2;

    std::size_t r = z;
    while (r + 1 < g.size() && g[r + 1] >= level) ++r;
    std::size_t l = z;
    while (l > 0 && g[l - 1] >= level) --l;
    if (r + 1 >= g.size() || l == 0 || r == z || l == z) {
        throw ValidationError("Doppler mainlobe is not resolvable on the grid");
    }
    const double right = crossing(grid.points[r], grid.points[r + 1], g[r], g[r + 1], level);
    const double left = crossing(grid.points[l], grid.points[l - 1], g[l], g[l - 1], level);
    return right - left;
}

double dmbr(std::span<const double> g, std::span<const double> g_ref, const DopplerGrid& grid) {
    return (mainlobe_width(g, grid) / mainlobe_width(g_ref, grid) - 1.0) * 100.0;
}

double pdsl(std::span<const double> g, const DopplerGrid& grid) {
    if (g.size() != grid.size()) throw ValidationError("Doppler profile and grid differ in length");
    const std::size_t z = grid.zero_index;
    const double peak = g[z];
    if (!(peak > 0.0)) throw ValidationError("Doppler profile vanishes at zero Doppler");

    std::size_t r = z;
    while (r + 1 < g.size() && g[r + 1] < g[r]) ++r;
    std::size_t l = z;
    while (l > 0 && g[l - 1] < g[l]) --l;
    if (r == z || l == z) throw ValidationError("Doppler mainlobe is not resolvable on the grid");
    // A profile that keeps falling out to +-pi has no sidelobes at all.
    double side = 0.0;
    for (std::size_t i = r + 1; i < g.size(); ++i) side = std::max(side, g[i]);
    for (std::size_t i = 0; i < l; ++i) side = std::max(side, g[i]);
    return to_db(side / peak);
}

double nag(std::span<const double> w) {
    if (w.empty()) throw ValidationError("NAG of an empty weight vector");
    double sum = 0.0;
    double energy = 0.0;
    for (double v : w) {
        if (v < 0.0) throw ValidationError("receive weights must be nonnegative");
        sum += v;
        energy += v * v;
    }
    if (energy == 0.0) throw ValidationError("NAG undefined for all-zero weights");
    return 10.0 * std::log10(sum * sum / (static_cast<double>(w.size()) * energy));
}

MetricsReport analyze(const DesignResult& design, const GolayPair& pair, const NullSpec& nulls,
                      const AnalysisOptions& options) {
    const DopplerGrid grid = DopplerGrid::uniform(options.grid_points);
    MetricsReport report;
    report.prsl_curve = prsl_curve(composite_ambiguity(design, pair, grid), options.norm);

    report.rsba.push_back(rsba(report.prsl_curve, grid, 0.0, options.threshold));
    for (const auto& null : nulls.nulls) {
        report.rsba.push_back(rsba(report.prsl_curve, grid, null.theta, options.threshold));
    }

    const auto g = magnitudes(doppler_factor(design, grid));
    const auto g_ref = magnitudes(doppler_factor(design_uniform(design.size()), grid));
    report.dmbr = dmbr(g, g_ref, grid);
    report.pdsl = pdsl(g, grid);
    report.nag = nag(design.weights);
    return report;
}

}  // namespace drcw
