#pragma once

// Discrete composite ambiguity function of a weighted complementary pulse train
// and the figures of merit derived from it:
//
//   R(k, theta) = sum_m w_m R_{x(m)}[k] exp(j theta m)
//   F(theta)    = sum_m s_m w_m exp(j theta m)     (range sidelobes)
//   G(theta)    = sum_m w_m exp(j theta m)         (Doppler profile at k = 0)

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "drcw/design.hpp"
#include "drcw/sequences.hpp"

namespace drcw {

using cplx = std::complex<double>;

inline constexpr double kDbFloor = -300.0;
inline constexpr double kBlankingThresholdDb = -60.0;

struct DopplerGrid {
    std::vector<double> points;  // strictly increasing, uniform, contains 0
    double resolution = 0.0;
    std::size_t zero_index = 0;

    /// theta_i = (i - floor(count/2)) * 2 pi / count. For even counts this is [-pi, pi).
    static DopplerGrid uniform(std::size_t count);

    std::size_t size() const { return points.size(); }
    std::size_t nearest(double theta) const;
};

struct CafGrid {
    std::ptrdiff_t max_lag = 0;
    DopplerGrid doppler;
    Eigen::MatrixXcd values;  // row = lag + max_lag, column = Doppler index

    cplx at(std::ptrdiff_t lag, std::size_t doppler_index) const {
        return values(lag + max_lag, static_cast<Eigen::Index>(doppler_index));
    }
};

CafGrid composite_ambiguity(const DesignResult& design, const GolayPair& pair, const DopplerGrid& grid);

std::vector<cplx> range_factor(const DesignResult& design, const DopplerGrid& grid);
std::vector<cplx> doppler_factor(const DesignResult& design, const DopplerGrid& grid);
cplx range_factor_at(const DesignResult& design, double theta);

std::vector<double> magnitudes(const std::vector<cplx>& values);

/// 20 log10(|v| / max |v|) with the -300 dB floor.
std::vector<double> relative_db(std::span<const double> magnitude);

double to_db(double ratio);

// global: sidelobes relative to |R(0, 0)|; per_doppler: relative to |R(0, theta)|.
enum class PrslNorm { global, per_doppler };

std::vector<double> prsl_curve(const CafGrid& caf, PrslNorm norm = PrslNorm::global);

/// PRSL evaluated exactly at one Doppler shift (need not be on a grid).
double prsl_at(const DesignResult& design, const GolayPair& pair, double theta,
               PrslNorm norm = PrslNorm::global);

struct DopplerInterval {
    double center = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    bool empty = true;

    double half_width() const { return empty ? 0.0 : upper - center; }
};

/// Maximal contiguous run of grid points around `center` (snapped to the grid)
/// where curve < threshold. Empty if the center itself is not below threshold.
DopplerInterval rsba(std::span<const double> curve, const DopplerGrid& grid, double center,
                     double threshold = kBlankingThresholdDb);

/// -3 dB (half-power) width of the mainlobe around theta = 0, crossings located by
/// linear interpolation. Throws ValidationError if not resolvable on the grid.
double mainlobe_width(std::span<const double> magnitude, const DopplerGrid& grid);

/// Percent increase of the mainlobe width of `g` relative to `g_ref`.
double dmbr(std::span<const double> g, std::span<const double> g_ref, const DopplerGrid& grid);

/// Peak sidelobe (dB relative to |G(0)|) beyond the first local minimum on each side.
/// A mainlobe that decays monotonically to +-pi has no sidelobes: returns the floor.
double pdsl(std::span<const double> g, const DopplerGrid& grid);

/// 10 log10((sum w)^2 / (M sum w^2)).
double nag(std::span<const double> weights);

struct MetricsReport {
    std::vector<DopplerInterval> rsba;  // zero Doppler first, then one per requested null
    double dmbr = 0.0;                  // percent
    double pdsl = 0.0;                  // dB
    double nag = 0.0;                   // dB
    std::vector<double> prsl_curve;     // dB on the analysis grid
};

struct AnalysisOptions {
    std::size_t grid_points = 8192;
    PrslNorm norm = PrslNorm::global;
    double threshold = kBlankingThresholdDb;
};

MetricsReport analyze(const DesignResult& design, const GolayPair& pair, const NullSpec& nulls,
                      const AnalysisOptions& options = {});

}  // namespace drcw
