#pragma once

// Transmit-order / receive-weight design: randomized rounding of the SDP
// relaxation, amplitude recovery, the full null-constrained pipeline and the
// PTM / binomial / unweighted baselines.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "drcw/nullspec.hpp"
#include "drcw/sdp.hpp"
#include "drcw/sequences.hpp"

namespace drcw {

enum class Method { nm_drcw, ptm, bd, uniform };

std::string_view to_string(Method method);
Method parse_method(std::string_view name);

struct Provenance {
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    double rounded_objective = 0.0;  // s^T A~ s of the rounded sign vector
    double sdp_bound = 0.0;          // tr(A~ S)
    double sdp_dual_bound = 0.0;
    int sdp_iterations = 0;
    NullSpec null_spec;
    QuadraticFactor factor = QuadraticFactor::corrected;
    WindowKind window = WindowKind::rectangular;
    bool rank_one_shortcut = false;
    bool clamped_eigenvalues = false;
};

struct DesignResult {
    Method method = Method::uniform;
    SignSequence transmit_order;  // s, +-1
    std::vector<double> weights;  // w >= 0
    std::vector<double> y;        // s .* w
    Provenance provenance;

    std::size_t size() const { return weights.size(); }
};

struct RoundingOptions {
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    double mu = 1e8;
};

struct RoundingResult {
    SignSequence signs;
    double objective = 0.0;
    bool rank_one_shortcut = false;
    bool clamped_eigenvalues = false;  // S had eigenvalues below -tolerance
    std::size_t best_trial = 0;
};

/// Extract a sign vector from the relaxed solution. If the leading eigenvalue
/// dominates the rest by `mu`, the sign of the leading eigenvector is taken;
/// otherwise S = V V^T and `trials` random hyperplanes sign(V r) are tried, the
/// best s^T A~ s kept (lowest trial index wins ties). Deterministic in (seed, trials).
RoundingResult round_solution(const Eigen::MatrixXd& s_matrix, const QuadraticForm& form,
                              const RoundingOptions& options);

struct Amplitudes {
    Eigen::VectorXd b;
    Eigen::VectorXd y;
};

/// b = sqrt(M) v / |v| with v = A_bar^T Diag(w) s; y = A_bar b, so |y|^2 = M.
/// Throws SolverError if v vanishes.
Amplitudes recover_amplitudes(std::span<const int> signs, const ConstraintBasis& basis,
                              const WindowTemplate& window);

/// Split y into sign (zero -> +1) and magnitude.
DesignResult split_design(Method method, std::span<const double> y);

struct DesignOptions {
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    double mu = 1e8;
    SdpOptions sdp;
    QuadraticFactor factor = QuadraticFactor::corrected;
};

/// Full pipeline: annihilator -> basis -> quadratic form -> SDP -> rounding ->
/// amplitude recovery -> sign/abs split.
/// `sdp_out`, when given, receives the raw SDP solution (iteration trace etc).
DesignResult design_nm_drcw(std::size_t m, const NullSpec& spec, const WindowTemplate& window,
                            const DesignOptions& options = {},
                            SdpSolution* sdp_out = nullptr);

DesignResult design_ptm(std::size_t m);
DesignResult design_bd(std::size_t m);
DesignResult design_uniform(std::size_t m);

}  // namespace drcw

namespace drcw {

inline RoundingResult round_solution(const SdpSolution& solution, const QuadraticForm& form,
                                     const RoundingOptions& options) {
    return round_solution(solution.s_matrix, form, options);
}

}  // namespace drcw
