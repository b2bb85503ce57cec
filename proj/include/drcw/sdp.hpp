#pragma once

// max tr(C S)  s.t.  diag(S) = 1,  S >= 0
//
// Primal-dual interior-point method on the pair
//   primal: max <C, X>, diag(X) = 1, X psd
//   dual:   min 1^T y,  Z = Diag(y) - C psd
// using the HKM search direction. Only the M x M Schur complement Z^-1 o X is
// factored per iteration, which keeps dense problems of a few hundred pulses cheap.

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace drcw {

struct SdpOptions {
    double tol = 1e-6;     // relative duality gap
    int max_iter = 5000;
};

enum class SdpStatus { converged, iteration_limit };

struct SdpResiduals {
    double diag_deviation = 0.0;  // max_j |S_jj - 1|
    double min_eigenvalue = 0.0;  // of S
    double relative_gap = 0.0;    // (dual - primal) / (1 + |dual|)
};

struct SdpIterate {
    int iteration = 0;
    double primal = 0.0;
    double dual = 0.0;
    double gap = 0.0;
    double step_primal = 0.0;
    double step_dual = 0.0;
};

struct SdpSolution {
    Eigen::MatrixXd s_matrix;
    double objective = 0.0;   // tr(C S)
    double dual_bound = 0.0;  // 1^T y; an upper bound on the optimum
    SdpResiduals residuals;
    int iterations = 0;
    SdpStatus status = SdpStatus::iteration_limit;
    std::vector<SdpIterate> trace;

    bool converged() const { return status == SdpStatus::converged; }
};

/// Throws ValidationError for non-symmetric C, empty C or tol outside (0, 1e-2].
/// Running out of iterations is not an error: the best iterate is returned with
/// status iteration_limit.
SdpSolution solve_partition_sdp(const Eigen::MatrixXd& c, const SdpOptions& options = {});

}  // namespace drcw
