#include "drcw/sdp.hpp"

#include <algorithm>
#include <cmath>

#include "drcw/error.hpp"
#include "drcw/linalg.hpp"

namespace drcw {

namespace {

// Largest alpha in (0, 1] keeping P + alpha * dP positive definite, backed off by
// `fraction` when the boundary is hit first. `chol` is the Cholesky factor of P.
double step_to_boundary(const Eigen::LLT<Eigen::MatrixXd>& chol, const Eigen::MatrixXd& dp,
                        double fraction) {
    const auto& l = chol.matrixL();
    Eigen::MatrixXd t = l.solve(dp);
    t = l.solve(t.transpose().eval()).transpose().eval();
    t = 0.5 * (t + t.transpose()).eval();
    const double lambda_min = linalg::symmetric_eigenvalues(t).minCoeff();
    if (lambda_min >= 0.0) return 1.0;
    return std::min(1.0, fraction / -lambda_min);
}

}  // namespace

SdpSolution solve_partition_sdp(const Eigen::MatrixXd& c, const SdpOptions& options) {
    const auto n = c.rows();
    if (n == 0 || c.cols() != n) throw ValidationError("SDP cost matrix must be square and nonempty");
    if (!(options.tol > 0.0 && options.tol <= 1e-2)) {
        throw ValidationError("SDP tolerance must lie in (0, 1e-2]");
    }
    if (options.max_iter < 1) throw ValidationError("SDP iteration budget must be positive");
    const double c_scale = linalg::max_abs(c);
    if (linalg::symmetry_deviation(c) > 1e-8 * c_scale) {
        throw ValidationError("SDP cost matrix is not symmetric");
    }
    const Eigen::MatrixXd cost = 0.5 * (c + c.transpose());
    const double nd = static_cast<double>(n);

    // Strictly feasible start: X = I, Z = Diag(y) - C diagonally dominant.
    Eigen::MatrixXd x = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd row_sums = cost.cwiseAbs().rowwise().sum();
    const double shift = row_sums.maxCoeff() > 0.0 ? 0.1 * row_sums.maxCoeff() : 1.0;
    Eigen::VectorXd y = 1.1 * row_sums + Eigen::VectorXd::Constant(n, shift);
    Eigen::MatrixXd z = Eigen::MatrixXd(y.asDiagonal()) - cost;

    SdpSolution sol;
    double sigma = 0.5;
    int it = 0;
    for (; it < options.max_iter; ++it) {
        const double primal = cost.cwiseProduct(x).sum();
        const double dual = y.sum();
        const double diag_dev = (x.diagonal().array() - 1.0).abs().maxCoeff();
        if (dual - primal <= options.tol * (1.0 + std::abs(dual)) && diag_dev <= options.tol) {
            sol.status = SdpStatus::converged;
            break;
        }

        Eigen::LLT<Eigen::MatrixXd> z_chol(z);
        Eigen::LLT<Eigen::MatrixXd> x_chol(x);
        if (z_chol.info() != Eigen::Success || x_chol.info() != Eigen::Success) break;

        const double mu = sigma * z.cwiseProduct(x).sum() / nd;
        const Eigen::MatrixXd z_inv = z_chol.solve(Eigen::MatrixXd::Identity(n, n));
        const Eigen::MatrixXd schur = z_inv.cwiseProduct(x);
        const Eigen::VectorXd rhs = mu * z_inv.diagonal() - Eigen::VectorXd::Ones(n);
        Eigen::LLT<Eigen::MatrixXd> schur_chol(schur);
        if (schur_chol.info() != Eigen::Success) break;
        const Eigen::VectorXd dy = schur_chol.solve(rhs);

        Eigen::MatrixXd dx = mu * z_inv - x - z_inv * dy.asDiagonal() * x;
        dx = 0.5 * (dx + dx.transpose()).eval();
        const Eigen::MatrixXd dz = dy.asDiagonal();

        const double alpha_p = step_to_boundary(x_chol, dx, 0.95);
        const double alpha_d = step_to_boundary(z_chol, dz, 0.95);

        x += alpha_p * dx;
        x = 0.5 * (x + x.transpose()).eval();
        y += alpha_d * dy;
        z = Eigen::MatrixXd(y.asDiagonal()) - cost;

        sigma = std::min(alpha_p, alpha_d) > 0.9 ? 0.1 : 0.5;
        sol.trace.push_back({it + 1, cost.cwiseProduct(x).sum(), y.sum(),
                             y.sum() - cost.cwiseProduct(x).sum(), alpha_p, alpha_d});
    }
    sol.iterations = it;

    // Pull the diagonal back to exactly one; congruence keeps X psd.
    const Eigen::VectorXd d = x.diagonal().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
    sol.s_matrix = d.asDiagonal() * x * d.asDiagonal();
    sol.s_matrix = 0.5 * (sol.s_matrix + sol.s_matrix.transpose()).eval();
    sol.s_matrix.diagonal().setOnes();

    sol.objective = cost.cwiseProduct(sol.s_matrix).sum();
    sol.dual_bound = y.sum();
    sol.residuals.diag_deviation = (sol.s_matrix.diagonal().array() - 1.0).abs().maxCoeff();
    sol.residuals.min_eigenvalue = linalg::symmetric_eigenvalues(sol.s_matrix).minCoeff();
    sol.residuals.relative_gap = (sol.dual_bound - sol.objective) / (1.0 + std::abs(sol.dual_bound));
    return sol;
}

}  // namespace drcw
