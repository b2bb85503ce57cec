#include "drcw/linalg.hpp"

#include "drcw/error.hpp"

namespace drcw::linalg {

SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) throw SolverError("symmetric eigendecomposition failed");
    // Eigen returns ascending order.
    SymmetricEigen out;
    out.values = solver.eigenvalues().reverse();
    out.vectors = solver.eigenvectors().rowwise().reverse();
    return out;
}

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw SolverError("symmetric eigendecomposition failed");
    return solver.eigenvalues().reverse();
}

double symmetry_deviation(const Eigen::MatrixXd& a) {
    return (a - a.transpose()).cwiseAbs().maxCoeff();
}

double max_abs(const Eigen::MatrixXd& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

}  // namespace drcw::linalg
