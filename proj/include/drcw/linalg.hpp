#pragma once

#include <Eigen/Dense>

namespace drcw::linalg {

struct SymmetricEigen {
    Eigen::VectorXd values;   // descending
    Eigen::MatrixXd vectors;  // column j pairs with values(j)
};

/// Full eigendecomposition of a symmetric matrix, eigenvalues sorted descending.
SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& a);

/// Eigenvalues only, descending.
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& a);

double symmetry_deviation(const Eigen::MatrixXd& a);

/// Infinity-norm style scale used for relative tolerances (max |a_ij|).
double max_abs(const Eigen::MatrixXd& a);

}  // namespace drcw::linalg
