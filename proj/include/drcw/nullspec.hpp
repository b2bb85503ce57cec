#pragma once

// Doppler null specification -> annihilating polynomial -> constraint subspace.
//
// A pulse-train polynomial F(z) = sum y_m z^m has a K0-th order null at z = 1 and
// K_i-th order nulls at z = exp(+-j theta_i) exactly when it is divisible by
//
//     a(z) = (1 - z)^K0 * prod_i (1 - 2 cos(theta_i) z + z^2)^K_i,
//
// i.e. when y lies in the range of the M x (M-K) convolution matrix of a.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "drcw/sequences.hpp"

namespace drcw {

struct DopplerNull {
    double theta = 0.0;  // radians, strictly inside (0, pi)
    int order = 1;
};

struct NullSpec {
    int k0 = 0;
    std::vector<DopplerNull> nulls;

    /// K = k0 + 2 * sum k_i
    int total_order() const;
};

// corrected: (1 - 2 cos(theta) z + z^2), zeros exactly at exp(+-j theta).
// legacy:    (1 - cos(theta) z + z^2), zeros at exp(+-j arccos(cos(theta) / 2)).
enum class QuadraticFactor { corrected, legacy };

/// Throws ValidationError if the spec is malformed or K > m - 1.
void validate(const NullSpec& spec, std::size_t m);

/// Angle on the unit circle where the quadratic factor for `null` vanishes.
double root_angle(const DopplerNull& null, QuadraticFactor factor);

/// Coefficients a_0..a_K of the annihilating polynomial (ascending powers).
std::vector<double> annihilator_coeffs(const NullSpec& spec,
                                       QuadraticFactor factor = QuadraticFactor::corrected);

/// M x (M-K) Toeplitz matrix with first column [a; 0] and first row [a_0, 0...].
Eigen::MatrixXd convolution_matrix(std::span<const double> a, std::size_t m);

struct ConstraintBasis {
    std::vector<double> a;
    Eigen::MatrixXd toeplitz;     // A
    Eigen::MatrixXd orthonormal;  // A_bar, same column span, A_bar^T A_bar = I
    std::size_t m = 0;

    std::size_t dimension() const { return static_cast<std::size_t>(orthonormal.cols()); }
};

/// Generic route: Householder QR of the convolution matrix. Adequate when A is
/// well conditioned (small K); loses the nulls for large K.
ConstraintBasis constraint_basis(std::span<const double> a, std::size_t m);

/// Production route. The orthogonal complement of range(A) is spanned by the
/// sequences m^p zeta^m for every root zeta of a(z) with p below its
/// multiplicity; an orthonormal basis of that complement is built directly and
/// A_bar is its complement. The span is exact to working precision regardless
/// of the conditioning of A.
ConstraintBasis constraint_basis(const NullSpec& spec, std::size_t m,
                                 QuadraticFactor factor = QuadraticFactor::corrected);

struct QuadraticForm {
    Eigen::MatrixXd matrix;  // Diag(w) A_bar A_bar^T Diag(w)

    std::size_t size() const { return static_cast<std::size_t>(matrix.rows()); }
};

QuadraticForm quadratic_form(const ConstraintBasis& basis, const WindowTemplate& window);

/// Classical division: remainder (degree < K) of y(z) / a(z), computed top-down
/// in double precision. Well conditioned only for small K.
std::vector<double> synthetic_remainder(std::span<const double> y, std::span<const double> a);

/// Least-squares division y = a (x) q + r with r of minimal norm, evaluated in
/// 50-digit arithmetic. Returns r (length M). Zero iff y(z) is divisible by a(z).
std::vector<double> polynomial_remainder(std::span<const double> y, std::span<const double> a);

/// As above with a(z) rebuilt in extended precision from the spec.
std::vector<double> null_remainder(std::span<const double> y, const NullSpec& spec,
                                   QuadraticFactor factor = QuadraticFactor::corrected);

struct NullOrderReport {
    bool ok = false;
    double worst_moment = 0.0;    // max |sum m^p y_m zeta^m| / (M^(p+1) * |y| / sqrt(M))
    double remainder_max = 0.0;   // max |r_m| of the least-squares remainder
    double remainder_limit = 0.0; // rel_tol * M
    std::string detail;
};

/// Null-order checks on a designed y: moment conditions at every requested null
/// and the least-squares remainder bound max |r_m| <= rel_tol * M.
NullOrderReport check_null_order(std::span<const double> y, const NullSpec& spec,
                                 QuadraticFactor factor = QuadraticFactor::corrected,
                                 double rel_tol = 1e-8);

}  // namespace drcw
