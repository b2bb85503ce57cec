#include "drcw/nullspec.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "drcw/error.hpp"

namespace drcw {

namespace {

using Wide = boost::multiprecision::cpp_bin_float_50;
using cplx = std::complex<double>;

template <typename T>
std::vector<T> convolve(const std::vector<T>& p, const std::vector<T>& q) {
    std::vector<T> out(p.size() + q.size() - 1, T(0));
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
    return out;
}

template <typename T>
std::vector<T> annihilator(const NullSpec& spec, QuadraticFactor factor) {
    using std::cos;
    std::vector<T> a{T(1)};
    for (int i = 0; i < spec.k0; ++i) a = convolve(a, std::vector<T>{T(1), T(-1)});
    const T lin = factor == QuadraticFactor::corrected ? T(2) : T(1);
    for (const auto& null : spec.nulls) {
        const T c = lin * cos(T(null.theta));
        for (int i = 0; i < null.order; ++i) a = convolve(a, std::vector<T>{T(1), -c, T(1)});
    }
    return a;
}

// Orthonormal basis (Hermitian inner product) of span{ m^p zeta^m : p < order }.
// Krylov space of diag(m - c) started from zeta^m; full reorthogonalization.
Eigen::MatrixXcd root_block(std::size_t m, double angle, int order) {
    Eigen::MatrixXcd v(static_cast<Eigen::Index>(m), order);
    const double centre = 0.5 * static_cast<double>(m - 1);
    Eigen::VectorXd ramp(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
        v(static_cast<Eigen::Index>(i), 0) = std::polar(1.0, angle * static_cast<double>(i));
        ramp(static_cast<Eigen::Index>(i)) = static_cast<double>(i) - centre;
    }
    v.col(0).normalize();
    for (int p = 1; p < order; ++p) {
        Eigen::VectorXcd w = ramp.cwiseProduct(v.col(p - 1));
        for (int pass = 0; pass < 2; ++pass) {
            for (int q = 0; q < p; ++q) w -= v.col(q).dot(w) * v.col(q);
        }
        const double norm = w.norm();
        if (norm == 0.0) throw SolverError("null constraint block is rank deficient");
        v.col(p) = w / norm;
    }
    return v;
}

}  // namespace

int NullSpec::total_order() const {
    int k = k0;
    for (const auto& null : nulls) k += 2 * null.order;
    return k;
}

void validate(const NullSpec& spec, std::size_t m) {
    if (m == 0) throw ValidationError("pulse count must be positive");
    if (spec.k0 < 0) throw ValidationError("k0 must be nonnegative");
    for (std::size_t i = 0; i < spec.nulls.size(); ++i) {
        const auto& null = spec.nulls[i];
        if (!(null.theta > 0.0 && null.theta < std::numbers::pi)) {
            throw ValidationError("Doppler null angles must lie strictly inside (0, pi)");
        }
        if (null.order < 1) throw ValidationError("Doppler null orders must be positive");
        for (std::size_t j = 0; j < i; ++j) {
            if (spec.nulls[j].theta == null.theta) {
                throw ValidationError("Doppler null angles must be distinct");
            }
        }
    }
    const int k = spec.total_order();
    if (static_cast<std::size_t>(k) + 1 > m) {
        std::ostringstream msg;
        msg << "total null order K = k0 + 2*sum(k_i) = " << k << " violates K <= M-1 = "
            << static_cast<long long>(m) - 1;
        throw ValidationError(msg.str());
    }
}

double root_angle(const DopplerNull& null, QuadraticFactor factor) {
    if (factor == QuadraticFactor::corrected) return null.theta;
    return std::acos(0.5 * std::cos(null.theta));
}

std::vector<double> annihilator_coeffs(const NullSpec& spec, QuadraticFactor factor) {
    return annihilator<double>(spec, factor);
}

Eigen::MatrixXd convolution_matrix(std::span<const double> a, std::size_t m) {
    if (a.empty() || a.size() > m) {
        throw ValidationError("annihilator degree K = " + std::to_string(a.size() - 1) +
                              " violates K <= M-1 for M = " + std::to_string(m));
    }
    const auto rows = static_cast<Eigen::Index>(m);
    const auto cols = static_cast<Eigen::Index>(m - a.size() + 1);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (std::size_t i = 0; i < a.size(); ++i) out(j + static_cast<Eigen::Index>(i), j) = a[i];
    return out;
}

ConstraintBasis constraint_basis(std::span<const double> a, std::size_t m) {
    ConstraintBasis basis;
    basis.a.assign(a.begin(), a.end());
    basis.m = m;
    basis.toeplitz = convolution_matrix(a, m);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis.toeplitz);
    basis.orthonormal = qr.householderQ() *
                        Eigen::MatrixXd::Identity(basis.toeplitz.rows(), basis.toeplitz.cols());
    return basis;
}

ConstraintBasis constraint_basis(const NullSpec& spec, std::size_t m, QuadraticFactor factor) {
    validate(spec, m);
    ConstraintBasis basis;
    basis.a = annihilator_coeffs(spec, factor);
    basis.m = m;
    basis.toeplitz = convolution_matrix(basis.a, m);

    const auto rows = static_cast<Eigen::Index>(m);
    const auto k = static_cast<Eigen::Index>(spec.total_order());
    if (k == 0) {
        basis.orthonormal = Eigen::MatrixXd::Identity(rows, rows);
        return basis;
    }

    Eigen::MatrixXd complement(rows, k);
    Eigen::Index col = 0;
    if (spec.k0 > 0) {
        complement.leftCols(spec.k0) = root_block(m, 0.0, spec.k0).real();
        col = spec.k0;
    }
    for (const auto& null : spec.nulls) {
        const Eigen::MatrixXcd block = root_block(m, root_angle(null, factor), null.order);
        complement.middleCols(col, null.order) = block.real();
        complement.middleCols(col + null.order, null.order) = block.imag();
        col += 2 * null.order;
    }

    Eigen::HouseholderQR<Eigen::MatrixXd> qr(complement);
    const Eigen::MatrixXd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    const double r_min = r.diagonal().cwiseAbs().minCoeff();
    if (r_min < 1e-10 * r.diagonal().cwiseAbs().maxCoeff()) {
        throw SolverError("Doppler null points are too close to separate numerically");
    }
    const Eigen::MatrixXd q = qr.householderQ();
    basis.orthonormal = q.rightCols(rows - k);
    return basis;
}

QuadraticForm quadratic_form(const ConstraintBasis& basis, const WindowTemplate& window) {
    if (window.size() != basis.m) {
        throw ValidationError("window length " + std::to_string(window.size()) +
                              " does not match pulse count " + std::to_string(basis.m));
    }
    const Eigen::Map<const Eigen::VectorXd> w(window.values.data(),
                                              static_cast<Eigen::Index>(window.size()));
    const Eigen::MatrixXd weighted = w.asDiagonal() * basis.orthonormal;
    Eigen::MatrixXd form = weighted * weighted.transpose();
    form = 0.5 * (form + form.transpose()).eval();
    return QuadraticForm{std::move(form)};
}

std::vector<double> synthetic_remainder(std::span<const double> y, std::span<const double> a) {
    if (a.empty() || a.back() == 0.0) throw ValidationError("divisor must have nonzero leading coefficient");
    std::vector<double> r(y.begin(), y.end());
    const std::size_t k = a.size() - 1;
    if (r.size() <= k) return r;
    for (std::size_t i = r.size() - 1; i >= k; --i) {
        const double c = r[i] / a[k];
        for (std::size_t j = 0; j <= k; ++j) r[i - k + j] -= c * a[j];
        if (i == k) break;
    }
    r.resize(k);
    return r;
}

namespace {

std::vector<double> ls_remainder(std::span<const double> y, const std::vector<Wide>& a) {
    const std::size_t m = y.size();
    if (a.empty() || a.size() > m) throw ValidationError("divisor degree exceeds M-1");
    const std::size_t cols = m - a.size() + 1;

    std::vector<std::vector<Wide>> basis;
    basis.reserve(cols);
    for (std::size_t j = 0; j < cols; ++j) {
        std::vector<Wide> v(m, Wide(0));
        for (std::size_t i = 0; i < a.size(); ++i) v[j + i] = a[i];
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : basis) {
                Wide dot = 0;
                for (std::size_t i = 0; i < m; ++i) dot += q[i] * v[i];
                for (std::size_t i = 0; i < m; ++i) v[i] -= dot * q[i];
            }
        }
        Wide norm = 0;
        for (const auto& x : v) norm += x * x;
        norm = sqrt(norm);
        for (auto& x : v) x /= norm;
        basis.push_back(std::move(v));
    }

    std::vector<Wide> r(y.begin(), y.end());
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& q : basis) {
            Wide dot = 0;
            for (std::size_t i = 0; i < m; ++i) dot += q[i] * r[i];
            for (std::size_t i = 0; i < m; ++i) r[i] -= dot * q[i];
        }
    }
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = static_cast<double>(r[i]);
    return out;
}

}  // namespace

std::vector<double> polynomial_remainder(std::span<const double> y, std::span<const double> a) {
    return ls_remainder(y, std::vector<Wide>(a.begin(), a.end()));
}

std::vector<double> null_remainder(std::span<const double> y, const NullSpec& spec,
                                   QuadraticFactor factor) {
    return ls_remainder(y, annihilator<Wide>(spec, factor));
}

NullOrderReport check_null_order(std::span<const double> y, const NullSpec& spec,
                                 QuadraticFactor factor, double rel_tol) {
    validate(spec, y.size());
    const std::size_t m = y.size();
    const double md = static_cast<double>(m);
    double energy = 0.0;
    for (double v : y) energy += v * v;
    const double scale = std::sqrt(energy / md);

    NullOrderReport report;
    std::ostringstream detail;
    auto moments = [&](double angle, int order, const char* label) {
        for (int p = 0; p < order; ++p) {
            cplx sum = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const double id = static_cast<double>(i);
                sum += std::pow(id, p) * y[i] * std::polar(1.0, angle * id);
            }
            const double ratio = std::abs(sum) / (std::pow(md, p + 1) * scale);
            if (ratio > report.worst_moment) {
                report.worst_moment = ratio;
                detail.str("");
                detail << label << " null at " << angle << " rad, moment order " << p;
            }
        }
    };
    moments(0.0, spec.k0, "zero-Doppler");
    for (const auto& null : spec.nulls) moments(root_angle(null, factor), null.order, "Doppler");

    const auto r = null_remainder(y, spec, factor);
    for (double v : r) report.remainder_max = std::max(report.remainder_max, std::abs(v));
    report.remainder_limit = rel_tol * md * scale;

    const bool moments_ok = report.worst_moment <= rel_tol;
    const bool remainder_ok = report.remainder_max <= report.remainder_limit;
    report.ok = moments_ok && remainder_ok;
    if (!moments_ok) {
        report.detail = "moment condition failed: " + detail.str();
    } else if (!remainder_ok) {
        report.detail = "division remainder exceeds limit";
    }
    return report;
}

}  // namespace drcw
