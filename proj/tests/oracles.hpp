#pragma once
// Brute-force reference computations shared by unit and acceptance tests.
// Deliberately naive: no code shared with the library beyond plain data types.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;

inline std::vector<long long> acf(const std::vector<int>& x) {
    const long long n = static_cast<long long>(x.size());
    std::vector<long long> r(static_cast<std::size_t>(2 * n - 1), 0);
    for (long long lag = -(n - 1); lag <= n - 1; ++lag) {
        long long acc = 0;
        for (long long i = 0; i < n; ++i) {
            const long long j = i + lag;
            if (j >= 0 && j < n) acc += x[i] * x[j];
        }
        r[static_cast<std::size_t>(lag + n - 1)] = acc;
    }
    return r;
}

// R(k, theta) = sum_m w_m sum_n x_m[n] x_m[n + k] e^{j theta m}, x_m = x1 if s_m = +1 else x2.
inline cplx caf(const std::vector<int>& x1, const std::vector<int>& x2, const std::vector<int>& s,
                const std::vector<double>& w, long long k, double theta) {
    const long long n = static_cast<long long>(x1.size());
    cplx total = 0.0;
    for (std::size_t m = 0; m < s.size(); ++m) {
        const auto& x = s[m] > 0 ? x1 : x2;
        double r = 0.0;
        for (long long i = 0; i < n; ++i) {
            const long long j = i + k;
            if (j >= 0 && j < n) r += x[i] * x[j];
        }
        total += w[m] * r * std::polar(1.0, theta * static_cast<double>(m));
    }
    return total;
}

struct BinaryOptimum {
    double value = -std::numeric_limits<double>::infinity();
    std::vector<int> signs;
};

// max s^T C s over all 2^M sign vectors.
inline BinaryOptimum exhaustive(const Eigen::MatrixXd& c) {
    const int m = static_cast<int>(c.rows());
    BinaryOptimum best;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        Eigen::VectorXd s(m);
        for (int i = 0; i < m; ++i) s(i) = (mask >> i) & 1 ? -1.0 : 1.0;
        const double v = s.dot(c * s);
        if (v > best.value) {
            best.value = v;
            best.signs.assign(m, 1);
            for (int i = 0; i < m; ++i) best.signs[i] = static_cast<int>(s(i));
        }
    }
    return best;
}

inline std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> c(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

inline long long binomial(int n, int k) {
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Classical Gram-Schmidt, applied twice.
inline Eigen::MatrixXd gram_schmidt(const Eigen::MatrixXd& a) {
    Eigen::MatrixXd q = a;
    for (int j = 0; j < q.cols(); ++j) {
        for (int pass = 0; pass < 2; ++pass)
            for (int i = 0; i < j; ++i) q.col(j) -= q.col(i).dot(q.col(j)) * q.col(i);
        q.col(j) /= q.col(j).norm();
    }
    return q;
}

}  // namespace oracle
