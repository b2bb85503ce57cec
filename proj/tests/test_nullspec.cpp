#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "drcw/error.hpp"
#include "drcw/nullspec.hpp"
#include "oracles.hpp"

using namespace drcw;
using std::numbers::pi;

namespace {

// sum_m m^p y_m zeta^m
std::complex<double> moment(const Eigen::VectorXd& y, int p, double theta) {
    std::complex<double> acc = 0.0;
    for (int m = 0; m < y.size(); ++m) acc += std::pow(double(m), p) * y(m) * std::polar(1.0, theta * m);
    return acc;
}

NullSpec random_spec(std::mt19937& rng, std::size_t m) {
    NullSpec spec;
    const int budget = static_cast<int>(m) - 1;
    spec.k0 = static_cast<int>(rng() % (budget / 2 + 1));
    int used = spec.k0;
    const int n_nulls = static_cast<int>(rng() % 3);
    for (int i = 0; i < n_nulls && used + 2 <= budget; ++i) {
        const int order = 1 + static_cast<int>(rng() % std::max(1, (budget - used) / 4 + 1));
        if (used + 2 * order > budget) break;
        const double theta = pi * (0.1 + 0.25 * i + 0.2 * std::uniform_real_distribution<>(0, 1)(rng));
        spec.nulls.push_back({theta, order});
        used += 2 * order;
    }
    return spec;
}

}  // namespace

TEST_CASE("annihilator coefficients") {
    auto eq = [](const std::vector<double>& a, const std::vector<double>& b) {
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-14));
    };
    eq(annihilator_coeffs(NullSpec{1, {}}), {1, -1});
    eq(annihilator_coeffs(NullSpec{2, {}}), {1, -2, 1});
    auto quarter = annihilator_coeffs(NullSpec{0, {{pi / 2, 1}}});
    CHECK(quarter[0] == doctest::Approx(1.0));
    CHECK(std::abs(quarter[1]) < 1e-15);
    CHECK(quarter[2] == doctest::Approx(1.0));
    eq(annihilator_coeffs(NullSpec{0, {{2 * pi / 3, 1}}}), {1, 1, 1});
    eq(annihilator_coeffs(NullSpec{0, {}}), {1});

    const NullSpec mixed{2, {{0.8 * pi, 2}}};
    const double c = std::cos(0.8 * pi);
    auto expect = oracle::poly_mul({1, -2, 1}, oracle::poly_mul({1, -2 * c, 1}, {1, -2 * c, 1}));
    eq(annihilator_coeffs(mixed), expect);

    auto legacy = annihilator_coeffs(NullSpec{0, {{0.8 * pi, 1}}}, QuadraticFactor::legacy);
    CHECK(legacy[1] == doctest::Approx(-c));
    CHECK(root_angle({0.8 * pi, 1}, QuadraticFactor::legacy) == doctest::Approx(std::acos(c / 2)));
    CHECK(root_angle({0.8 * pi, 1}, QuadraticFactor::corrected) == doctest::Approx(0.8 * pi));
}

TEST_CASE("null spec validation") {
    CHECK_NOTHROW(validate(NullSpec{49, {}}, 50));
    CHECK_THROWS_AS(validate(NullSpec{50, {}}, 50), ValidationError);
    CHECK_THROWS_AS(validate(NullSpec{20, {{0.8 * pi, 15}}}, 50), ValidationError);
    CHECK_THROWS_AS(validate(NullSpec{-1, {}}, 10), ValidationError);
    CHECK_THROWS_AS(validate(NullSpec{0, {{0.0, 1}}}, 10), ValidationError);
    CHECK_THROWS_AS(validate(NullSpec{0, {{pi, 1}}}, 10), ValidationError);
    CHECK_THROWS_AS(validate(NullSpec{0, {{0.5, 0}}}, 10), ValidationError);
    CHECK_THROWS_AS(validate(NullSpec{0, {{0.5, 1}, {0.5, 1}}}, 10), ValidationError);
    CHECK(NullSpec{20, {{0.8 * pi, 4}}}.total_order() == 28);
    try {
        validate(NullSpec{20, {{0.8 * pi, 15}}}, 50);
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("K = ") != std::string::npos);
    }
}

TEST_CASE("convolution matrix") {
    const std::vector<double> a{1, -1};
    const auto A = convolution_matrix(a, 3);
    Eigen::MatrixXd expect(3, 2);
    expect << 1, 0, -1, 1, 0, -1;
    CHECK((A - expect).norm() == 0.0);

    const std::vector<double> one{1};
    CHECK((convolution_matrix(one, 4) - Eigen::MatrixXd::Identity(4, 4)).norm() == 0.0);
    const auto b = constraint_basis(one, 4);
    CHECK((b.orthonormal.cwiseAbs() - Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-15);

    const std::vector<double> a2{1, -2, 1};
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(3);
    Eigen::VectorXd prod = convolution_matrix(a2, 5) * ones;
    auto conv = oracle::poly_mul(a2, {1, 1, 1});
    for (int i = 0; i < 5; ++i) CHECK(prod(i) == conv[i]);
    CHECK(prod(2) == 0.0);
}

TEST_CASE("basis is orthonormal and spans range(A) for small K") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t m = 4 + rng() % 16;
        NullSpec spec = random_spec(rng, m);
        if (spec.total_order() > 6) continue;
        const auto a = annihilator_coeffs(spec);
        const auto qr = constraint_basis(a, m);
        const auto root = constraint_basis(spec, m);
        const auto k = static_cast<Eigen::Index>(m) - spec.total_order();
        REQUIRE(root.orthonormal.cols() == k);
        CHECK((root.orthonormal.transpose() * root.orthonormal - Eigen::MatrixXd::Identity(k, k)).norm() < 1e-12);
        // Same projector regardless of route.
        const Eigen::MatrixXd p1 = qr.orthonormal * qr.orthonormal.transpose();
        const Eigen::MatrixXd p2 = root.orthonormal * root.orthonormal.transpose();
        CHECK((p1 - p2).norm() < 1e-10);
        // A columns lie in span(A_bar).
        const Eigen::MatrixXd A = convolution_matrix(a, m);
        CHECK((p2 * A - A).norm() < 1e-10 * (1.0 + A.norm()));
    }
}

TEST_CASE("basis vectors satisfy the moment conditions at large K") {
    std::mt19937 rng(17);
    for (const NullSpec& spec : {NullSpec{20, {}}, NullSpec{30, {}}, NullSpec{20, {{0.8 * pi, 4}}},
                                 NullSpec{10, {{0.3 * pi, 5}, {0.7 * pi, 3}}}}) {
        const std::size_t m = 50;
        const auto basis = constraint_basis(spec, m);
        std::normal_distribution<double> g;
        Eigen::VectorXd b(basis.dimension());
        for (auto& v : b) v = g(rng);
        const Eigen::VectorXd y = basis.orthonormal * b;
        const double scale = y.norm() / std::sqrt(double(m));
        for (int p = 0; p < spec.k0; ++p)
            CHECK(std::abs(moment(y, p, 0.0)) <= 1e-8 * std::pow(double(m), p + 1) * scale);
        for (const auto& n : spec.nulls)
            for (int p = 0; p < n.order; ++p)
                CHECK(std::abs(moment(y, p, n.theta)) <= 1e-8 * std::pow(double(m), p + 1) * scale);
        const auto report = check_null_order(std::vector<double>(y.data(), y.data() + y.size()), spec);
        CHECK(report.ok);
    }
}

TEST_CASE("quadratic form") {
    const NullSpec spec{3, {{0.6 * pi, 1}}};
    const std::size_t m = 12;
    const auto basis = constraint_basis(spec, m);
    const auto rect = quadratic_form(basis, window_template(WindowKind::rectangular, m)).matrix;
    CHECK((rect * rect - rect).norm() < 1e-12);
    CHECK(rect.trace() == doctest::Approx(double(m - 5)));
    CHECK((rect - rect.transpose()).norm() < 1e-14);

    const auto ham = quadratic_form(basis, window_template(WindowKind::hamming, m)).matrix;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ham);
    int nonzero = 0;
    for (double v : es.eigenvalues()) nonzero += std::abs(v) > 1e-10;
    CHECK(nonzero == int(m - 5));
}

TEST_CASE("hamming quadratic form for a=[1,-1], m=3") {
    const std::vector<double> a{1, -1};
    const auto basis = constraint_basis(a, 3);
    const auto w = window_template(WindowKind::hamming, 3).values;
    Eigen::MatrixXd A(3, 2);
    A << 1, 0, -1, 1, 0, -1;
    const Eigen::MatrixXd q = oracle::gram_schmidt(A);
    const Eigen::MatrixXd expect = Eigen::VectorXd::Map(w.data(), 3).asDiagonal() * (q * q.transpose()) *
             Eigen::VectorXd::Map(w.data(), 3).asDiagonal();
    // Independent closed form: q q^T = I - 11^T/3.
    const Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(3, 3) - Eigen::MatrixXd::Constant(3, 3, 1.0 / 3.0);
    CHECK((q * q.transpose() - proj).norm() < 1e-14);
    const auto form = quadratic_form(basis, window_template(WindowKind::hamming, 3));
    CHECK((form.matrix - expect).norm() < 1e-13);
}

TEST_CASE("remainders") {
    const std::vector<double> a{1, -2, 1};
    auto y = oracle::poly_mul(a, {2, -1, 3, 0.5});
    for (double r : synthetic_remainder(y, a)) CHECK(std::abs(r) < 1e-12);
    for (double r : polynomial_remainder(y, a)) CHECK(std::abs(r) < 1e-12);

    auto bumped = y;
    bumped[0] += 1.0;
    auto syn = synthetic_remainder(bumped, a);
    double max_r = 0.0;
    for (double r : syn) max_r = std::max(max_r, std::abs(r));
    CHECK(max_r > 0.1);
    double max_ls = 0.0;
    for (double r : polynomial_remainder(bumped, a)) max_ls = std::max(max_ls, std::abs(r));
    CHECK(max_ls > 0.1);
}

TEST_CASE("null order check flags perturbed vectors") {
    const NullSpec spec{20, {}};
    const auto basis = constraint_basis(spec, 50);
    Eigen::VectorXd y = basis.orthonormal.col(0) * std::sqrt(50.0);
    std::vector<double> yy(y.data(), y.data() + y.size());
    CHECK(check_null_order(yy, spec).ok);
    yy[7] *= 1.001;
    const auto report = check_null_order(yy, spec);
    CHECK_FALSE(report.ok);
    CHECK_FALSE(report.detail.empty());
}
