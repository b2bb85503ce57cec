#include <doctest.h>

#include <cmath>
#include <random>

#include "drcw/error.hpp"
#include "drcw/sequences.hpp"
#include "oracles.hpp"

using namespace drcw;

namespace {

std::vector<long long> to_ll(const Acf& r) { return {r.values.begin(), r.values.end()}; }

double sum_squares(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

}  // namespace

TEST_CASE("golay pairs for small lengths") {
    auto p1 = generate_golay_pair(1);
    CHECK(p1.x1 == SignSequence{1});
    CHECK(p1.x2 == SignSequence{1});

    auto p2 = generate_golay_pair(2);
    CHECK(p2.x1 == SignSequence{1, 1});
    CHECK(p2.x2 == SignSequence{1, -1});

    auto p4 = generate_golay_pair(4);
    CHECK(p4.x1 == SignSequence{1, 1, 1, -1});
    CHECK(p4.x2 == SignSequence{1, 1, -1, 1});
    auto r1 = oracle::acf(p4.x1);
    auto r2 = oracle::acf(p4.x2);
    for (std::size_t i = 0; i < r1.size(); ++i) CHECK(r1[i] + r2[i] == (i == 3 ? 8 : 0));
}

TEST_CASE("golay complementarity holds exactly up to 1024") {
    for (std::size_t n = 1; n <= 1024; n *= 2) {
        const auto pair = generate_golay_pair(n);
        const auto report = verify_complementary(pair);
        CHECK(report.complementary);
        CHECK(report.max_violation == 0);
        if (n <= 128) {
            auto r1 = oracle::acf(pair.x1);
            auto r2 = oracle::acf(pair.x2);
            for (std::size_t i = 0; i < r1.size(); ++i)
                CHECK(r1[i] + r2[i] == (i == n - 1 ? 2 * static_cast<long long>(n) : 0));
        }
    }
}

TEST_CASE("golay rejects non powers of two") {
    CHECK_THROWS_AS(generate_golay_pair(0), ValidationError);
    CHECK_THROWS_AS(generate_golay_pair(3), ValidationError);
    CHECK_THROWS_AS(generate_golay_pair(48), ValidationError);
}

TEST_CASE("acf examples") {
    const SignSequence a{1, 1}, b{1, -1}, c{1, 1, 1, -1};
    CHECK(to_ll(acf(a)) == std::vector<long long>{1, 2, 1});
    CHECK(to_ll(acf(b)) == std::vector<long long>{-1, 2, -1});
    CHECK(to_ll(acf(c)) == std::vector<long long>{-1, 0, 1, 4, 1, 0, -1});
    CHECK(acf(c).at(-3) == -1);
    CHECK(acf(c).at(0) == 4);
}

TEST_CASE("acf is symmetric with R[0] = N for random sign inputs") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + rng() % 40;
        SignSequence x(n);
        for (auto& v : x) v = rng() & 1 ? 1 : -1;
        const auto r = acf(x);
        CHECK(to_ll(r) == oracle::acf(x));
        CHECK(r.at(0) == static_cast<std::int64_t>(n));
        for (std::ptrdiff_t k = 1; k < static_cast<std::ptrdiff_t>(n); ++k) CHECK(r.at(k) == r.at(-k));
    }
}

TEST_CASE("complementarity check detects a non-pair") {
    GolayPair p{{1, 1}, {1, 1}};
    const auto report = verify_complementary(p);
    CHECK_FALSE(report.complementary);
    CHECK(report.max_violation == 2);
    CHECK(std::abs(report.worst_lag) == 1);
    CHECK(verify_complementary(GolayPair{{1, 1}, {1, -1}}).complementary);
}

TEST_CASE("ptm order") {
    CHECK(ptm_order(1) == SignSequence{1});
    CHECK(ptm_order(4) == SignSequence{1, -1, -1, 1});
    CHECK(ptm_order(8) == SignSequence{1, -1, -1, 1, -1, 1, 1, -1});
    for (std::size_t m = 2; m <= 256; m *= 2) {
        const auto full = ptm_order(m);
        const auto half = ptm_order(m / 2);
        for (std::size_t j = 0; j < m / 2; ++j) CHECK(full[2 * j] == half[j]);
        for (std::size_t j = 0; j < m; ++j) {
            int ones = 0;
            for (std::size_t v = j; v; v >>= 1) ones += static_cast<int>(v & 1);
            CHECK(full[j] == (ones % 2 ? -1 : 1));
        }
    }
}

TEST_CASE("standard order alternates") {
    CHECK(standard_order(5) == SignSequence{1, -1, 1, -1, 1});
}

TEST_CASE("binomial weights") {
    auto w2 = binomial_weights(2);
    CHECK(w2[0] == doctest::Approx(w2[1]));
    auto w4 = binomial_weights(4);
    CHECK(w4[1] / w4[0] == doctest::Approx(3.0));
    CHECK(w4[2] / w4[0] == doctest::Approx(3.0));
    CHECK(w4[3] / w4[0] == doctest::Approx(1.0));
    CHECK(sum_squares(w4) == doctest::Approx(4.0));
    double sw = 0.0;
    for (double v : w4) sw += v;
    CHECK(10.0 * std::log10(sw * sw / (4.0 * sum_squares(w4))) == doctest::Approx(-0.969).epsilon(1e-3));

    auto w50 = binomial_weights(50);
    for (int j = 0; j < 50; ++j)
        CHECK(w50[j] / w50[0] == doctest::Approx(static_cast<double>(oracle::binomial(49, j))).epsilon(1e-12));
}

TEST_CASE("window templates") {
    for (double v : window_template(WindowKind::rectangular, 7).values) CHECK(v == 1.0);

    auto h = window_template(WindowKind::hamming, 3).values;
    CHECK(h[0] / h[1] == doctest::Approx(0.08));
    CHECK(h[2] / h[1] == doctest::Approx(0.08));

    auto hn = window_template(WindowKind::hanning, 3).values;
    CHECK(hn[0] == doctest::Approx(0.0));
    CHECK(hn[2] == doctest::Approx(0.0));
    CHECK(hn[1] > 0.0);

    for (auto kind : {WindowKind::rectangular, WindowKind::hamming, WindowKind::hanning, WindowKind::blackman}) {
        for (std::size_t m : {3u, 4u, 10u, 50u, 333u}) {
            const auto w = window_template(kind, m);
            CHECK(w.size() == m);
            CHECK(std::abs(sum_squares(w.values) - static_cast<double>(m)) <= 1e-12 * static_cast<double>(m));
            for (double v : w.values) CHECK(v >= 0.0);
            for (std::size_t j = 0; j < m; ++j) CHECK(w.values[j] == doctest::Approx(w.values[m - 1 - j]));
        }
    }
}

TEST_CASE("degenerate windows are rejected") {
    CHECK_THROWS_AS(window_template(WindowKind::rectangular, 0), ValidationError);
    CHECK_THROWS_AS(window_template(WindowKind::hamming, 1), ValidationError);
    CHECK_THROWS_AS(window_template(WindowKind::hanning, 2), ValidationError);
    CHECK_THROWS_AS(window_template(WindowKind::blackman, 2), ValidationError);
    CHECK(window_template(WindowKind::hamming, 2).values[0] == doctest::Approx(1.0));
}

TEST_CASE("window names") {
    CHECK(parse_window_kind("hamming") == WindowKind::hamming);
    CHECK(parse_window_kind("rect") == WindowKind::rectangular);
    CHECK(parse_window_kind(to_string(WindowKind::blackman)) == WindowKind::blackman);
    CHECK_THROWS_AS(parse_window_kind("kaiser"), ValidationError);
}
