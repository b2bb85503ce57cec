#pragma once

// Golay complementary pairs, transmit orders and receive weight templates.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace drcw {

using SignSequence = std::vector<int>;

struct GolayPair {
    SignSequence x1;
    SignSequence x2;

    std::size_t length() const { return x1.size(); }
};

// Aperiodic autocorrelation indexed by lag in [-(N-1), N-1].
struct Acf {
    std::vector<std::int64_t> values;

    std::ptrdiff_t max_lag() const { return static_cast<std::ptrdiff_t>(values.size() / 2); }
    std::int64_t at(std::ptrdiff_t lag) const { return values[static_cast<std::size_t>(lag + max_lag())]; }
};

struct ComplementarityReport {
    bool complementary = false;
    std::int64_t max_violation = 0;  // max_k |R1[k] + R2[k] - 2N delta[k]|
    std::ptrdiff_t worst_lag = 0;
};

enum class WindowKind { rectangular, hamming, hanning, blackman };

struct WindowTemplate {
    WindowKind kind = WindowKind::rectangular;
    std::vector<double> values;  // sum of squares == values.size()

    std::size_t size() const { return values.size(); }
};

bool is_power_of_two(std::size_t n);

/// Recursive doubling (a, b) -> (a|b, a|-b) starting from ([1], [1]).
/// Throws ValidationError unless n is a power of two.
GolayPair generate_golay_pair(std::size_t n);

Acf acf(std::span<const int> seq);

/// Exact integer check of R1[k] + R2[k] == 2N delta[k].
ComplementarityReport verify_complementary(const GolayPair& pair);

/// Prouhet-Thue-Morse order: s_j = (-1)^popcount(j).
SignSequence ptm_order(std::size_t m);

/// Alternating order [1, -1, 1, -1, ...].
SignSequence standard_order(std::size_t m);

/// w_j proportional to C(m-1, j), scaled so sum w_j^2 == m.
std::vector<double> binomial_weights(std::size_t m);

/// Symmetric cosine-sum window over denominator m-1, scaled so sum w_j^2 == m.
WindowTemplate window_template(WindowKind kind, std::size_t m);

std::string_view to_string(WindowKind kind);
WindowKind parse_window_kind(std::string_view name);

}  // namespace drcw
