#include "drcw/sequences.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

#include "drcw/error.hpp"

namespace drcw {

namespace {

void normalize_energy(std::vector<double>& values) {
    const double energy = std::inner_product(values.begin(), values.end(), values.begin(), 0.0);
    const double scale = std::sqrt(static_cast<double>(values.size()) / energy);
    for (double& v : values) v *= scale;
}

}  // namespace

bool is_power_of_two(std::size_t n) { return std::has_single_bit(n); }

GolayPair generate_golay_pair(std::size_t n) {
    if (!is_power_of_two(n)) {
        throw ValidationError("Golay pair length must be a power of two, got " + std::to_string(n));
    }
    GolayPair pair{{1}, {1}};
    while (pair.x1.size() < n) {
        SignSequence a = pair.x1;
        SignSequence b = pair.x1;
        a.insert(a.end(), pair.x2.begin(), pair.x2.end());
        for (int v : pair.x2) b.push_back(-v);
        pair.x1 = std::move(a);
        pair.x2 = std::move(b);
    }
    return pair;
}

Acf acf(std::span<const int> seq) {
    if (seq.empty()) throw ValidationError("acf of an empty sequence");
    const auto n = static_cast<std::ptrdiff_t>(seq.size());
    Acf out;
    out.values.assign(static_cast<std::size_t>(2 * n - 1), 0);
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        std::int64_t sum = 0;
        for (std::ptrdiff_t i = 0; i + k < n; ++i) sum += seq[i] * seq[i + k];
        out.values[static_cast<std::size_t>(n - 1 + k)] = sum;
        out.values[static_cast<std::size_t>(n - 1 - k)] = sum;
    }
    return out;
}

ComplementarityReport verify_complementary(const GolayPair& pair) {
    if (pair.x1.size() != pair.x2.size()) {
        throw ValidationError("Golay pair sequences differ in length");
    }
    const Acf r1 = acf(pair.x1);
    const Acf r2 = acf(pair.x2);
    const auto n = static_cast<std::int64_t>(pair.length());
    ComplementarityReport report;
    for (std::ptrdiff_t k = -r1.max_lag(); k <= r1.max_lag(); ++k) {
        const std::int64_t expected = k == 0 ? 2 * n : 0;
        const std::int64_t violation = std::abs(r1.at(k) + r2.at(k) - expected);
        if (violation > report.max_violation) {
            report.max_violation = violation;
            report.worst_lag = k;
        }
    }
    report.complementary = report.max_violation == 0;
    return report;
}

SignSequence ptm_order(std::size_t m) {
    if (!is_power_of_two(m)) {
        throw ValidationError("PTM order length must be a power of two, got " + std::to_string(m));
    }
    SignSequence s(m);
    for (std::size_t j = 0; j < m; ++j) s[j] = std::popcount(j) % 2 == 0 ? 1 : -1;
    return s;
}

SignSequence standard_order(std::size_t m) {
    SignSequence s(m);
    for (std::size_t j = 0; j < m; ++j) s[j] = j % 2 == 0 ? 1 : -1;
    return s;
}

std::vector<double> binomial_weights(std::size_t m) {
    if (m == 0) throw ValidationError("binomial weights need m >= 1");
    // C(m-1, j) computed exactly while it fits; doubles beyond that are still fine
    // because the row is rescaled anyway.
    std::vector<double> w(m);
    double c = 1.0;
    for (std::size_t j = 0; j < m; ++j) {
        w[j] = c;
        c = c * static_cast<double>(m - 1 - j) / static_cast<double>(j + 1);
    }
    normalize_energy(w);
    return w;
}

WindowTemplate window_template(WindowKind kind, std::size_t m) {
    if (m == 0) throw ValidationError("window length must be positive");
    if (kind == WindowKind::hamming && m < 2) {
        throw ValidationError("hamming window needs at least 2 samples");
    }
    // Hann and Blackman vanish at both ends, so m = 2 leaves nothing to normalize.
    if ((kind == WindowKind::hanning || kind == WindowKind::blackman) && m < 3) {
        throw ValidationError(std::string(to_string(kind)) + " window needs at least 3 samples");
    }
    WindowTemplate win{kind, std::vector<double>(m, 1.0)};
    if (kind == WindowKind::rectangular) return win;

    const double denom = static_cast<double>(m - 1);
    for (std::size_t j = 0; j < m; ++j) {
        const double x = 2.0 * std::numbers::pi * static_cast<double>(j) / denom;
        double v = 0.0;
        switch (kind) {
            case WindowKind::hamming: v = 0.54 - 0.46 * std::cos(x); break;
            case WindowKind::hanning: v = 0.5 - 0.5 * std::cos(x); break;
            case WindowKind::blackman: v = 0.42 - 0.5 * std::cos(x) + 0.08 * std::cos(2.0 * x); break;
            case WindowKind::rectangular: v = 1.0; break;
        }
        // Blackman endpoints evaluate to ~-1e-17.
        win.values[j] = std::max(v, 0.0);
    }
    normalize_energy(win.values);
    return win;
}

std::string_view to_string(WindowKind kind) {
    switch (kind) {
        case WindowKind::rectangular: return "rectangular";
        case WindowKind::hamming: return "hamming";
        case WindowKind::hanning: return "hanning";
        case WindowKind::blackman: return "blackman";
    }
    return "unknown";
}

WindowKind parse_window_kind(std::string_view name) {
    if (name == "rectangular" || name == "rect") return WindowKind::rectangular;
    if (name == "hamming") return WindowKind::hamming;
    if (name == "hanning" || name == "hann") return WindowKind::hanning;
    if (name == "blackman") return WindowKind::blackman;
    throw ValidationError("unknown window kind '" + std::string(name) + "'");
}

}  // namespace drcw
