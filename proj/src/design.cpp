#include "drcw/design.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "drcw/error.hpp"
#include "drcw/linalg.hpp"
#include "drcw/random.hpp"

namespace drcw {

namespace {

double form_value(const Eigen::MatrixXd& a, const Eigen::VectorXd& s) { return s.dot(a * s); }

void canonical_sign(SignSequence& s) {
    if (!s.empty() && s.front() < 0)
        for (int& v : s) v = -v;
}

}  // namespace

std::string_view to_string(Method method) {
    switch (method) {
        case Method::nm_drcw: return "nm_drcw";
        case Method::ptm: return "ptm";
        case Method::bd: return "bd";
        case Method::uniform: return "uniform";
    }
    return "unknown";
}

Method parse_method(std::string_view name) {
    if (name == "nm" || name == "nm_drcw") return Method::nm_drcw;
    if (name == "ptm") return Method::ptm;
    if (name == "bd") return Method::bd;
    if (name == "uniform") return Method::uniform;
    throw ValidationError("unknown design method '" + std::string(name) + "'");
}

RoundingResult round_solution(const Eigen::MatrixXd& s_matrix, const QuadraticForm& form,
                              const RoundingOptions& options) {
    if (options.trials == 0) throw ValidationError("rounding needs at least one trial");
    const auto n = s_matrix.rows();
    if (n == 0 || s_matrix.cols() != n || form.matrix.rows() != n) {
        throw ValidationError("rounding: SDP solution and quadratic form dimensions differ");
    }
    if (!(options.mu > 0.0)) throw ValidationError("rounding: mu must be positive");

    const linalg::SymmetricEigen eig = linalg::symmetric_eigen(s_matrix);
    RoundingResult out;
    const double neg_tol = 1e-8 * std::max(1.0, eig.values(0));
    Eigen::VectorXd lambda = eig.values;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (lambda(i) < -neg_tol) out.clamped_eigenvalues = true;
        lambda(i) = std::max(lambda(i), 0.0);
    }

    auto to_signs = [](const Eigen::VectorXd& v) {
        SignSequence s(static_cast<std::size_t>(v.size()));
        for (Eigen::Index i = 0; i < v.size(); ++i) s[static_cast<std::size_t>(i)] = v(i) < 0.0 ? -1 : 1;
        return s;
    };
    auto value_of = [&](const SignSequence& s) {
        Eigen::VectorXd v(n);
        for (Eigen::Index i = 0; i < n; ++i) v(i) = s[static_cast<std::size_t>(i)];
        return form_value(form.matrix, v);
    };

    const double rest = lambda.tail(n - 1).sum();
    if (rest <= 0.0 || lambda(0) / rest >= options.mu) {
        out.signs = to_signs(eig.vectors.col(0));
        canonical_sign(out.signs);
        out.objective = value_of(out.signs);
        out.rank_one_shortcut = true;
        return out;
    }

    const Eigen::MatrixXd factor = eig.vectors * lambda.cwiseSqrt().asDiagonal();
    Eigen::VectorXd r(n);
    out.objective = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < options.trials; ++t) {
        GaussianStream gauss(derive_seed(options.seed, t));
        for (Eigen::Index i = 0; i < n; ++i) r(i) = gauss();
        SignSequence s = to_signs(factor * r);
        const double value = value_of(s);
        if (value > out.objective) {
            out.objective = value;
            out.signs = std::move(s);
            out.best_trial = t;
        }
    }
    canonical_sign(out.signs);
    return out;
}

Amplitudes recover_amplitudes(std::span<const int> signs, const ConstraintBasis& basis,
                              const WindowTemplate& window) {
    const auto m = static_cast<Eigen::Index>(basis.m);
    if (static_cast<Eigen::Index>(signs.size()) != m || static_cast<Eigen::Index>(window.size()) != m) {
        throw ValidationError("amplitude recovery: dimension mismatch");
    }
    Eigen::VectorXd ds(m);
    for (Eigen::Index i = 0; i < m; ++i) ds(i) = window.values[static_cast<std::size_t>(i)] * signs[static_cast<std::size_t>(i)];
    const Eigen::VectorXd v = basis.orthonormal.transpose() * ds;
    const double norm = v.norm();
    if (!(norm > 1e-12 * std::max(1.0, ds.norm()))) {
        throw SolverError("degenerate design: windowed sign vector is orthogonal to the null-constrained subspace");
    }
    Amplitudes out;
    out.b = (std::sqrt(static_cast<double>(m)) / norm) * v;
    out.y = basis.orthonormal * out.b;
    return out;
}

DesignResult split_design(Method method, std::span<const double> y) {
    DesignResult d;
    d.method = method;
    d.y.assign(y.begin(), y.end());
    d.transmit_order.resize(y.size());
    d.weights.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        d.transmit_order[i] = y[i] < 0.0 ? -1 : 1;
        d.weights[i] = std::abs(y[i]);
    }
    return d;
}

DesignResult design_nm_drcw(std::size_t m, const NullSpec& spec, const WindowTemplate& window,
                            const DesignOptions& options, SdpSolution* sdp_out) {
    validate(spec, m);
    if (window.size() != m) throw ValidationError("window length must equal pulse count");

    const ConstraintBasis basis = constraint_basis(spec, m, options.factor);
    const QuadraticForm form = quadratic_form(basis, window);
    SdpSolution sdp = solve_partition_sdp(form.matrix, options.sdp);
    if (!sdp.converged()) {
        throw SolverError("SDP did not reach tolerance within " + std::to_string(sdp.iterations) +
                          " iterations (relative gap " + std::to_string(sdp.residuals.relative_gap) + ")");
    }
    const RoundingResult rounded =
        round_solution(sdp.s_matrix, form, {options.trials, options.seed, options.mu});
    const Amplitudes amp = recover_amplitudes(rounded.signs, basis, window);

    DesignResult d = split_design(Method::nm_drcw, std::span<const double>(amp.y.data(), static_cast<std::size_t>(amp.y.size())));
    auto& p = d.provenance;
    p.seed = options.seed;
    p.trials = options.trials;
    p.rounded_objective = rounded.objective;
    p.sdp_bound = sdp.objective;
    p.sdp_dual_bound = sdp.dual_bound;
    p.sdp_iterations = sdp.iterations;
    p.null_spec = spec;
    p.factor = options.factor;
    p.window = window.kind;
    p.rank_one_shortcut = rounded.rank_one_shortcut;
    p.clamped_eigenvalues = rounded.clamped_eigenvalues;
    if (sdp_out) *sdp_out = std::move(sdp);
    return d;
}

DesignResult design_ptm(std::size_t m) {
    const SignSequence s = ptm_order(m);
    DesignResult d;
    d.method = Method::ptm;
    d.transmit_order = s;
    d.weights.assign(m, 1.0);
    d.y.assign(s.begin(), s.end());
    d.provenance.null_spec.k0 = std::countr_zero(m);
    return d;
}

DesignResult design_bd(std::size_t m) {
    DesignResult d;
    d.method = Method::bd;
    d.transmit_order = standard_order(m);
    d.weights = binomial_weights(m);
    d.y.resize(m);
    for (std::size_t i = 0; i < m; ++i) d.y[i] = d.transmit_order[i] * d.weights[i];
    d.provenance.null_spec.k0 = static_cast<int>(m) - 1;
    return d;
}

DesignResult design_uniform(std::size_t m) {
    if (m == 0) throw ValidationError("pulse count must be positive");
    DesignResult d;
    d.method = Method::uniform;
    d.transmit_order = standard_order(m);
    d.weights.assign(m, 1.0);
    d.y.assign(d.transmit_order.begin(), d.transmit_order.end());
    return d;
}

}  // namespace drcw
