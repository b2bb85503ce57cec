#include "drcw/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "drcw/error.hpp"
#include "drcw/export.hpp"
#include "drcw/random.hpp"

namespace drcw {

namespace {

double parse_number(std::string_view text, std::string_view what) {
    double value = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw ValidationError("cannot parse " + std::string(what) + " '" + std::string(text) + "'");
    }
    return value;
}

bool ends_with(std::string_view text, std::string_view suffix) {
    return text.size() >= suffix.size() && text.substr(text.size() - suffix.size()) == suffix;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path.string());
    out << text;
}

std::string summary(const DesignDocument& doc) {
    std::ostringstream os;
    os << "method " << to_string(doc.method) << ", M = " << doc.m << ", N = " << doc.n
       << ", K = " << doc.null_spec.total_order() << "\n";
    if (doc.method == Method::nm_drcw) {
        os << "rounded objective " << format_number(doc.objective) << ", SDP bound " << format_number(doc.sdp_bound)
           << "\n";
    }
    for (const auto& iv : doc.metrics.rsba) {
        os << "RSBA around " << format_number(iv.center / std::numbers::pi) << "pi: ";
        if (iv.empty) {
            os << "empty\n";
        } else {
            os << "[" << format_number(iv.lower / std::numbers::pi) << "pi, "
               << format_number(iv.upper / std::numbers::pi) << "pi]\n";
        }
    }
    os << "DMBR " << format_number(doc.metrics.dmbr) << " %, PDSL " << format_number(doc.metrics.pdsl)
       << " dB, NAG " << format_number(doc.metrics.nag) << " dB\n";
    return os.str();
}

std::vector<VerifyCheck> metric_check(const DesignDocument& doc) {
    AnalysisOptions analysis;
    analysis.grid_points = doc.grid_points;
    analysis.norm = doc.prsl_norm;
    const MetricsReport fresh =
        analyze(to_design(doc), generate_golay_pair(doc.n), doc.null_spec, analysis);
    double worst = 0.0;
    bool shape_ok = fresh.rsba.size() == doc.metrics.rsba.size();
    if (shape_ok) {
        for (std::size_t i = 0; i < fresh.rsba.size(); ++i) {
            shape_ok = shape_ok && fresh.rsba[i].empty == doc.metrics.rsba[i].empty;
            worst = std::max({worst, std::abs(fresh.rsba[i].lower - doc.metrics.rsba[i].lower),
                              std::abs(fresh.rsba[i].upper - doc.metrics.rsba[i].upper)});
        }
    }
    worst = std::max({worst, std::abs(fresh.dmbr - doc.metrics.dmbr), std::abs(fresh.pdsl - doc.metrics.pdsl),
                      std::abs(fresh.nag - doc.metrics.nag)});
    const bool ok = shape_ok && worst <= 1e-9;
    return {{"embedded-metrics", ok, "max deviation " + format_number(worst)}};
}

}  // namespace

double parse_angle(std::string_view text) {
    if (ends_with(text, "pi")) {
        const auto head = text.substr(0, text.size() - 2);
        const double factor = head.empty() ? 1.0 : parse_number(head, "angle");
        return factor * std::numbers::pi;
    }
    if (ends_with(text, "rad")) return parse_number(text.substr(0, text.size() - 3), "angle");
    throw ValidationError("angle '" + std::string(text) + "' needs a unit: e.g. 0.8pi or 2.5rad");
}

DopplerNull parse_null(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw ValidationError("null '" + std::string(text) + "' must look like <angle>:<order>, e.g. 0.8pi:4");
    }
    DopplerNull null;
    null.theta = parse_angle(text.substr(0, colon));
    const auto order_text = text.substr(colon + 1);
    const auto [ptr, ec] = std::from_chars(order_text.data(), order_text.data() + order_text.size(), null.order);
    if (ec != std::errc() || ptr != order_text.data() + order_text.size() || null.order < 1) {
        throw ValidationError("null order in '" + std::string(text) + "' must be a positive integer");
    }
    return null;
}

DesignDocument run_design(const DesignRequest& request, SdpSolution* sdp) {
    if (!is_power_of_two(request.n)) {
        throw ValidationError("Golay length n must be a power of two, got " + std::to_string(request.n));
    }
    DesignResult design;
    switch (request.method) {
        case Method::nm_drcw:
            design = design_nm_drcw(request.m, request.spec, window_template(request.window, request.m),
                                    request.options, sdp);
            break;
        case Method::ptm: design = design_ptm(request.m); break;
        case Method::bd: design = design_bd(request.m); break;
        case Method::uniform: design = design_uniform(request.m); break;
    }
    if (request.method != Method::nm_drcw) {
        design.provenance.seed = request.options.seed;
        design.provenance.window = WindowKind::rectangular;
    }
    const MetricsReport metrics =
        analyze(design, generate_golay_pair(request.n), design.provenance.null_spec, request.analysis);
    return make_document(design, request.n, request.analysis, metrics);
}

std::uint64_t table_cell_seed(std::uint64_t seed, WindowKind window, int k0) {
    const auto key = (static_cast<std::uint64_t>(window) << 32) | static_cast<std::uint32_t>(k0);
    return derive_seed(seed, key);
}

std::vector<TableRow> build_table(const TableConfig& config) {
    if (config.k0s.empty()) throw ValidationError("table needs at least one k0 value");
    if (config.windows.empty()) throw ValidationError("table needs at least one window");
    for (int k0 : config.k0s) validate(NullSpec{k0, {}}, config.m);

    std::vector<TableRow> rows;
    for (WindowKind window : config.windows) {
        for (int k0 : config.k0s) {
            DesignRequest request;
            request.method = Method::nm_drcw;
            request.m = config.m;
            request.n = config.n;
            request.spec = NullSpec{k0, {}};
            request.window = window;
            request.options = config.options;
            request.options.seed = table_cell_seed(config.seed, window, k0);
            request.analysis = config.analysis;
            rows.push_back({window, k0, run_design(request)});
        }
    }
    return rows;
}

std::string format_table(const std::vector<TableRow>& rows, std::string_view format) {
    std::ostringstream os;
    auto half_width_pi = [](const DesignDocument& doc) {
        return doc.metrics.rsba.empty() ? 0.0 : doc.metrics.rsba.front().half_width() / std::numbers::pi;
    };
    if (format == "csv") {
        os << "window,k0,rsba_halfwidth_pi,dmbr_percent,pdsl_db,nag_db\n";
        for (const auto& row : rows) {
            const auto& mt = row.document.metrics;
            os << to_string(row.window) << ',' << row.k0 << ',' << format_number(half_width_pi(row.document)) << ','
               << format_number(mt.dmbr) << ',' << format_number(mt.pdsl) << ',' << format_number(mt.nag) << "\n";
        }
    } else if (format == "md") {
        os << "| window | K0 | RSBA | DMBR | PDSL | NAG |\n|---|---|---|---|---|---|\n";
        os << std::fixed;
        for (const auto& row : rows) {
            const auto& mt = row.document.metrics;
            os << "| " << to_string(row.window) << " | " << row.k0 << " | [0, " << std::setprecision(3)
               << half_width_pi(row.document) << "pi] | " << std::setprecision(1) << mt.dmbr << "% | "
               << mt.pdsl << " dB | " << std::setprecision(2) << mt.nag << " dB |\n";
        }
    } else if (format == "json") {
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (const auto& row : rows) {
            const auto& mt = row.document.metrics;
            j.push_back({{"window", std::string(to_string(row.window))},
                         {"k0", row.k0},
                         {"seed", row.document.seed},
                         {"rsba_halfwidth_pi", half_width_pi(row.document)},
                         {"dmbr_percent", mt.dmbr},
                         {"pdsl_db", mt.pdsl},
                         {"nag_db", mt.nag}});
        }
        os << j.dump(2) << "\n";
    } else {
        throw ValidationError("unknown table format '" + std::string(format) + "'");
    }
    return os.str();
}

std::vector<VerifyCheck> verify_golay(std::size_t n) {
    const ComplementarityReport report = verify_complementary(generate_golay_pair(n));
    return {{"golay-complementarity", report.complementary,
             "N = " + std::to_string(n) + ", max violation " + std::to_string(report.max_violation) +
                 " at lag " + std::to_string(report.worst_lag)}};
}

NullSpec guaranteed_nulls(const DesignDocument& doc) {
    switch (doc.method) {
        case Method::nm_drcw: return doc.null_spec;
        case Method::bd: return NullSpec{static_cast<int>(doc.m) - 1, {}};
        case Method::ptm: return NullSpec{std::countr_zero(doc.m), {}};
        case Method::uniform: return NullSpec{};
    }
    return {};
}

std::vector<VerifyCheck> verify_document(const DesignDocument& doc) {
    std::vector<VerifyCheck> checks = verify_golay(doc.n);
    const DesignResult design = to_design(doc);

    const NullOrderReport nulls = check_null_order(design.y, guaranteed_nulls(doc), doc.factor);
    checks.push_back({"null-order", nulls.ok,
                      "worst moment " + format_number(nulls.worst_moment) + ", remainder " +
                          format_number(nulls.remainder_max) + " (limit " + format_number(nulls.remainder_limit) +
                          ")" + (nulls.detail.empty() ? "" : "; " + nulls.detail)});

    double energy = 0.0;
    for (double v : design.y) energy += v * v;
    const double md = static_cast<double>(doc.m);
    checks.push_back({"energy", std::abs(energy - md) <= 1e-8 * md,
                      "|y|^2 = " + format_number(energy) + ", M = " + std::to_string(doc.m)});

    const auto metrics = metric_check(doc);
    checks.insert(checks.end(), metrics.begin(), metrics.end());
    return checks;
}

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Doppler-resilient complementary waveform design and analysis", "drcw"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    std::size_t grid = 8192;
    std::size_t trials = 1000;
    double tol = 1e-6;
    std::string out_path;
    std::string format = "csv";
    bool legacy = false;
    std::string prsl_norm = "global";

    auto add_globals = [&](CLI::App* sub) {
        sub->add_option("--seed", seed, "master random seed");
        sub->add_option("--grid", grid, "Doppler grid points")->check(CLI::Range(std::size_t{4}, std::size_t{1} << 22));
        sub->add_option("--trials", trials, "randomized rounding trials")->check(CLI::PositiveNumber);
        sub->add_option("--tol", tol, "SDP relative tolerance");
        sub->add_option("-o,--out", out_path, "output path");
        sub->add_option("--format", format, "csv|md|json")->check(CLI::IsMember({"csv", "md", "json"}));
        sub->add_flag("--legacy-eq11", legacy, "use (1 - z cos(theta) + z^2) quadratic null factors");
        sub->add_option("--prsl-norm", prsl_norm, "global|per-doppler")
            ->check(CLI::IsMember({"global", "per-doppler"}));
    };

    // design
    auto* design_cmd = app.add_subcommand("design", "design a pulse train and write a JSON document");
    std::string method_name;
    std::size_t m = 0;
    std::size_t n = 64;
    int k0 = 0;
    std::vector<std::string> null_args;
    std::string window_name = "hamming";
    double mu = 1e8;
    int max_iter = 5000;
    std::string sdp_trace;
    design_cmd->add_option("method", method_name, "nm|ptm|bd|uniform")->required();
    design_cmd->add_option("--m", m, "pulse count")->required();
    design_cmd->add_option("--n", n, "Golay sequence length");
    design_cmd->add_option("--k0", k0, "null order at zero Doppler");
    design_cmd->add_option("--null", null_args, "extra null <angle>:<order>, e.g. 0.8pi:4");
    design_cmd->add_option("--window", window_name, "rectangular|hamming|hanning|blackman");
    design_cmd->add_option("--mu", mu, "rank-one shortcut ratio");
    design_cmd->add_option("--max-iter", max_iter, "SDP iteration budget");
    design_cmd->add_option("--sdp-trace", sdp_trace, "write SDP iteration trace CSV");
    add_globals(design_cmd);

    // analyze
    auto* analyze_cmd = app.add_subcommand("analyze", "export CAF, PRSL and Doppler profile CSVs");
    std::string doc_path;
    std::string out_dir = ".";
    std::size_t caf_points = 512;
    bool svg = false;
    analyze_cmd->add_option("document", doc_path, "design document")->required();
    analyze_cmd->add_option("--out-dir", out_dir, "directory for CSV/SVG output");
    analyze_cmd->add_option("--caf-points", caf_points, "Doppler points in caf.csv")
        ->check(CLI::Range(std::size_t{4}, std::size_t{1} << 16));
    analyze_cmd->add_flag("--svg", svg, "also render SVG previews");
    add_globals(analyze_cmd);

    // table
    auto* table_cmd = app.add_subcommand("table", "metrics for a sweep of zero-Doppler null orders");
    std::vector<std::string> k0_list;
    std::vector<std::string> windows_list{"hamming", "rectangular"};
    std::size_t table_m = 50;
    std::size_t table_n = 64;
    table_cmd->add_option("--k0", k0_list, "comma-separated null orders")->delimiter(',')->required();
    table_cmd->add_option("--windows", windows_list, "comma-separated windows")->delimiter(',');
    table_cmd->add_option("--m", table_m, "pulse count");
    table_cmd->add_option("--n", table_n, "Golay sequence length");
    add_globals(table_cmd);

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "check complementarity, null order, energy and metrics");
    std::size_t golay_n = 0;
    std::string verify_doc;
    verify_cmd->add_option("--golay", golay_n, "check a generated Golay pair of this length");
    verify_cmd->add_option("document", verify_doc, "design document to check");
    add_globals(verify_cmd);

    std::vector<const char*> argv;
    argv.push_back("drcw");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    AnalysisOptions analysis;
    analysis.grid_points = grid;

    try {
        analysis.norm = parse_prsl_norm(prsl_norm);
        DesignOptions options;
        options.trials = trials;
        options.seed = seed;
        options.sdp.tol = tol;
        options.factor = legacy ? QuadraticFactor::legacy : QuadraticFactor::corrected;

        if (design_cmd->parsed()) {
            DesignRequest request;
            request.method = parse_method(method_name);
            request.m = m;
            request.n = n;
            request.spec.k0 = k0;
            for (const auto& text : null_args) request.spec.nulls.push_back(parse_null(text));
            request.window = parse_window_kind(window_name);
            options.mu = mu;
            options.sdp.max_iter = max_iter;
            request.options = options;
            request.analysis = analysis;
            if (request.method == Method::nm_drcw) validate(request.spec, m);

            SdpSolution sdp;
            const DesignDocument doc = run_design(request, &sdp);
            if (!sdp_trace.empty()) {
                std::ostringstream csv;
                csv << "iteration,primal,dual,gap,step_primal,step_dual\n";
                for (const auto& it : sdp.trace) {
                    csv << it.iteration << ',' << format_number(it.primal) << ',' << format_number(it.dual) << ','
                        << format_number(it.gap) << ',' << format_number(it.step_primal) << ','
                        << format_number(it.step_dual) << "\n";
                }
                write_text(sdp_trace, csv.str());
            }
            if (out_path.empty()) {
                out << serialize(doc);
            } else {
                save_document(doc, out_path);
                out << summary(doc) << "wrote " << out_path << "\n";
            }
            return kExitOk;
        }

        if (analyze_cmd->parsed()) {
            const DesignDocument doc = load_document(doc_path);
            if (analyze_cmd->count("--grid") == 0) analysis.grid_points = doc.grid_points;
            if (analyze_cmd->count("--prsl-norm") == 0) analysis.norm = doc.prsl_norm;
            const DesignResult design = to_design(doc);
            const GolayPair pair = generate_golay_pair(doc.n);
            const DopplerGrid dgrid = DopplerGrid::uniform(analysis.grid_points);

            const std::filesystem::path dir(out_dir);
            std::filesystem::create_directories(dir);
            const auto prsl = prsl_curve(composite_ambiguity(design, pair, dgrid), analysis.norm);
            const auto g_db = relative_db(magnitudes(doppler_factor(design, dgrid)));
            const CafGrid caf = composite_ambiguity(design, pair, DopplerGrid::uniform(caf_points));

            std::ostringstream prsl_csv, doppler_csv, caf_csv;
            write_curve_csv(prsl_csv, "prsl_db", dgrid, prsl);
            write_curve_csv(doppler_csv, "g_db", dgrid, g_db);
            write_caf_csv(caf_csv, caf);
            write_text(dir / "prsl.csv", prsl_csv.str());
            write_text(dir / "doppler.csv", doppler_csv.str());
            write_text(dir / "caf.csv", caf_csv.str());
            if (svg) {
                write_text(dir / "prsl.svg", svg_line_plot("PRSL vs Doppler shift", "dB", dgrid.points, prsl, -120.0));
                write_text(dir / "doppler.svg",
                           svg_line_plot("Doppler profile at zero lag", "dB", dgrid.points, g_db, -80.0));
                write_text(dir / "caf.svg", svg_heatmap("Composite ambiguity function", caf, -80.0));
            }
            out << "wrote prsl.csv, doppler.csv, caf.csv to " << dir.string() << "\n";
            return kExitOk;
        }

        if (table_cmd->parsed()) {
            TableConfig config;
            for (const auto& text : k0_list) {
                if (text.empty()) continue;
                int value = 0;
                const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
                if (ec != std::errc() || ptr != text.data() + text.size()) {
                    throw ValidationError("k0 '" + text + "' is not an integer");
                }
                config.k0s.push_back(value);
            }
            config.windows.clear();
            for (const auto& name : windows_list) config.windows.push_back(parse_window_kind(name));
            config.m = table_m;
            config.n = table_n;
            config.seed = seed;
            config.options = options;
            config.analysis = analysis;
            const std::string text = format_table(build_table(config), format);
            if (out_path.empty()) {
                out << text;
            } else {
                write_text(out_path, text);
                out << "wrote " << out_path << "\n";
            }
            return kExitOk;
        }

        if (verify_cmd->parsed()) {
            if ((golay_n == 0) == verify_doc.empty()) {
                err << "error: verify takes either --golay <n> or a document path\n";
                return kExitUsage;
            }
            const auto checks = verify_doc.empty() ? verify_golay(golay_n) : verify_document(load_document(verify_doc));
            bool all = true;
            for (const auto& c : checks) {
                out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
                all = all && c.passed;
            }
            if (!all) {
                for (const auto& c : checks)
                    if (!c.passed) err << "verification failed: " << c.name << "\n";
                return kExitVerifyFailed;
            }
            return kExitOk;
        }
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SolverError& e) {
        err << "solver failure: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace drcw
