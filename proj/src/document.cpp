#include "drcw/document.hpp"

#include <fstream>
#include <sstream>

#include "drcw/error.hpp"

namespace drcw {

namespace {

using ojson = nlohmann::ordered_json;

ojson interval_json(const DopplerInterval& iv) {
    return ojson{{"center", iv.center}, {"lower", iv.lower}, {"upper", iv.upper}, {"empty", iv.empty}};
}

}  // namespace

std::string_view to_string(PrslNorm norm) {
    return norm == PrslNorm::global ? "global" : "per-doppler";
}

PrslNorm parse_prsl_norm(std::string_view name) {
    if (name == "global") return PrslNorm::global;
    if (name == "per-doppler" || name == "per_doppler") return PrslNorm::per_doppler;
    throw ValidationError("unknown PRSL normalization '" + std::string(name) + "'");
}

DesignDocument make_document(const DesignResult& design, std::size_t n, const AnalysisOptions& analysis,
                             const MetricsReport& metrics) {
    DesignDocument doc;
    doc.method = design.method;
    doc.m = design.size();
    doc.n = n;
    doc.null_spec = design.provenance.null_spec;
    doc.factor = design.provenance.factor;
    doc.window = design.provenance.window;
    doc.seed = design.provenance.seed;
    doc.trials = design.provenance.trials;
    doc.s = design.transmit_order;
    doc.w = design.weights;
    doc.objective = design.provenance.rounded_objective;
    doc.sdp_bound = design.provenance.sdp_bound;
    doc.sdp_dual_bound = design.provenance.sdp_dual_bound;
    doc.grid_points = analysis.grid_points;
    doc.prsl_norm = analysis.norm;
    doc.metrics = metrics;
    doc.metrics.prsl_curve.clear();
    return doc;
}

DesignResult to_design(const DesignDocument& doc) {
    DesignResult d;
    d.method = doc.method;
    d.transmit_order = doc.s;
    d.weights = doc.w;
    d.y.resize(doc.w.size());
    for (std::size_t i = 0; i < doc.w.size(); ++i) d.y[i] = doc.s[i] * doc.w[i];
    d.provenance.seed = doc.seed;
    d.provenance.trials = doc.trials;
    d.provenance.rounded_objective = doc.objective;
    d.provenance.sdp_bound = doc.sdp_bound;
    d.provenance.sdp_dual_bound = doc.sdp_dual_bound;
    d.provenance.null_spec = doc.null_spec;
    d.provenance.factor = doc.factor;
    d.provenance.window = doc.window;
    return d;
}

nlohmann::ordered_json to_json(const DesignDocument& doc) {
    ojson nulls = ojson::array();
    for (const auto& null : doc.null_spec.nulls) nulls.push_back({{"theta", null.theta}, {"order", null.order}});
    ojson rsba = ojson::array();
    for (const auto& iv : doc.metrics.rsba) rsba.push_back(interval_json(iv));

    ojson j;
    j["schema_version"] = doc.schema_version;
    j["method"] = std::string(to_string(doc.method));
    j["m"] = doc.m;
    j["n"] = doc.n;
    j["null_spec"] = {{"k0", doc.null_spec.k0},
                      {"nulls", nulls},
                      {"quadratic_factor", doc.factor == QuadraticFactor::corrected ? "corrected" : "legacy"}};
    j["window"] = std::string(to_string(doc.window));
    j["seed"] = doc.seed;
    j["trials"] = doc.trials;
    j["s"] = doc.s;
    j["w"] = doc.w;
    j["objective"] = doc.objective;
    j["sdp_bound"] = doc.sdp_bound;
    j["sdp_dual_bound"] = doc.sdp_dual_bound;
    j["analysis"] = {{"grid_points", doc.grid_points}, {"prsl_norm", std::string(to_string(doc.prsl_norm))}};
    j["metrics"] = {{"rsba", rsba},
                    {"dmbr_percent", doc.metrics.dmbr},
                    {"pdsl_db", doc.metrics.pdsl},
                    {"nag_db", doc.metrics.nag}};
    return j;
}

DesignDocument document_from_json(const nlohmann::json& j) {
    try {
        DesignDocument doc;
        doc.schema_version = j.at("schema_version").get<int>();
        if (doc.schema_version != kSchemaVersion) {
            throw ValidationError("unsupported schema_version " + std::to_string(doc.schema_version));
        }
        doc.method = parse_method(j.at("method").get<std::string>());
        doc.m = j.at("m").get<std::size_t>();
        doc.n = j.at("n").get<std::size_t>();
        const auto& ns = j.at("null_spec");
        doc.null_spec.k0 = ns.at("k0").get<int>();
        for (const auto& null : ns.at("nulls")) {
            doc.null_spec.nulls.push_back({null.at("theta").get<double>(), null.at("order").get<int>()});
        }
        const auto factor = ns.at("quadratic_factor").get<std::string>();
        if (factor != "corrected" && factor != "legacy") throw ValidationError("unknown quadratic_factor " + factor);
        doc.factor = factor == "legacy" ? QuadraticFactor::legacy : QuadraticFactor::corrected;
        doc.window = parse_window_kind(j.at("window").get<std::string>());
        doc.seed = j.at("seed").get<std::uint64_t>();
        doc.trials = j.at("trials").get<std::size_t>();
        doc.s = j.at("s").get<SignSequence>();
        doc.w = j.at("w").get<std::vector<double>>();
        doc.objective = j.at("objective").get<double>();
        doc.sdp_bound = j.at("sdp_bound").get<double>();
        doc.sdp_dual_bound = j.at("sdp_dual_bound").get<double>();
        const auto& an = j.at("analysis");
        doc.grid_points = an.at("grid_points").get<std::size_t>();
        doc.prsl_norm = parse_prsl_norm(an.at("prsl_norm").get<std::string>());
        const auto& mt = j.at("metrics");
        for (const auto& iv : mt.at("rsba")) {
            doc.metrics.rsba.push_back({iv.at("center").get<double>(), iv.at("lower").get<double>(),
                                        iv.at("upper").get<double>(), iv.at("empty").get<bool>()});
        }
        doc.metrics.dmbr = mt.at("dmbr_percent").get<double>();
        doc.metrics.pdsl = mt.at("pdsl_db").get<double>();
        doc.metrics.nag = mt.at("nag_db").get<double>();

        if (doc.s.size() != doc.m || doc.w.size() != doc.m) {
            throw ValidationError("document arrays s and w must both have length m");
        }
        for (int v : doc.s)
            if (v != 1 && v != -1) throw ValidationError("document transmit order must be +-1");
        for (double v : doc.w)
            if (v < 0.0) throw ValidationError("document weights must be nonnegative");
        return doc;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed design document: ") + e.what());
    }
}

std::string serialize(const DesignDocument& doc) { return to_json(doc).dump(2) + "\n"; }

DesignDocument parse_document(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("design document is not valid JSON: ") + e.what());
    }
    return document_from_json(j);
}

void save_document(const DesignDocument& doc, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path.string());
    out << serialize(doc);
}

DesignDocument load_document(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_document(buf.str());
}

}  // namespace drcw
