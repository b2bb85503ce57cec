#pragma once

// Versioned JSON design document.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "drcw/analysis.hpp"
#include "drcw/design.hpp"

namespace drcw {

inline constexpr int kSchemaVersion = 1;

struct DesignDocument {
    int schema_version = kSchemaVersion;
    Method method = Method::uniform;
    std::size_t m = 0;
    std::size_t n = 0;
    NullSpec null_spec;
    QuadraticFactor factor = QuadraticFactor::corrected;
    WindowKind window = WindowKind::rectangular;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    SignSequence s;
    std::vector<double> w;
    double objective = 0.0;
    double sdp_bound = 0.0;
    double sdp_dual_bound = 0.0;
    std::size_t grid_points = 8192;
    PrslNorm prsl_norm = PrslNorm::global;
    MetricsReport metrics;  // prsl_curve is not serialized
};

DesignDocument make_document(const DesignResult& design, std::size_t n, const AnalysisOptions& analysis,
                             const MetricsReport& metrics);

/// (s, w) -> DesignResult with y = s .* w.
DesignResult to_design(const DesignDocument& doc);

nlohmann::ordered_json to_json(const DesignDocument& doc);
DesignDocument document_from_json(const nlohmann::json& j);

std::string serialize(const DesignDocument& doc);
DesignDocument parse_document(std::string_view text);

void save_document(const DesignDocument& doc, const std::filesystem::path& path);
DesignDocument load_document(const std::filesystem::path& path);

std::string_view to_string(PrslNorm norm);
PrslNorm parse_prsl_norm(std::string_view name);

}  // namespace drcw
