#pragma once

// Command-line front end. `run_cli` is the whole program; tools/drcw_main.cpp only
// forwards argv. Exit codes: 0 ok, 1 verification failure, 2 usage/validation
// error, 3 solver failure.

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "drcw/analysis.hpp"
#include "drcw/design.hpp"
#include "drcw/document.hpp"

namespace drcw {

enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitUsage = 2, kExitSolver = 3 };

/// "0.8pi" -> 0.8 pi, "pi" -> pi, "0.3rad" -> 0.3.
double parse_angle(std::string_view text);

/// "<angle>:<order>", e.g. "0.8pi:4".
DopplerNull parse_null(std::string_view text);

struct DesignRequest {
    Method method = Method::nm_drcw;
    std::size_t m = 0;
    std::size_t n = 64;
    NullSpec spec;
    WindowKind window = WindowKind::hamming;
    DesignOptions options;
    AnalysisOptions analysis;
};

/// Build the design and attach metrics.
DesignDocument run_design(const DesignRequest& request, SdpSolution* sdp = nullptr);

struct TableConfig {
    std::vector<int> k0s;
    std::vector<WindowKind> windows{WindowKind::hamming, WindowKind::rectangular};
    std::size_t m = 50;
    std::size_t n = 64;
    std::uint64_t seed = 0;
    DesignOptions options;  // seed field ignored; each cell derives its own
    AnalysisOptions analysis;
};

struct TableRow {
    WindowKind window;
    int k0;
    DesignDocument document;
};

std::uint64_t table_cell_seed(std::uint64_t seed, WindowKind window, int k0);

/// One nm-drcw design per (window, k0), no off-zero nulls; rows ordered window-major.
std::vector<TableRow> build_table(const TableConfig& config);

/// format: "csv", "md" or "json".
std::string format_table(const std::vector<TableRow>& rows, std::string_view format);

struct VerifyCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

std::vector<VerifyCheck> verify_golay(std::size_t n);
std::vector<VerifyCheck> verify_document(const DesignDocument& doc);

/// The null spec a document's method guarantees (nm: requested; bd: M-1; ptm: log2 M).
NullSpec guaranteed_nulls(const DesignDocument& doc);

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace drcw
