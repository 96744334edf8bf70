/** \file caseio.hpp
 * \brief Case-file parsing and run/benchmark orchestration with CSV artifacts.
 *
 * Case files are plain `key = value` text; `#` starts a comment. Exactly one
 * cloud source must be given, either
 *   cloud = generate naca0012:160:120:20   (code : n_wall : n_radial : radius)
 * or
 *   cloud = file path/to/cloud.txt
 * Remaining keys: variant (explicit|anandh|anandh_ad|manish|manish_ad), mach,
 * aoa, cfl, iterations, inner_iterations, convergence_decades, bc_mode
 * (physical|freestream), cfl_ramp_iters, cfl_start, out.
 */
#ifndef KINFREE_CASEIO_HPP
#define KINFREE_CASEIO_HPP

#include <optional>
#include <string>
#include <vector>

#include "kinfree/driver.hpp"

namespace kinfree {

/// Exit codes of the CLI: 0 success, 2 divergence, 3 configuration error.
enum ExitCode { kExitOk = 0, kExitDiverged = 2, kExitConfig = 3 };

class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CloudSource {
    std::string generate;  ///< "naca0012:NW:NR:RF" when generating
    std::string file;      ///< path when loading

    PointCloud make() const;
};

struct CaseFile {
    CloudSource cloud;
    SolverConfig solver;
    std::string out_dir = "out";
};

CaseFile parse_case_file(const std::string& path);

/// Applies a `key = value` pair; throws config_error for unknown keys or bad
/// values (shared by the case parser and CLI overrides).
void apply_case_key(CaseFile& c, const std::string& key, const std::string& value);

/// Validates cross-field invariants (exactly one cloud source, ...).
void validate_case(const CaseFile& c);

SolverVariant parse_variant(const std::string& name);

struct RdpReport {
    std::string variant;
    int points = 0;
    int iterations = 0;
    double total_seconds = 0.0;
    double rdp = 0.0;  ///< total_seconds / (iterations * points)
    EvalSnapshot counters;
};

struct RunArtifacts {
    RunHistory history;
    RdpReport rdp;
    std::string directory;
};

/// Runs one case and writes residual_history.csv, surface_cp.csv,
/// color_report.csv, rdp_report.csv and manifest.txt into the output
/// directory. Returns the artifacts; the CLI maps divergence to exit code 2.
RunArtifacts run_case(const CaseFile& c);

struct BenchResult {
    std::vector<RdpReport> reports;  ///< one per variant, same order as input
    bool counter_ratio_ok = true;    ///< incremental sweeps = 2x exact sweeps
};

/// Runs every variant on the identical cloud and configuration (convergence
/// stop disabled, iterations clamped to >= 100 for timing stability), writes
/// per-variant run directories plus a combined rdp_report.csv, and checks the
/// sweep counter relation between the incremental and exact variants.
BenchResult benchmark(const CaseFile& c, const std::vector<SolverVariant>& variants);

}  // namespace kinfree

#endif
