#pragma once

// Batch experiments behind the CLI: the invariant verification suite,
// refinement studies, and single-shot observable evaluations. Reports are
// self-contained JSON records; a fixed seed determines every random input.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ymhelix/observables.hpp"

namespace ymhelix {

struct ExperimentConfig {
    std::string mesh = "box2";
    int resolution = 4;
    std::uint64_t seed = 7;
    double tol_scale = 1.0;   // multiplies every bound (>1 loosens)
    std::string out_path;     // empty: stdout only
    int threads = 1;
};

struct CheckRecord {
    std::string name;
    double value = 0.0;   // measured quantity (residual, error, ...)
    double bound = 0.0;   // pass iff value <= bound (or == for integers)
    bool pass = false;
};

struct VerifyReport {
    ExperimentConfig config;
    std::vector<CheckRecord> checks;
    bool all_pass = true;
    double seconds = 0.0;
};

// Random linearized solution: solve from seeded random Dirichlet data.
Cochain random_solution(const YmOps& ops, std::mt19937_64& rng);
// Random interior gauge function.
Cochain random_interior_gauge(const SimplicialComplex& cx, std::mt19937_64& rng);

// Nested family of pairwise-homologous cuts differing only in interior
// cells (so the discrete conservation law applies exactly).
std::vector<std::shared_ptr<Hypersurface>> homologous_cut_family(const Mesh& mesh);

// Full invariant suite on one mesh.
VerifyReport run_verify(const ExperimentConfig& config);

// Run verify over the standard mesh list (the CLI `verify` without --mesh).
std::vector<VerifyReport> run_verify_standard(const ExperimentConfig& base);

struct StudyRow {
    int resolution = 0;
    double h = 0.0;
    std::vector<double> errors;
};

struct StudyReport {
    std::string name;
    std::vector<std::string> columns;
    std::vector<StudyRow> rows;
    std::vector<double> fitted_orders;  // per column, log-log slope
};

// Refinement studies: "helicity" (closed 3-torus cup product vs the analytic
// value), "current" (coordinate vs pairing form of the helicity current),
// "conservation" (cut-independence residual).
StudyReport run_study(const std::string& kind, const std::vector<int>& resolutions,
                      const ExperimentConfig& config);

void write_verify_json(const VerifyReport& report, const std::string& path);
void write_verify_json(const std::vector<VerifyReport>& reports,
                       const std::string& path);
void write_study_csv(const StudyReport& report, const std::string& path);
void write_study_json(const StudyReport& report, const std::string& path);

}  // namespace ymhelix
