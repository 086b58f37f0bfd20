#pragma once

#include "dsc/catalog.hpp"
#include "dsc/checker.hpp"
#include "dsc/report.hpp"

namespace dsc {

struct RunConfig {
    std::vector<std::string> entries;  // family ids, or "labeled-set"
    std::map<std::string, double> params;
    std::vector<double> lambdas;       // merged with the entry defaults
    int grid_override = 0;             // 0 = per-entry default
    int jet_order = 4;
    double fd_step = 1e-3;             // moving-frame local FD step
    std::map<std::string, double> tol_overrides;
    uint64_t seed = 7;
    int equivalence_n = -1;            // -1 = skip the equivalence suite
    std::string report_format = "json";
    std::string out_path;
    int mf_sample_points = 5;          // moving-frame sample points per entry
};

struct EquivalenceResult {
    int n = 0;
    int skipped_maps = 0;
    double max_deviation = 0.0;
    double tol = 1e-6;
    bool vacuous = false;
    bool pass = false;
    std::vector<std::string> notes;
};

struct EntryRunResult {
    CatalogEntry entry;
    ResidualReport residuals;
    EigenStructure B_structure;
    std::vector<std::pair<double, EigenStructure>> D_structures;
    double phi_max_value = 0.0;
    double rho_min = 0.0, rho_max = 0.0;
    DichotomyReport dichotomy;
    ClassificationVerdict verdict;
    bool branch_consistent = false;
    EquivalenceResult equivalence;  // n = 0 unless requested
};

/// Full pipeline for one entry: grid sweep, identity and integrability
/// residuals, parallelism norms, moving-frame samples, eigenstructure,
/// expected-value comparisons and the classification verdict.
EntryRunResult run_entry(const CatalogEntry& entry, const RunConfig& cfg);

/// N seeded O(m+3,2) maps through act_and_reproject; reports the worst
/// eigenvalue-field deviation of B, A and D^0 against the untransformed
/// pipeline.
EquivalenceResult run_equivalence_suite(const CatalogEntry& entry, int n, uint64_t seed,
                                        int grid_points = 5, double tol = 1e-6);

struct RunOutput {
    std::vector<EntryRunResult> entries;
    bool all_pass = false;
    int exit_code = 2;
    std::string report_text;
};

/// Batch driver: resolves entries, runs them, renders the report. Exit code
/// 0 iff every residual passes, 1 when any fails, 2 on configuration errors
/// (signalled by throwing dsc::Error before any entry runs).
RunOutput run(const RunConfig& cfg);

std::string render_json(const RunConfig& cfg, const std::vector<EntryRunResult>& entries,
                        bool all_pass);

}  // namespace dsc
