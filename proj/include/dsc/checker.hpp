#pragma once

#include "dsc/fields.hpp"

namespace dsc {

/// Eigenvalue clustering of a symmetric tensor field over a grid. Clusters
/// are formed per point by relative gaps and must have the same multiplicity
/// pattern everywhere; values are cluster means over the grid.
struct EigenStructure {
    int t = 0;
    VecD values;             // descending cluster values (grid means)
    std::vector<int> mult;
    double constancy_dev = 0.0;   // max within-cluster spread at any single point
    double cluster_spread = 0.0;  // max over clusters of the across-grid value range
};

EigenStructure eigen_structure(const std::vector<MatD>& field, double threshold = 1e-3);

/// Max over the grid of the off-diagonal-block norm of B in D's eigenframe
/// (blocks across distinct D clusters). Vacuously zero for t = 1.
double simultaneous_diag_check(const std::vector<MatD>& D_field, const std::vector<MatD>& B_field,
                               double threshold = 1e-3);

/// t = 2 dichotomy: d1 + d2 = -lambda^2 and B = -lambda on one D-block.
struct DichotomyReport {
    bool applicable = false;
    std::string skip_reason;
    double sum_residual = 0.0;    // |d1 + d2 + lambda^2|
    double block_residual = 0.0;  // min over blocks of max |b + lambda|
    int lambda_block = -1;        // cluster index whose B equals -lambda
    double d_inner = 0.0;         // D eigenvalue on the other block
};

DichotomyReport dichotomy_check(const EigenStructure& D_structure,
                                const std::vector<MatD>& D_field,
                                const std::vector<MatD>& B_field, double lambda,
                                double threshold = 1e-3);

struct ClassificationInputs {
    int m = 0;
    std::string route;  // "direct", "sigma0", "sigma-1", "lightcone", "unknown"
    double lambda = 0.0;
    double phi_max = 0.0;
    double grad_B = 0.0;
    double grad_D = 0.0;
    EigenStructure D_structure;
    EigenStructure B_structure;
    DichotomyReport dichotomy;
    double simdiag_residual = 0.0;
    double tol_phi = 1e-7;
    double tol_parallel = 1e-5;
    double tol_value = 1e-6;
};

/// Consistency verdict against the branches of the parallel para-Blaschke
/// classification; never claims more than branch consistency. The branches
/// overlap on degenerate instances (an isoparametric-product example is also
/// a parallel-B hypersurface), so the verdict carries the full set of
/// consistent branches; `branch` is the first one in bucket order, or
/// "inconsistent" when the set is empty or a structural gate fails.
struct ClassificationVerdict {
    bool phi_zero = false;
    bool B_parallel = false;
    bool D_parallel = false;
    int t = 0;
    bool simultaneous_diagonalization_ok = false;
    bool dichotomy_ok = false;
    std::string branch;
    std::vector<std::string> branches;
    std::string detail;

    bool consistent_with(const std::string& label) const {
        for (const auto& b : branches)
            if (b == label) return true;
        return false;
    }
};

ClassificationVerdict classify(const ClassificationInputs& in);

}  // namespace dsc
