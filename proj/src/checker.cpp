#include "dsc/checker.hpp"

#include <cmath>
#include <sstream>

namespace dsc {

namespace {

struct PointClusters {
    VecD values;            // per-cluster mean at this point
    std::vector<int> mult;
    std::vector<int> start;  // first sorted-eigenvalue index per cluster
    double within_spread = 0.0;
    SymEigen eig;
};

PointClusters cluster_point(const MatD& mat, double threshold) {
    const int m = mat.r;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < i; ++j)
            require(std::abs(mat(i, j) - mat(j, i)) <= 1e-8,
                    "eigen_structure: field is not symmetric");
    PointClusters pc;
    pc.eig = sym_eigen(mat);
    double scale = 1.0;
    for (double v : pc.eig.values) scale = std::max(scale, std::abs(v));
    const double gap = threshold * scale;
    int start = 0;
    for (int i = 1; i <= m; ++i) {
        if (i == m || pc.eig.values[i - 1] - pc.eig.values[i] > gap) {
            double mean = 0.0;
            for (int k = start; k < i; ++k) mean += pc.eig.values[k];
            mean /= (i - start);
            pc.values.push_back(mean);
            pc.mult.push_back(i - start);
            pc.start.push_back(start);
            pc.within_spread =
                std::max(pc.within_spread, pc.eig.values[start] - pc.eig.values[i - 1]);
            start = i;
        }
    }
    return pc;
}

}  // namespace

EigenStructure eigen_structure(const std::vector<MatD>& field, double threshold) {
    require(!field.empty(), "eigen_structure: empty field");
    EigenStructure out;
    std::vector<PointClusters> pcs;
    pcs.reserve(field.size());
    for (const auto& mat : field) pcs.push_back(cluster_point(mat, threshold));
    out.t = static_cast<int>(pcs[0].values.size());
    out.mult = pcs[0].mult;
    for (const auto& pc : pcs) {
        if (static_cast<int>(pc.values.size()) != out.t || pc.mult != out.mult)
            fail("non-constant multiplicity: eigenvalue cluster pattern changes across the grid");
        out.constancy_dev = std::max(out.constancy_dev, pc.within_spread);
    }
    out.values.assign(out.t, 0.0);
    for (int c = 0; c < out.t; ++c) {
        double lo = 1e300, hi = -1e300, mean = 0.0;
        for (const auto& pc : pcs) {
            mean += pc.values[c];
            for (int k = pc.start[c]; k < pc.start[c] + pc.mult[c]; ++k) {
                lo = std::min(lo, pc.eig.values[k]);
                hi = std::max(hi, pc.eig.values[k]);
            }
        }
        out.values[c] = mean / pcs.size();
        out.cluster_spread = std::max(out.cluster_spread, hi - lo);
    }
    return out;
}

double simultaneous_diag_check(const std::vector<MatD>& D_field, const std::vector<MatD>& B_field,
                               double threshold) {
    require(D_field.size() == B_field.size(), "simultaneous_diag_check: field size mismatch");
    double worst = 0.0;
    for (std::size_t f = 0; f < D_field.size(); ++f) {
        PointClusters pc = cluster_point(D_field[f], threshold);
        const int m = D_field[f].r;
        const int t = static_cast<int>(pc.values.size());
        if (t <= 1) continue;
        // B in D's eigenframe
        MatD bd(m, m, 0.0);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                double s = 0.0;
                for (int a = 0; a < m; ++a)
                    for (int b = 0; b < m; ++b)
                        s += pc.eig.vectors(a, i) * B_field[f](a, b) * pc.eig.vectors(b, j);
                bd(i, j) = s;
            }
        for (int c1 = 0; c1 < t; ++c1)
            for (int c2 = 0; c2 < t; ++c2) {
                if (c1 == c2) continue;
                for (int i = pc.start[c1]; i < pc.start[c1] + pc.mult[c1]; ++i)
                    for (int j = pc.start[c2]; j < pc.start[c2] + pc.mult[c2]; ++j)
                        worst = std::max(worst, std::abs(bd(i, j)));
            }
    }
    return worst;
}

DichotomyReport dichotomy_check(const EigenStructure& D_structure,
                                const std::vector<MatD>& D_field,
                                const std::vector<MatD>& B_field, double lambda,
                                double threshold) {
    DichotomyReport rep;
    if (D_structure.t != 2) {
        rep.skip_reason = "dichotomy applies only to t = 2 (t = " +
                          std::to_string(D_structure.t) + ")";
        return rep;
    }
    rep.applicable = true;
    rep.sum_residual = std::abs(D_structure.values[0] + D_structure.values[1] + lambda * lambda);

    // per-block B eigenvalues, worst deviation from -lambda per block
    VecD block_dev(2, 0.0);
    for (std::size_t f = 0; f < D_field.size(); ++f) {
        PointClusters pc = cluster_point(D_field[f], threshold);
        if (pc.values.size() != 2) continue;
        const int m = D_field[f].r;
        MatD bd(m, m, 0.0);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                double s = 0.0;
                for (int a = 0; a < m; ++a)
                    for (int b = 0; b < m; ++b)
                        s += pc.eig.vectors(a, i) * B_field[f](a, b) * pc.eig.vectors(b, j);
                bd(i, j) = s;
            }
        for (int c = 0; c < 2; ++c) {
            MatD blk(pc.mult[c], pc.mult[c], 0.0);
            for (int i = 0; i < pc.mult[c]; ++i)
                for (int j = 0; j < pc.mult[c]; ++j) blk(i, j) = bd(pc.start[c] + i, pc.start[c] + j);
            SymEigen be = sym_eigen(blk);
            for (double b : be.values) block_dev[c] = std::max(block_dev[c], std::abs(b + lambda));
        }
    }
    if (block_dev[0] <= block_dev[1]) {
        rep.lambda_block = 0;
        rep.block_residual = block_dev[0];
        rep.d_inner = D_structure.values[1];
    } else {
        rep.lambda_block = 1;
        rep.block_residual = block_dev[1];
        rep.d_inner = D_structure.values[0];
    }
    return rep;
}

ClassificationVerdict classify(const ClassificationInputs& in) {
    ClassificationVerdict v;
    v.phi_zero = in.phi_max <= in.tol_phi;
    v.B_parallel = in.grad_B <= in.tol_parallel;
    v.D_parallel = in.grad_D <= in.tol_parallel;
    v.t = in.D_structure.t;
    v.simultaneous_diagonalization_ok = in.simdiag_residual <= in.tol_value;
    v.dichotomy_ok = in.dichotomy.applicable && in.dichotomy.sum_residual <= in.tol_value &&
                     in.dichotomy.block_residual <= in.tol_value;

    std::ostringstream det;
    if (!v.D_parallel) {
        det << "para-Blaschke tensor not parallel: |grad D| = " << in.grad_D;
        v.branch = "inconsistent";
        v.detail = det.str();
        return v;
    }
    if (!v.phi_zero) {
        det << "parallel D^lambda forces a vanishing conformal form, but phi_max = " << in.phi_max;
        v.branch = "inconsistent";
        v.detail = det.str();
        return v;
    }
    if (!v.simultaneous_diagonalization_ok) {
        det << "B does not block-diagonalize in the D eigenframe: residual = " << in.simdiag_residual;
        v.branch = "inconsistent";
        v.detail = det.str();
        return v;
    }
    // Collect every branch the data is consistent with; the buckets overlap
    // on degenerate instances (a product-inner example hypersurface also has
    // parallel B), so branch consistency means membership in this set.
    if (v.B_parallel) {
        const int tb = in.B_structure.t;
        if (tb == 3) {
            v.branches.push_back("item7-wp");
            det << "parallel B with 3 distinct conformal principal curvatures; ";
        } else if (tb == 2) {
            if (in.route == "direct") v.branches.push_back("item4");
            else if (in.route == "sigma0") v.branches.push_back("item5");
            else if (in.route == "sigma-1") v.branches.push_back("item6");
            else v.branches.push_back("parallel-B-product");
            det << "parallel B with 2 distinct conformal principal curvatures (route " << in.route
                << "); ";
        } else {
            det << "parallel B with t_B = " << tb
                << " matches no catalog branch (tr B = 0, |B|^2 = (m-1)/m forbid t_B = 1); ";
        }
    }
    if (v.t == 2 && v.dichotomy_ok) {
        const double disc = 2.0 * in.dichotomy.d_inner + in.lambda * in.lambda;
        if (disc > in.tol_value) {
            v.branches.push_back("example3.2");
            det << "t = 2 with d1+d2 = -lambda^2 and 2d + lambda^2 = " << disc << " > 0; ";
        } else if (disc < -in.tol_value) {
            v.branches.push_back("example3.3");
            det << "t = 2 with d1+d2 = -lambda^2 and 2d + lambda^2 = " << disc << " < 0; ";
        } else {
            det << "2d + lambda^2 = 0 would contradict d1 != d2; ";
        }
    }
    if (v.t == 1) {
        v.branches.push_back("item1-3-cmc-csc");
        det << "D^lambda proportional to the metric: constant mean and scalar curvature branch; ";
    }

    if (v.branches.empty()) {
        v.branch = "inconsistent";
        if (v.t == 2)
            det << "t = 2 without the d1+d2 = -lambda^2 / B = -lambda structure (residuals "
                << in.dichotomy.sum_residual << ", " << in.dichotomy.block_residual << ")";
        else if (v.t >= 3)
            det << "t = " << v.t << " >= 3 forces a parallel conformal second fundamental form";
        v.detail = det.str();
        return v;
    }
    v.branch = v.branches.front();
    v.detail = det.str();
    return v;
}

}  // namespace dsc
