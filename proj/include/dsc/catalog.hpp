#pragma once

#include <map>
#include <optional>

#include "dsc/spaceforms.hpp"

namespace dsc {

/// Closed-form expectations attached to a catalog entry. Eigenvalue lists are
/// (value, multiplicity) in descending value order; `b_up_to_sign` marks
/// families whose conformal second fundamental form is pinned only up to the
/// normal orientation.
struct ExpectedInvariants {
    std::optional<std::vector<std::pair<double, int>>> B_eigs;
    bool b_up_to_sign = false;
    std::optional<std::vector<std::pair<double, int>>> D_eigs;  // at the structural lambda
    std::optional<double> rho_const;
    bool phi_zero = false;
    bool B_parallel = false;
    bool A_parallel = false;
    bool D_parallel_all_lambda = false;
    bool D_parallel_structural = false;
    int t = 0;    // distinct D^lambda eigenvalues (0 = unspecified)
    int t_B = 0;  // distinct B eigenvalues (0 = unspecified)
};

enum class Family { ProductDS, Item5, Item6, WP, Example32, Example33 };

struct CatalogEntry {
    std::string id;
    Family family = Family::ProductDS;
    std::string branch;  // expected classification branch label
    std::string route;   // "direct", "sigma0", "sigma-1", "lightcone"
    int m = 0;
    std::map<std::string, double> params;
    double lambda_structural = 0.0;
    std::vector<double> lambdas;  // lambdas exercised by default
    int default_grid = 9;
    ImmersionChart chart;
    ExpectedInvariants expected;

    /// For the Example 3.2/3.3 families: the light-cone coordinate y0(p),
    /// exposed so rho = |y0| can be checked directly.
    std::function<double(const VecD&)> y0_of;
};

/// S^{m-k}(a) x H^k(-1/(a^2-1)) in the unit de Sitter space (a > 1).
CatalogEntry make_product_in_desitter(int m, int k, double a);

enum class LiftedKind { Item5, Item6 };
/// Item 5: H^k(-1/a^2) x R^{m-k} in R^{m+1}_1 (a > 0), lifted via sigma0.
/// Item 6: H^k(-1/a^2) x H^{m-k}(-1/(1-a^2)) in H^{m+1}_1 (0 < a < 1),
/// lifted via sigma-1.
CatalogEntry make_lifted_product(LiftedKind kind, int m, int k, double a,
                                 PsiChannel channel = PsiChannel::Auto);

/// Warped-product hypersurface u = (t u', t u'', u''') in R^{m+1}_1 lifted
/// via sigma0; exactly three distinct constant conformal principal
/// curvatures.
CatalogEntry make_wp(int m, int p, int q, double a, PsiChannel channel = PsiChannel::Auto);

/// Inner-product splits for the Example 3.2/3.3 constructions.
struct InnerSpec {
    int p = 0, q = 0;  // 0,0 = default split (q = 1, p = K-1)
};

/// Example 3.2: an isoparametric product H^q x S^p inside S^{K+1}_1(r) glued
/// to H^{m-K}(-1/r^2) on the light cone; (b, lambda) are solved from the
/// constant-curvature constraints and validated by plug-back. Throws with the
/// constraint residuals when no admissible pair exists.
CatalogEntry make_example_32(int m, int K, double r, InnerSpec inner = {});

/// Example 3.3: an isoparametric product H^q x H^p inside H^{K+1}_1(-1/r^2)
/// glued to S^{m-K}(r); epsilon = -1 selects the reflected chart with
/// negative y0.
CatalogEntry make_example_33(int m, int K, double r, int epsilon = +1, InnerSpec inner = {});

/// The nine labeled entries used by the classifier gate.
std::vector<CatalogEntry> labeled_catalog();

/// CLI dispatcher: family id + key=value parameters.
CatalogEntry make_entry(const std::string& family_id, const std::map<std::string, double>& params);

std::vector<std::string> catalog_family_ids();

}  // namespace dsc
