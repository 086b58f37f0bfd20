#pragma once

#include "dsc/chart.hpp"
#include "dsc/invariants.hpp"

namespace dsc {

/// Null ray of R^{m+3}_2 with a canonical representative: the first
/// coordinate that is nonzero (in scan order) is made positive.
struct ProjectiveLightPoint {
    SignatureMetric metric;
    VecD rep;
};

ProjectiveLightPoint make_light_point(const SignatureMetric& g, VecD rep);

enum class SigmaKind { Sigma0, SigmaPlus, SigmaMinus };  // R^{m+1}_1, S^{m+1}_1, H^{m+1}_1
enum class PsiChannel { U1, U2, Auto };

/// Conformal embeddings of the three Lorentzian space forms into the
/// projectivized light cone. Coordinates are arranged so the two leading
/// slots of R^{m+3}_2 are time-like and the image is null; this realizes the
/// classical maps up to a fixed coordinate permutation (an ambient isometry
/// of the target, conformally irrelevant).
ProjectiveLightPoint embed_sigma(SigmaKind kind, const LorentzVector& u);

/// Non-homogeneous coordinates on the conformal space, modeled on S^{m+1}_1:
/// U1 divides by the first slot, U2 by the second. Psi2(T swap y) = Psi1(y).
LorentzVector project_psi(PsiChannel which, const ProjectiveLightPoint& P);

/// Jet-level versions used to compose charts.
std::vector<Jet> sigma_jets(SigmaKind kind, const std::vector<Jet>& u);
std::vector<Jet> psi_jets(PsiChannel which, const std::vector<Jet>& y);

/// Compose an inner chart (into R^{m+1}_1 or H^{m+1}_1) with a sigma route
/// and a Psi channel into the unit de Sitter space. Auto picks the channel
/// whose denominator is largest in magnitude over the default grid; a route
/// whose excluded set meets the domain reports the offending grid corner.
ImmersionChart lift_composed_chart(const ImmersionChart& inner, SigmaKind route,
                                   PsiChannel channel = PsiChannel::Auto);

/// Chart p -> Psi(T . (1, x(p))) for T in O(m+3,2); conformal equivalent to
/// the input. The normal anchor is transported through T so the conformal
/// second fundamental form is preserved with its sign.
ImmersionChart act_and_reproject(const PseudoOrthogonalMap& T, const ImmersionChart& chart,
                                 PsiChannel channel = PsiChannel::Auto);

/// Inverse of a composed sigma route; recovers the inner space-form point
/// from its image in S^{m+1}_1 (used by round-trip checks).
VecD invert_sigma_route(SigmaKind route, PsiChannel channel, const VecD& image);

}  // namespace dsc
