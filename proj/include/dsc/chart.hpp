#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dsc/jet.hpp"
#include "dsc/signature.hpp"

namespace dsc {

enum class AmbientKind { DeSitter, AntiDeSitter, Minkowski, LightCone };

/// Ambient quadric (or flat Minkowski space) an immersion maps into.
struct Ambient {
    AmbientKind kind = AmbientKind::DeSitter;
    double radius = 1.0;
    SignatureMetric metric;
    bool has_quadric = true;
    double quadric_constant = 1.0;  // <x,x> target

    static Ambient de_sitter(int m, double a = 1.0) {
        return {AmbientKind::DeSitter, a, SignatureMetric(m + 2, 1), true, a * a};
    }
    static Ambient anti_de_sitter(int m, double a = 1.0) {
        return {AmbientKind::AntiDeSitter, a, SignatureMetric(m + 2, 2), true, -a * a};
    }
    static Ambient minkowski(int m) {
        return {AmbientKind::Minkowski, 0.0, SignatureMetric(m + 1, 1), false, 0.0};
    }
    static Ambient light_cone(int m) {
        return {AmbientKind::LightCone, 0.0, SignatureMetric(m + 3, 2), true, 0.0};
    }
};

/// Box domain with a relative interior margin used when laying out grids.
struct Domain {
    VecD lo, hi;
    double margin = 0.1;

    int dim() const { return static_cast<int>(lo.size()); }
    bool contains(const VecD& p) const {
        if (p.size() != lo.size()) return false;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p[i] < lo[i] - 1e-12 || p[i] > hi[i] + 1e-12) return false;
        return true;
    }
    VecD center() const {
        VecD c(lo.size());
        for (std::size_t i = 0; i < lo.size(); ++i) c[i] = 0.5 * (lo[i] + hi[i]);
        return c;
    }
    Domain shrunk(double factor) const {
        Domain d = *this;
        const VecD c = center();
        for (std::size_t i = 0; i < lo.size(); ++i) {
            d.lo[i] = c[i] + (lo[i] - c[i]) * factor;
            d.hi[i] = c[i] + (hi[i] - c[i]) * factor;
        }
        return d;
    }
};

/// Chart of an m-dimensional immersion into an ambient quadric, evaluable in
/// jet arithmetic. `map` receives m coordinate jets and returns the ambient
/// components.
struct ImmersionChart {
    int m = 0;
    Ambient ambient;
    Domain domain;
    std::function<std::vector<Jet>(const std::vector<Jet>&)> map;
    std::string label;
    std::optional<VecD> normal_anchor;  // ambient direction fixing the normal sign

    VecD basepoint() const { return domain.center(); }
};

/// Uniform grid over the margin-shrunk domain box.
struct Grid {
    std::vector<VecD> axes;

    int dim() const { return static_cast<int>(axes.size()); }
    std::size_t size() const {
        std::size_t n = 1;
        for (const auto& a : axes) n *= a.size();
        return n;
    }
    std::vector<int> shape() const {
        std::vector<int> s;
        for (const auto& a : axes) s.push_back(static_cast<int>(a.size()));
        return s;
    }
    double spacing(int axis) const {
        return axes[axis].size() > 1 ? axes[axis][1] - axes[axis][0] : 0.0;
    }
    std::vector<int> unflatten(std::size_t flat) const {
        std::vector<int> idx(dim());
        for (int k = dim() - 1; k >= 0; --k) {
            const std::size_t n = axes[k].size();
            idx[k] = static_cast<int>(flat % n);
            flat /= n;
        }
        return idx;
    }
    std::size_t flatten(const std::vector<int>& idx) const {
        std::size_t f = 0;
        for (int k = 0; k < dim(); ++k) f = f * axes[k].size() + idx[k];
        return f;
    }
    VecD point(std::size_t flat) const {
        const auto idx = unflatten(flat);
        VecD p(dim());
        for (int k = 0; k < dim(); ++k) p[k] = axes[k][idx[k]];
        return p;
    }
};

Grid make_grid(const Domain& d, int points_per_axis);

/// Evaluate the chart map in jets of the given order; checks the domain and
/// the ambient quadric constraint (|<x,x> - c| <= 1e-10).
std::vector<Jet> evaluate_immersion(const ImmersionChart& chart, const VecD& p, int order);

/// Fill the normal-sign anchor if missing: the basepoint normal whose
/// largest-magnitude component is positive.
void prepare_chart(ImmersionChart& chart);

}  // namespace dsc
