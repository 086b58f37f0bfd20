#include "dsc/chart.hpp"

#include <cmath>

namespace dsc {

Grid make_grid(const Domain& d, int points_per_axis) {
    require(points_per_axis >= 1, "make_grid: need at least one point per axis");
    Grid g;
    g.axes.resize(d.dim());
    for (int k = 0; k < d.dim(); ++k) {
        const double span = d.hi[k] - d.lo[k];
        const double lo = d.lo[k] + d.margin * span;
        const double hi = d.hi[k] - d.margin * span;
        auto& ax = g.axes[k];
        ax.resize(points_per_axis);
        if (points_per_axis == 1) {
            ax[0] = 0.5 * (lo + hi);
        } else {
            const double h = (hi - lo) / (points_per_axis - 1);
            for (int i = 0; i < points_per_axis; ++i) ax[i] = lo + i * h;
        }
    }
    return g;
}

std::vector<Jet> evaluate_immersion(const ImmersionChart& chart, const VecD& p, int order) {
    require(chart.domain.contains(p), "chart evaluation: point outside domain");
    const JetTable* tab = JetTable::get(chart.m, order);
    std::vector<Jet> x = chart.map(seed_point(tab, p));
    require(static_cast<int>(x.size()) == chart.ambient.metric.dim,
            "chart map: wrong ambient dimension");
    if (chart.ambient.has_quadric) {
        const Jet q = inner_generic(chart.ambient.metric, x, x);
        require(std::abs(q.value() - chart.ambient.quadric_constant) <= 1e-10,
                "chart map: ambient quadric constraint violated at evaluated point");
    }
    return x;
}

}  // namespace dsc
