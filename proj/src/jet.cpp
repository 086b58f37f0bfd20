#include "dsc/jet.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace dsc {

namespace {

void gen_indices(int nvars, int order, std::vector<std::array<uint8_t, kMaxJetVars>>& out) {
    // graded lexicographic: all |alpha| = d blocks for d = 0..order, lex within
    std::array<uint8_t, kMaxJetVars> e{};
    for (int d = 0; d <= order; ++d) {
        // enumerate compositions of d into nvars parts, lexicographic descending on first var
        std::vector<int> idx(nvars, 0);
        // recursive enumeration via explicit stack
        std::function<void(int, int)> rec = [&](int var, int rem) {
            if (var == nvars - 1) {
                idx[var] = rem;
                e.fill(0);
                for (int k = 0; k < nvars; ++k) e[k] = static_cast<uint8_t>(idx[k]);
                out.push_back(e);
                return;
            }
            for (int v = rem; v >= 0; --v) {
                idx[var] = v;
                rec(var + 1, rem - v);
            }
        };
        rec(0, d);
    }
}

uint32_t pack(const std::array<uint8_t, kMaxJetVars>& e) {
    uint32_t v = 0;
    for (int k = 0; k < kMaxJetVars; ++k) v = (v << 4) | e[k];
    return v;
}

struct TableKey {
    int nvars, order;
    bool operator<(const TableKey& o) const {
        return nvars != o.nvars ? nvars < o.nvars : order < o.order;
    }
};

std::map<TableKey, JetTable> g_tables;
std::mutex g_table_mutex;

std::map<TableKey, std::map<uint32_t, int>> g_lookups;

}  // namespace

int JetTable::index_of(const std::array<uint8_t, kMaxJetVars>& e) const {
    std::lock_guard<std::mutex> lock(g_table_mutex);
    auto& lut = g_lookups[TableKey{nvars, order}];
    auto it = lut.find(pack(e));
    require(it != lut.end(), "jet table: multi-index out of range");
    return it->second;
}

const JetTable* JetTable::get(int nvars, int order) {
    require(nvars >= 1 && nvars <= kMaxJetVars, "jet table: unsupported variable count");
    require(order >= 0 && order <= kMaxJetOrder, "jet table: order must be in [0,4]");
    std::lock_guard<std::mutex> lock(g_table_mutex);
    TableKey key{nvars, order};
    auto it = g_tables.find(key);
    if (it != g_tables.end()) return &it->second;

    JetTable t;
    t.nvars = nvars;
    t.order = order;
    gen_indices(nvars, order, t.exponents);
    auto& lut = g_lookups[key];
    for (int i = 0; i < static_cast<int>(t.exponents.size()); ++i) {
        lut[pack(t.exponents[i])] = i;
        int d = 0;
        for (int k = 0; k < nvars; ++k) d += t.exponents[i][k];
        t.degree.push_back(d);
    }
    const int n = t.size();
    for (int ia = 0; ia < n; ++ia) {
        for (int ib = 0; ib < n; ++ib) {
            if (t.degree[ia] + t.degree[ib] > order) continue;
            std::array<uint8_t, kMaxJetVars> sum{};
            for (int k = 0; k < nvars; ++k)
                sum[k] = static_cast<uint8_t>(t.exponents[ia][k] + t.exponents[ib][k]);
            t.product.push_back({static_cast<uint16_t>(ia), static_cast<uint16_t>(ib),
                                 static_cast<uint16_t>(lut[pack(sum)])});
        }
    }
    t.deriv.resize(nvars);
    for (int k = 0; k < nvars; ++k) {
        for (int id = 0; id < n; ++id) {
            if (t.exponents[id][k] == 0) continue;
            auto dst = t.exponents[id];
            dst[k] -= 1;
            t.deriv[k].push_back({static_cast<uint16_t>(id), static_cast<uint16_t>(lut[pack(dst)])});
        }
    }
    auto [pos, ok] = g_tables.emplace(key, std::move(t));
    return &pos->second;
}

Jet Jet::variable(const JetTable* tab, int var, double base) {
    require(var >= 0 && var < tab->nvars, "jet variable index out of range");
    if (tab->order == 0) return Jet(tab, base);  // plain evaluation mode
    Jet j(tab, base);
    std::array<uint8_t, kMaxJetVars> e{};
    e[var] = 1;
    j.c_[tab->index_of(e)] = 1.0;
    return j;
}

double Jet::coeff_at(const std::vector<int>& alpha) const {
    require(static_cast<int>(alpha.size()) == tab_->nvars, "coeff_at: wrong multi-index length");
    std::array<uint8_t, kMaxJetVars> e{};
    for (int k = 0; k < tab_->nvars; ++k) e[k] = static_cast<uint8_t>(alpha[k]);
    return c_[tab_->index_of(e)];
}

Jet Jet::truncated(int new_order) const {
    require(new_order <= tab_->order, "truncated: cannot raise order");
    const JetTable* nt = JetTable::get(tab_->nvars, new_order);
    Jet out(nt, 0.0);
    for (int i = 0; i < nt->size(); ++i) out.c_[i] = c_[i];  // graded prefix property
    return out;
}

Jet Jet::derivative(int var) const {
    require(tab_->order >= 1, "derivative: order 0 jet");
    const JetTable* nt = JetTable::get(tab_->nvars, tab_->order - 1);
    Jet out(nt, 0.0);
    for (const auto& [src, dst] : tab_->deriv[var]) {
        if (dst < static_cast<uint16_t>(nt->size()))
            out.c_[dst] = c_[src] * (tab_->exponents[dst][var] + 1.0);
    }
    return out;
}

namespace {
const JetTable* common_table(const Jet& a, const Jet& b) {
    require(a.table()->nvars == b.table()->nvars, "jet arithmetic: variable count mismatch");
    return a.table()->order <= b.table()->order ? a.table() : b.table();
}
}  // namespace

Jet operator+(const Jet& a, const Jet& b) {
    const JetTable* t = common_table(a, b);
    Jet out(t, 0.0);
    for (int i = 0; i < t->size(); ++i) out.c_[i] = a.c_[i] + b.c_[i];
    return out;
}

Jet operator-(const Jet& a, const Jet& b) {
    const JetTable* t = common_table(a, b);
    Jet out(t, 0.0);
    for (int i = 0; i < t->size(); ++i) out.c_[i] = a.c_[i] - b.c_[i];
    return out;
}

Jet operator*(const Jet& a, const Jet& b) {
    const JetTable* t = common_table(a, b);
    Jet out(t, 0.0);
    if (a.table() == b.table()) {
        for (const auto& tr : t->product) out.c_[tr.c] += a.c_[tr.a] * b.c_[tr.b];
        return out;
    }
    // mixed orders: the lower-order table indexes a graded prefix of both
    for (const auto& tr : t->product) out.c_[tr.c] += a.c_[tr.a] * b.c_[tr.b];
    return out;
}

Jet operator-(const Jet& a) { return a * -1.0; }

Jet operator+(const Jet& a, double s) { Jet out = a; out.c_[0] += s; return out; }
Jet operator+(double s, const Jet& a) { return a + s; }
Jet operator-(const Jet& a, double s) { Jet out = a; out.c_[0] -= s; return out; }
Jet operator-(double s, const Jet& a) { return (a * -1.0) + s; }
Jet operator*(const Jet& a, double s) {
    Jet out = a;
    for (auto& v : out.c_) v *= s;
    return out;
}
Jet operator*(double s, const Jet& a) { return a * s; }
Jet operator/(const Jet& a, double s) { return a * (1.0 / s); }
Jet operator/(double s, const Jet& a) { return jet_inv(a) * s; }
Jet operator/(const Jet& a, const Jet& b) { return a * jet_inv(b); }

Jet compose_univariate(const Jet& u, const std::vector<double>& outer) {
    const JetTable* t = u.table();
    Jet v = u;
    v.c_[0] = 0.0;  // perturbation part
    const int N = t->order;
    Jet r(t, outer[N]);
    for (int k = N - 1; k >= 0; --k) r = r * v + outer[k];
    return r;
}

Jet jet_inv(const Jet& u) {
    const double c0 = u.value();
    require(std::abs(c0) > 1e-300, "jet singularity: division by jet with zero constant term");
    std::vector<double> g(u.order() + 1);
    double p = 1.0 / c0;
    for (int k = 0; k <= u.order(); ++k) {
        g[k] = (k % 2 == 0 ? p : -p);
        p /= c0;
    }
    return compose_univariate(u, g);
}

Jet jet_sqrt(const Jet& u) {
    const double c0 = u.value();
    require(c0 > 0.0, "jet singularity: sqrt of non-positive jet");
    std::vector<double> g(u.order() + 1);
    g[0] = std::sqrt(c0);
    double binom = 0.5;  // running binomial coefficient C(1/2, k)
    double pw = g[0] / c0;
    for (int k = 1; k <= u.order(); ++k) {
        g[k] = binom * pw;
        binom *= (0.5 - k) / (k + 1.0);
        pw /= c0;
    }
    return compose_univariate(u, g);
}

Jet jet_log(const Jet& u) {
    const double c0 = u.value();
    require(c0 > 0.0, "jet singularity: log of non-positive jet");
    std::vector<double> g(u.order() + 1);
    g[0] = std::log(c0);
    double p = 1.0 / c0;
    for (int k = 1; k <= u.order(); ++k) {
        g[k] = (k % 2 == 1 ? p : -p) / k;
        p /= c0;
    }
    return compose_univariate(u, g);
}

Jet jet_exp(const Jet& u) {
    std::vector<double> g(u.order() + 1);
    double f = std::exp(u.value());
    double fact = 1.0;
    for (int k = 0; k <= u.order(); ++k) {
        g[k] = f / fact;
        fact *= (k + 1.0);
    }
    return compose_univariate(u, g);
}

namespace {
Jet trig_like(const Jet& u, double even0, double odd0, bool alternating) {
    // derivatives cycle with period 4 for sin/cos (alternating) or 2 for sinh/cosh
    std::vector<double> g(u.order() + 1);
    double fact = 1.0;
    double d0 = even0, d1 = odd0;
    for (int k = 0; k <= u.order(); ++k) {
        g[k] = (k % 2 == 0 ? d0 : d1) / fact;
        if (k % 2 == 1) {
            if (alternating) { d0 = -d0; d1 = -d1; }
        }
        fact *= (k + 1.0);
    }
    return compose_univariate(u, g);
}
}  // namespace

Jet jet_sin(const Jet& u) { return trig_like(u, std::sin(u.value()), std::cos(u.value()), true); }
Jet jet_cos(const Jet& u) { return trig_like(u, std::cos(u.value()), -std::sin(u.value()), true); }
Jet jet_sinh(const Jet& u) { return trig_like(u, std::sinh(u.value()), std::cosh(u.value()), false); }
Jet jet_cosh(const Jet& u) { return trig_like(u, std::cosh(u.value()), std::sinh(u.value()), false); }

Jet jet_pow(const Jet& u, double p) {
    const double c0 = u.value();
    require(c0 > 0.0, "jet singularity: pow of non-positive jet base");
    std::vector<double> g(u.order() + 1);
    double coef = 1.0;
    for (int k = 0; k <= u.order(); ++k) {
        g[k] = coef * std::pow(c0, p - k);
        coef *= (p - k) / (k + 1.0);
    }
    return compose_univariate(u, g);
}

Jet jet_pow(const Jet& u, int p) {
    if (p < 0) return jet_inv(jet_pow(u, -p));
    Jet r = one_like(u);
    Jet base = u;
    int e = p;
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

std::vector<Jet> seed_point(const JetTable* tab, const std::vector<double>& p) {
    require(static_cast<int>(p.size()) == tab->nvars, "seed_point: dimension mismatch");
    std::vector<Jet> out;
    out.reserve(p.size());
    for (int i = 0; i < tab->nvars; ++i) out.push_back(Jet::variable(tab, i, p[i]));
    return out;
}

}  // namespace dsc
