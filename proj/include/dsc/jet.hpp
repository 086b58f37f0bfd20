#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "dsc/common.hpp"
#include "dsc/linalg.hpp"

namespace dsc {

inline constexpr int kMaxJetVars = 6;
inline constexpr int kMaxJetOrder = 4;

/// Precomputed index structure for dense truncated Taylor arithmetic in
/// `nvars` variables at total order `order`. Multi-indices are stored in
/// graded lexicographic order, so the table for order N-1 is a prefix of the
/// table for order N.
struct JetTable {
    int nvars = 0;
    int order = 0;
    std::vector<std::array<uint8_t, kMaxJetVars>> exponents;  // per coefficient id
    std::vector<int> degree;                                  // |alpha| per id
    struct Triple { uint16_t a, b, c; };
    std::vector<Triple> product;                       // c[t.c] += a[t.a]*b[t.b]
    std::vector<std::vector<std::pair<uint16_t, uint16_t>>> deriv;  // per var: (src,dst), factor = exp[dst][k]+1
    int size() const { return static_cast<int>(exponents.size()); }
    int index_of(const std::array<uint8_t, kMaxJetVars>& e) const;

    static const JetTable* get(int nvars, int order);
};

/// Truncated multivariate Taylor expansion. Coefficient at multi-index alpha
/// is the Taylor coefficient d^alpha f / alpha! at the basepoint.
class Jet {
public:
    Jet() = default;
    Jet(const JetTable* tab, double constant) : tab_(tab), c_(tab->size(), 0.0) { c_[0] = constant; }

    static Jet constant(const JetTable* tab, double v) { return Jet(tab, v); }
    static Jet variable(const JetTable* tab, int var, double base);

    const JetTable* table() const { return tab_; }
    int nvars() const { return tab_->nvars; }
    int order() const { return tab_->order; }
    double value() const { return c_[0]; }
    double coeff(int id) const { return c_[id]; }
    double& coeff(int id) { return c_[id]; }
    const std::vector<double>& coeffs() const { return c_; }

    /// Coefficient addressed by exponent list (size nvars).
    double coeff_at(const std::vector<int>& alpha) const;

    Jet truncated(int new_order) const;
    Jet derivative(int var) const;  // order drops by one

    friend Jet operator+(const Jet& a, const Jet& b);
    friend Jet operator-(const Jet& a, const Jet& b);
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator/(const Jet& a, const Jet& b);
    friend Jet operator-(const Jet& a);
    friend Jet operator+(const Jet& a, double s);
    friend Jet operator+(double s, const Jet& a);
    friend Jet operator-(const Jet& a, double s);
    friend Jet operator-(double s, const Jet& a);
    friend Jet operator*(const Jet& a, double s);
    friend Jet operator*(double s, const Jet& a);
    friend Jet operator/(const Jet& a, double s);
    friend Jet operator/(double s, const Jet& a);

private:
    const JetTable* tab_ = nullptr;
    std::vector<double> c_;

    friend Jet compose_univariate(const Jet& u, const std::vector<double>& outer);
};

/// Compose with a univariate outer function given by its scaled derivatives
/// g^(k)(u0)/k!, k = 0..order, evaluated at u's constant term.
Jet compose_univariate(const Jet& u, const std::vector<double>& outer_scaled_derivs);

Jet jet_inv(const Jet& u);
Jet jet_sqrt(const Jet& u);
Jet jet_log(const Jet& u);
Jet jet_exp(const Jet& u);
Jet jet_sin(const Jet& u);
Jet jet_cos(const Jet& u);
Jet jet_sinh(const Jet& u);
Jet jet_cosh(const Jet& u);
Jet jet_pow(const Jet& u, double p);
Jet jet_pow(const Jet& u, int p);

/// Seed coordinate jets for a chart point.
std::vector<Jet> seed_point(const JetTable* tab, const std::vector<double>& p);

inline double mag_of(const Jet& j) { return std::abs(j.value()); }
inline Jet zero_like(const Jet& j) { return Jet(j.table(), 0.0); }
inline Jet one_like(const Jet& j) { return Jet(j.table(), 1.0); }

}  // namespace dsc
