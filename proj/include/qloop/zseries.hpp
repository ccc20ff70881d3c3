// Truncated power series in Z with exact rational coefficients.
//
// This is the independent expansion oracle for RationalFunction: once every
// symbol in the exponents is bound to a rational, each factor (1 − q^e·Z)
// has an exact rational coefficient q^e provided q itself is pinned to an
// exact rational power scale. Because bound exponents may be non-integral
// (halves, thirds), the binding fixes a base g = q^{1/K} with K a common
// denominator of all exponents in play, so q^e = g^{K·e} stays rational.
#pragma once

#include "qloop/lweight.hpp"

#include <vector>

namespace qloop {

/// Power series Σ_{k=0..order} c[k]·Z^k, exact through Z^order.
struct ZSeries {
    int order = 0;
    std::vector<Rational> c;  // size order+1

    static ZSeries one(int order) {
        ZSeries s;
        s.order = order;
        s.c.assign(static_cast<size_t>(order) + 1, Rational(0));
        s.c[0] = 1;
        return s;
    }

    ZSeries& scale(const Rational& k) {
        for (auto& x : c) x *= k;
        return *this;
    }

    /// Multiply by (1 − r·Z).
    ZSeries& mul_linear(const Rational& r) {
        for (int k = order; k >= 1; --k) c[static_cast<size_t>(k)] -= r * c[static_cast<size_t>(k) - 1];
        return *this;
    }

    /// Multiply by 1/(1 − r·Z) = Σ r^k Z^k.
    ZSeries& div_linear(const Rational& r) {
        for (int k = 1; k <= order; ++k) c[static_cast<size_t>(k)] += r * c[static_cast<size_t>(k) - 1];
        return *this;
    }

    friend ZSeries operator*(const ZSeries& a, const ZSeries& b) {
        if (a.order != b.order) throw std::invalid_argument("ZSeries: order mismatch");
        ZSeries s;
        s.order = a.order;
        s.c.assign(static_cast<size_t>(a.order) + 1, Rational(0));
        for (int i = 0; i <= a.order; ++i)
            for (int j = 0; i + j <= a.order; ++j)
                s.c[static_cast<size_t>(i + j)] += a.c[static_cast<size_t>(i)] * b.c[static_cast<size_t>(j)];
        return s;
    }

    friend bool operator==(const ZSeries& a, const ZSeries& b) {
        return a.order == b.order && a.c == b.c;
    }
};

/// Binds all symbols to rationals and q to an exact rational power scale:
/// q^{1/K} = g, so q^e = g^{K·e} for every exponent e whose bound value has
/// denominator dividing K.
struct QBinding {
    std::map<Symbol, Rational> bindings;
    Rational g = Rational(3, 2);  // value of q^{1/K}
    long K = 1;

    /// Exact value of q^{e} under this binding.
    Rational qpow(const AffineExponent& e) const {
        Rational v = e.evaluate(bindings) * K;
        return rational_pow(g, to_long_exact(v));
    }
};

/// Least common multiple of the denominators of every bound exponent in the
/// given rational function — a valid K for a QBinding.
long exponent_denominator_lcm(const RationalFunction& rf,
                              const std::map<Symbol, Rational>& bindings);

/// Expand a raw (uncancelled) factor list q^{pref}·Π num / Π den. This is the
/// oracle path: it never canonicalizes, so comparing it against the expansion
/// of the canonical form validates cancellation.
ZSeries expand_raw(const AffineExponent& prefactor, const std::vector<LinearFactor>& num,
                   const std::vector<LinearFactor>& den, const QBinding& qb, int order);

/// Expand a canonical RationalFunction.
ZSeries expand(const RationalFunction& rf, const QBinding& qb, int order);

}  // namespace qloop
