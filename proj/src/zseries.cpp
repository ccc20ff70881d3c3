#include "qloop/zseries.hpp"

#include <numeric>

namespace qloop {

namespace {
long lcm_long(long a, long b) { return std::lcm(a, b); }

long denom_of(const AffineExponent& e, const std::map<Symbol, Rational>& bindings) {
    Rational v = e.evaluate(bindings);
    return static_cast<long>(denominator(v));
}
}  // namespace

long exponent_denominator_lcm(const RationalFunction& rf,
                              const std::map<Symbol, Rational>& bindings) {
    long K = denom_of(rf.prefactor(), bindings);
    for (const auto& f : rf.num()) K = lcm_long(K, denom_of(f.exponent, bindings));
    for (const auto& f : rf.den()) K = lcm_long(K, denom_of(f.exponent, bindings));
    return K;
}

ZSeries expand_raw(const AffineExponent& prefactor, const std::vector<LinearFactor>& num,
                   const std::vector<LinearFactor>& den, const QBinding& qb, int order) {
    ZSeries s = ZSeries::one(order);
    s.scale(qb.qpow(prefactor));
    for (const auto& f : num) s.mul_linear(qb.qpow(f.exponent));
    for (const auto& f : den) s.div_linear(qb.qpow(f.exponent));
    return s;
}

ZSeries expand(const RationalFunction& rf, const QBinding& qb, int order) {
    return expand_raw(rf.prefactor(), rf.num(), rf.den(), qb, order);
}

}  // namespace qloop
