#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qloop/talgebra.hpp"

using namespace qloop;

namespace {
const AffineExponent mu1 = AffineExponent::sym("mu1");
const AffineExponent mu2 = AffineExponent::sym("mu2");
const AffineExponent mu3 = AffineExponent::sym("mu3");
}  // namespace

TEST_CASE("series arithmetic respects the truncation order") {
    TSeries s = TSeries::one(1, 4);
    s.add_term({5}, 1);  // beyond the order: dropped
    CHECK(s == TSeries::one(1, 4));

    s.add_term({2}, Rational(3, 2));
    s.add_term({2}, Rational(-3, 2));  // cancels back to zero: erased
    CHECK(s == TSeries::one(1, 4));

    const TSeries t = TSeries::monomial(1, 4, {1});
    const TSeries t2 = t * t;
    CHECK(t2 == TSeries::monomial(1, 4, {2}));
    CHECK(t * t2 * t2 == TSeries::zero(1, 4));  // t^5 truncates away

    const TSeries sum = TSeries::monomial(1, 4, {1}) + TSeries::monomial(1, 4, {1});
    CHECK(sum == TSeries::monomial(1, 4, {1}, 2));
}

TEST_CASE("geometric series") {
    const TSeries g = TSeries::geometric(1, 6, {2});
    TSeries expected = TSeries::one(1, 6);
    expected.add_term({2}, 1);
    expected.add_term({4}, 1);
    expected.add_term({6}, 1);
    CHECK(g == expected);

    CHECK_THROWS(TSeries::geometric(1, 6, {0}));  // needs positive degree

    // (1 - t^2)·geometric == 1.
    TSeries one_minus = TSeries::one(1, 6);
    one_minus.add_term({2}, -1);
    CHECK(one_minus * g == TSeries::one(1, 6));
}

TEST_CASE("rank-1 normalization series: odd powers with coefficient 1") {
    const TSeries c1 = normalized_c(1).expand(12);
    TSeries expected = TSeries::zero(1, 12);
    for (int k = 1; k <= 12; k += 2) expected.add_term({k}, 1);
    CHECK(c1 == expected);
}

TEST_CASE("rank-2 normalization series: min(a,b)+1 staircase") {
    const int order = 14;
    const TSeries c2 = normalized_c(2).expand(order);
    TSeries expected = TSeries::zero(2, order);
    for (int a = 0; 2 * a + 2 <= order; ++a)
        for (int b = 0; (2 * a + 2) + (2 * b + 2) <= order; ++b)
            expected.add_term({2 * a + 2, 2 * b + 2}, std::min(a, b) + 1);
    CHECK(c2 == expected);
}

TEST_CASE("monomials") {
    TMonomial m(2);
    m.exps[0] = 2;
    m.exps[1] = mu1;
    CHECK_FALSE(m.is_integer_monomial());

    TMonomial n(2);
    n.exps[0] = 1;
    n.exps[1] = -mu1 + 3;
    const TMonomial prod = m * n;
    CHECK(prod.exps[0] == AffineExponent(3));
    CHECK(prod.exps[1] == AffineExponent(3));
    CHECK(prod.is_integer_monomial());
    CHECK(prod.integer_exponents() == std::vector<int>{3, 3});

    CHECK((m / m).is_integer_monomial());
    CHECK((m * m.inverse()).integer_exponents() == std::vector<int>{0, 0});

    TMonomial frac(1);
    frac.exps[0] = Rational(1, 2);
    CHECK_FALSE(frac.is_integer_monomial());
    CHECK_THROWS(frac.integer_exponents());
}

TEST_CASE("shift monomial exponents via the inverse Cartan matrix") {
    // Rank 1: δ = 3ω₁ → exponent −2·3·(1/2) = −3.
    const TMonomial s1 = shift_monomial({AffineExponent(3)});
    CHECK(s1.exps[0] == AffineExponent(-3));

    // Rank 2: δ = (3, 0) → exponents (−4, −2).
    const TMonomial s2 = shift_monomial({AffineExponent(3), AffineExponent(0)});
    CHECK(s2.exps[0] == AffineExponent(-4));
    CHECK(s2.exps[1] == AffineExponent(-2));

    // Symbolic δ: linearity in the symbols.
    const TMonomial sym = shift_monomial({mu1, mu2});
    CHECK(sym.exps[0] == Rational(-4, 3) * mu1 - Rational(2, 3) * mu2);
    CHECK(sym.exps[1] == Rational(-2, 3) * mu1 - Rational(4, 3) * mu2);
}

TEST_CASE("rank-1 resummation: prefactor and even series") {
    const Resummation r = resummation_coefficient(1, 12);
    REQUIRE(r.prefactor.vars() == 1);
    CHECK(r.prefactor.exps[0] == mu1 - mu2);

    TSeries expected = TSeries::zero(1, 12);
    for (int k = 2; k <= 12; k += 2) expected.add_term({k}, 1);
    CHECK(r.series == expected);
}

TEST_CASE("rank-2 resummation: derived prefactor and staircase series") {
    const int order = 14;
    const Resummation r = resummation_coefficient(2, order);
    REQUIRE(r.prefactor.vars() == 2);
    // μ-part of the t-exponents: (2/3)(2μ₁−μ₂−μ₃) and (2/3)(μ₁+μ₂−2μ₃).
    CHECK(r.prefactor.exps[0] ==
          Rational(4, 3) * mu1 - Rational(2, 3) * mu2 - Rational(2, 3) * mu3);
    CHECK(r.prefactor.exps[1] ==
          Rational(2, 3) * mu1 + Rational(2, 3) * mu2 - Rational(4, 3) * mu3);

    TSeries expected = TSeries::zero(2, order);
    for (int a = 0; 2 * a + 4 <= order; ++a)
        for (int b = 0; (2 * a + 4) + (2 * b + 4) <= order; ++b)
            expected.add_term({2 * a + 4, 2 * b + 4}, std::min(a, b) + 1);
    CHECK(r.series == expected);
}
