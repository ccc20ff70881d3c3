#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qloop/zseries.hpp"

#include <random>
#include <vector>

using namespace qloop;

namespace {

const std::vector<Symbol> kSymbols = {"mu1", "mu2", "n1"};

AffineExponent random_exponent(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-3, 3);
    std::uniform_int_distribution<int> den(1, 2);
    std::uniform_int_distribution<int> pick(0, 2);
    AffineExponent e(Rational(num(rng), den(rng)));
    for (const Symbol& s : kSymbols)
        if (pick(rng) == 0) e += Rational(num(rng)) * AffineExponent::sym(s);
    return e;
}

std::vector<LinearFactor> random_factors(std::mt19937& rng, int max_count) {
    std::uniform_int_distribution<int> count(0, max_count);
    std::vector<LinearFactor> fs;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) fs.push_back({random_exponent(rng)});
    return fs;
}

RationalFunction random_rf(std::mt19937& rng) {
    return RationalFunction(random_exponent(rng), random_factors(rng, 4),
                            random_factors(rng, 4));
}

std::map<Symbol, Rational> random_binding(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-4, 4);
    std::map<Symbol, Rational> b;
    for (const Symbol& s : kSymbols) b[s] = Rational(num(rng), 2);
    return b;
}

QBinding make_qbinding(std::map<Symbol, Rational> bindings) {
    QBinding qb;
    qb.bindings = std::move(bindings);
    qb.K = 4;  // covers denominators 1, 2, 4 in bound exponents
    qb.g = Rational(5, 4);
    return qb;
}

LWeight random_lweight(std::mt19937& rng, int l) {
    Weight w(l);
    for (auto& c : w.omega) c = random_exponent(rng);
    std::vector<RationalFunction> plus;
    for (int i = 0; i < l; ++i) plus.push_back(random_rf(rng));
    return LWeight(std::move(w), std::move(plus));
}

}  // namespace

TEST_CASE("canonical cancellation removes shared factors") {
    const AffineExponent e1 = AffineExponent::sym("mu1");
    const AffineExponent e2 = AffineExponent::sym("mu2") + 1;
    RationalFunction rf(0, {{e1}, {e2}, {e1}}, {{e1}, {AffineExponent(3)}});
    // One copy of (1 - q^{mu1} Z) cancels; one remains upstairs.
    CHECK(rf.num().size() == 2);
    CHECK(rf.den().size() == 1);
    CHECK(rf.den()[0].exponent == AffineExponent(3));

    RationalFunction unit(0, {{e1}}, {{e1}});
    CHECK(unit.is_one());
}

TEST_CASE("inverse swaps numerator and denominator") {
    std::mt19937 rng(11);
    const RationalFunction rf = random_rf(rng);
    const RationalFunction inv = rf.inverse();
    CHECK(rf_mul(rf, inv).is_one());
}

TEST_CASE("expansion against the raw oracle: 1000 randomized cases") {
    std::mt19937 rng(20240818);
    const int order = 6;
    for (int i = 0; i < 1000; ++i) {
        const AffineExponent pref = random_exponent(rng);
        const std::vector<LinearFactor> num = random_factors(rng, 3);
        const std::vector<LinearFactor> den = random_factors(rng, 3);
        const QBinding qb = make_qbinding(random_binding(rng));

        // The canonical form cancels factors; the oracle never does.
        const RationalFunction rf(pref, num, den);
        CHECK(expand(rf, qb, order) == expand_raw(pref, num, den, qb, order));
    }
}

TEST_CASE("product expansion is the series product") {
    std::mt19937 rng(5);
    const int order = 5;
    for (int i = 0; i < 200; ++i) {
        const RationalFunction a = random_rf(rng), b = random_rf(rng);
        const QBinding qb = make_qbinding(random_binding(rng));
        CHECK(expand(rf_mul(a, b), qb, order) ==
              expand(a, qb, order) * expand(b, qb, order));
    }
}

TEST_CASE("weights form an abelian group") {
    std::mt19937 rng(13);
    for (int i = 0; i < 100; ++i) {
        Weight a(2), b(2);
        for (auto& c : a.omega) c = random_exponent(rng);
        for (auto& c : b.omega) c = random_exponent(rng);
        CHECK(a + b == b + a);
        CHECK(a + (-a) == Weight(2));
        CHECK((a + b) - b == a);
    }
}

TEST_CASE("lweight group laws and specialization homomorphism: 1000 cases") {
    std::mt19937 rng(20240819);
    for (int i = 0; i < 1000; ++i) {
        const int l = 1 + (i % 2);
        const LWeight a = random_lweight(rng, l);
        const LWeight b = random_lweight(rng, l);
        const LWeight c = random_lweight(rng, l);

        CHECK(lw_mul(a, b) == lw_mul(b, a));
        CHECK(lw_mul(lw_mul(a, b), c) == lw_mul(a, lw_mul(b, c)));
        CHECK(lw_mul(a, LWeight::identity(l)) == a);
        CHECK(lw_mul(a, a.inverse()) == LWeight::identity(l));

        // Binding symbols commutes with the product (new cancellations may
        // appear on both sides; canonical forms must still agree).
        const auto bind = random_binding(rng);
        CHECK(lw_specialize(lw_mul(a, b), bind) ==
              lw_mul(lw_specialize(a, bind), lw_specialize(b, bind)));
    }
}

TEST_CASE("shift moves the weight and keeps the series") {
    std::mt19937 rng(17);
    const LWeight a = random_lweight(rng, 2);
    Weight xi(2);
    xi.omega[0] = 3;
    xi.omega[1] = AffineExponent::sym("mu1");
    const LWeight shifted = lw_shift(a, xi);
    CHECK(shifted.weight == a.weight + xi);
    CHECK(shifted.plus == a.plus);
}
