#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qloop/qchar.hpp"

#include <random>

using namespace qloop;

namespace {

// Test-side reference product: plain double loop with the depth filter.
QCharacter convolve(const QCharacter& a, const QCharacter& b) {
    QCharacter out(a.l, std::min(a.cutoff, b.cutoff), a.highest + b.highest);
    for (const auto& [ta, ma] : a.terms)
        for (const auto& [tb, mb] : b.terms) {
            const LWeight lw = lw_mul(ta, tb);
            if (depth_of(out.highest, lw.weight) <= out.cutoff) out.terms[lw] += ma * mb;
        }
    return out;
}

long long eval_count(int l, int n) {
    long long c = 0;
    if (l == 1) return n + 1;
    for (int m12 = 0; m12 <= n; ++m12)
        for (int m13 = 0; 2 * m13 + m12 <= n; ++m13)
            for (int m23 = 0; m12 + 2 * m13 + m23 <= n; ++m23) ++c;
    return c;
}

long long osc_count(int l, int a, int n) {
    if (l == 1) return n + 1;
    long long c = 0;
    const int w1 = a == 3 ? 2 : 1;                  // depth = w1·n1 + w2·n2
    const int w2 = a == 1 ? 2 : 1;
    for (int n1 = 0; w1 * n1 <= n; ++n1)
        for (int n2 = 0; w1 * n1 + w2 * n2 <= n; ++n2) ++c;
    return c;
}

}  // namespace

TEST_CASE("depth in the root lattice") {
    // Rank 1: highest - w = 2m·ω₁ = m·α₁.
    const QCharacter ch = char_evaluation(1, 5);
    for (const auto& [lw, mult] : ch.terms) {
        CHECK(mult == 1);
        const auto d = root_coordinates(ch.highest, lw.weight);
        REQUIRE(d.size() == 1);
        CHECK(depth_of(ch.highest, lw.weight) == d[0]);
    }

    // Rank 2 evaluation depth has the closed form m12 + 2·m13 + m23.
    const ZetaPoint at;
    const Weight h2 = eval_lweight(EvalIndex(2, {0, 0, 0}), at).weight;
    for (int m12 = 0; m12 <= 2; ++m12)
        for (int m13 = 0; m13 <= 2; ++m13)
            for (int m23 = 0; m23 <= 2; ++m23) {
                const Weight w = eval_lweight(EvalIndex(2, {m12, m13, m23}), at).weight;
                CHECK(depth_of(h2, w) == m12 + 2 * m13 + m23);
            }

    // Oscillator depths: n1 (rank 1) and family-dependent weights (rank 2).
    const Weight o1 = osc_lweight(OscIndex(2, 1, {0, 0})).weight;
    CHECK(depth_of(o1, osc_lweight(OscIndex(2, 1, {2, 1})).weight) == 4);
    const Weight o2 = osc_lweight(OscIndex(2, 2, {0, 0})).weight;
    CHECK(depth_of(o2, osc_lweight(OscIndex(2, 2, {2, 1})).weight) == 3);
    const Weight o3 = osc_lweight(OscIndex(2, 3, {0, 0})).weight;
    CHECK(depth_of(o3, osc_lweight(OscIndex(2, 3, {2, 1})).weight) == 5);
}

TEST_CASE("weights outside the root cone are rejected") {
    const Weight h = eval_lweight(EvalIndex(1, {0, 0, 0})).weight;
    Weight above = h;
    above.omega[0] += 2;  // = h + α₁: negative coordinate
    CHECK_THROWS(depth_of(h, above));

    Weight half = h;
    half.omega[0] -= 1;  // α₁/2: non-integer coordinate
    CHECK_THROWS(depth_of(h, half));

    Weight alien = h;
    alien.omega[0] += AffineExponent::sym("n1");  // symbols must cancel
    CHECK_THROWS(depth_of(h, alien));
}

TEST_CASE("character completeness counts") {
    for (int n = 0; n <= 6; ++n) {
        CHECK(static_cast<long long>(char_evaluation(1, n).terms.size()) == eval_count(1, n));
        CHECK(static_cast<long long>(char_oscillator(1, 1, n).terms.size()) == osc_count(1, 1, n));
        CHECK(static_cast<long long>(char_oscillator(1, 2, n).terms.size()) == osc_count(1, 2, n));
    }
    for (int n = 0; n <= 4; ++n) {
        CHECK(static_cast<long long>(char_evaluation(2, n).terms.size()) == eval_count(2, n));
        for (int a = 1; a <= 3; ++a)
            CHECK(static_cast<long long>(char_oscillator(2, a, n).terms.size()) ==
                  osc_count(2, a, n));
    }
}

TEST_CASE("products against the reference convolution") {
    const auto pts = specialization_points(2);
    const QCharacter a = char_oscillator(2, 1, 4, pts[0]);
    const QCharacter b = char_oscillator(2, 2, 4, pts[1]);
    const QCharacter prod = char_mul(a, b);
    CHECK(prod.cutoff == 4);
    CHECK(char_equal(prod, convolve(a, b)));
    CHECK(char_equal(prod, char_mul_serial(a, b)));
}

TEST_CASE("1000 randomized character-algebra cases") {
    std::mt19937 rng(20240820);
    std::uniform_int_distribution<int> rank(1, 2);
    std::uniform_int_distribution<int> depth(0, 3);
    std::uniform_int_distribution<int> shift_c(-2, 2);
    for (int i = 0; i < 1000; ++i) {
        const int l = rank(rng);
        std::uniform_int_distribution<int> module(1, l + 1);
        const ZetaPoint at1(AffineExponent(shift_c(rng)));
        const ZetaPoint at2(AffineExponent(shift_c(rng)));
        const QCharacter a = char_oscillator(l, module(rng), depth(rng), at1);
        const QCharacter b = char_oscillator(l, module(rng), depth(rng), at2);

        // Reference convolution agrees with the kernel.
        const QCharacter ab = char_mul(a, b);
        CHECK(char_equal(ab, convolve(a, b)));

        // Commutativity.
        CHECK(char_equal(ab, char_mul(b, a)));

        // Truncation coherence: cutting factors first loses nothing.
        const int k = std::min(std::min(a.cutoff, b.cutoff), depth(rng));
        CHECK(char_equal(char_truncate(ab, k),
                         char_mul(char_truncate(a, k), char_truncate(b, k))));

        // Shifts distribute over the product.
        Weight xi(l);
        xi.omega[0] = shift_c(rng);
        CHECK(char_equal(char_shift(ab, xi), char_mul(char_shift(a, xi), b)));
    }
}

TEST_CASE("associativity on a three-factor product") {
    const auto pts = specialization_points(2);
    const QCharacter a = char_oscillator(2, 1, 3, pts[0]);
    const QCharacter b = char_oscillator(2, 2, 3, pts[1]);
    const QCharacter c = char_oscillator(2, 3, 3, pts[2]);
    CHECK(char_equal(char_mul(char_mul(a, b), c), char_mul(a, char_mul(b, c))));
}

TEST_CASE("char_diff reports first differences") {
    const QCharacter a = char_evaluation(1, 2);
    QCharacter b = a;
    b.terms.begin()->second += 1;
    CHECK(char_diff(a, a).empty());
    CHECK_FALSE(char_diff(a, b).empty());
    CHECK_FALSE(char_equal(a, b));
}

TEST_CASE("truncated product identity, small rank-1 instance") {
    const GrothendieckResult r = verify_grothendieck(1, 3);
    CHECK(r.ok);
    CHECK(r.l == 1);
    CHECK(r.depth == 3);
    CHECK(r.lhs_terms == r.rhs_terms);
    CHECK(r.mismatch.empty());
}
