#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qloop/prover.hpp"

using namespace qloop;

TEST_CASE("Weyl group: sizes, signs, inverses") {
    for (int l = 1; l <= 2; ++l) {
        const auto group = weyl_group(l);
        CHECK(static_cast<int>(group.size()) == (l == 1 ? 2 : 6));
        int sum = 0;
        for (const auto& w : group) {
            sum += w.sign;
            // sgn(w⁻¹) = sgn(w).
            CHECK(WeylElement(w.inverse_perm()).sign == w.sign);
            // w⁻¹∘w = id.
            const auto inv = w.inverse_perm();
            for (int i = 0; i < w.degree(); ++i) CHECK(inv[static_cast<size_t>(w.perm[static_cast<size_t>(i)])] == i);
        }
        CHECK(sum == 0);  // equally many even and odd elements
    }
    CHECK_THROWS(WeylElement({0, 0}));  // not a permutation
}

TEST_CASE("rho: half-sum of positive roots equals the closed form") {
    for (int l = 1; l <= 3; ++l) CHECK(rho(l) == rho_closed_form(l));
    CHECK(rho(1) == std::vector<Rational>{Rational(1, 2), Rational(-1, 2)});
    CHECK(rho(2) == std::vector<Rational>{1, 0, -1});
}

TEST_CASE("Cartan matrix and its exact inverse") {
    for (int l = 1; l <= 3; ++l) {
        const auto a = cartan_matrix(l);
        const auto c = inverse_cartan(l);
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < l; ++j) {
                Rational dot = 0;
                for (int k = 0; k < l; ++k) dot += a[static_cast<size_t>(i)][static_cast<size_t>(k)] * c[static_cast<size_t>(k)][static_cast<size_t>(j)];
                CHECK(dot == (i == j ? 1 : 0));
            }
    }
}

TEST_CASE("Weyl action conventions") {
    // w = transposition (0 1) on a 2-tuple.
    const WeylElement w({1, 0});
    CHECK(w.sign == -1);
    const AffineExponent a = AffineExponent::sym("mu1"), b = AffineExponent::sym("mu2");
    const auto swapped = weyl_apply(w, {a, b});
    CHECK(swapped[0] == b);
    CHECK(swapped[1] == a);

    // Shifted action for l=1: w·(μ₁, μ₂) = (μ₂ − 1, μ₁ + 1).
    const auto affine = weyl_affine(w, {a, b}, 1);
    CHECK(affine[0] == b - 1);
    CHECK(affine[1] == a + 1);
}

TEST_CASE("renormalization exponents: table values and zero column sums") {
    const auto r1 = q_renormalization(1);
    REQUIRE(r1.size() == 2);
    CHECK(r1[0] == std::vector<Rational>{Rational(-1, 4)});
    CHECK(r1[1] == std::vector<Rational>{Rational(1, 4)});

    const auto r2 = q_renormalization(2);
    REQUIRE(r2.size() == 3);
    CHECK(r2[0] == std::vector<Rational>{Rational(-1, 3), Rational(-1, 6)});
    CHECK(r2[1] == std::vector<Rational>{Rational(1, 6), Rational(-1, 6)});
    CHECK(r2[2] == std::vector<Rational>{Rational(1, 6), Rational(1, 3)});
}

TEST_CASE("highest-weight match") {
    CHECK(verify_highest_weight_match(1).ok);
    CHECK(verify_highest_weight_match(2).ok);
}

TEST_CASE("tensor consistency: threaded and serial agree and pass") {
    const CheckResult s1 = verify_tensor_consistency_serial(1, 4);
    const CheckResult p1 = verify_tensor_consistency(1, 4);
    CHECK(s1.ok);
    CHECK(p1.ok);
    CHECK(s1.detail == p1.detail);

    const CheckResult s2 = verify_tensor_consistency_serial(2, 3);
    const CheckResult p2 = verify_tensor_consistency(2, 3);
    CHECK(s2.ok);
    CHECK(p2.ok);
    CHECK(s2.detail == p2.detail);
}

TEST_CASE("scalar resummation identity") {
    const ResummationCheck r1 = verify_resummation(1, 12);
    CHECK(r1.ok);
    CHECK(r1.reduced == std::vector<int>{1});

    const ResummationCheck r2 = verify_resummation(2, 10);
    CHECK(r2.ok);
    CHECK(r2.reduced == std::vector<int>{2, 2});
}

TEST_CASE("determinant bookkeeping for both ranks") {
    const DeterminantResult d1 = verify_determinant_arguments(1);
    CHECK(d1.ok);
    CHECK(d1.group_order == 2);

    const DeterminantResult d2 = verify_determinant_arguments(2);
    CHECK(d2.ok);
    CHECK(d2.group_order == 6);
}

TEST_CASE("full symbolic factorization, fast instances") {
    const FactorizationResult f1 = verify_factorization_symbolic(1, 4, 8);
    CHECK(f1.ok);
    CHECK(f1.highest.ok);
    CHECK(f1.grothendieck.ok);
    CHECK(f1.resummation.ok);

    const FactorizationResult f2 = verify_factorization_symbolic(2, 3, 8);
    CHECK(f2.ok);
}

TEST_CASE("negative control: perturbed specialization must fail") {
    CHECK(verify_negative_control(1, 4).ok);
    CHECK(verify_negative_control(2, 3).ok);
}

TEST_CASE("defective table variants break the product identity") {
    GrothendieckOptions missing;
    missing.variant.kind = OscTableVariant::missing_factor;
    CHECK_FALSE(verify_grothendieck(2, 3, missing).ok);

    GrothendieckOptions swapped;
    swapped.variant.kind = OscTableVariant::swapped_components;
    CHECK_FALSE(verify_grothendieck(2, 3, swapped).ok);

    // The corrected completion, spelled as an explicit custom exponent.
    GrothendieckOptions fixed;
    fixed.variant.kind = OscTableVariant::custom;
    fixed.variant.custom_exponent = -2 * AffineExponent::sym("n1") + 1;
    CHECK(verify_grothendieck(2, 3, fixed).ok);

    // A wrong custom completion.
    GrothendieckOptions wrong;
    wrong.variant.kind = OscTableVariant::custom;
    wrong.variant.custom_exponent = -2 * AffineExponent::sym("n1") - 1;
    CHECK_FALSE(verify_grothendieck(2, 3, wrong).ok);
}
