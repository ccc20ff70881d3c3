// The threaded kernels must agree with their serial reference
// implementations exactly — same multisets symbolically, bit-identical
// floating point numerically (per-case work is independent and Eigen's own
// threading is compiled out).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qloop/numeric_checks.hpp"
#include "qloop/prover.hpp"

using namespace qloop;

TEST_CASE("character products: threaded equals serial") {
    const auto pts = specialization_points(2);
    const QCharacter a = char_oscillator(2, 1, 6, pts[0]);
    const QCharacter b = char_oscillator(2, 2, 6, pts[1]);
    const QCharacter c = char_oscillator(2, 3, 6, pts[2]);
    const QCharacter ab_p = char_mul(a, b);
    const QCharacter ab_s = char_mul_serial(a, b);
    CHECK(char_equal(ab_p, ab_s));
    CHECK(char_equal(char_mul(ab_p, c), char_mul_serial(ab_s, c)));
}

TEST_CASE("tensor-consistency scan: threaded equals serial") {
    for (int l : {1, 2}) {
        const CheckResult p = verify_tensor_consistency(l, l == 1 ? 6 : 4);
        const CheckResult s = verify_tensor_consistency_serial(l, l == 1 ? 6 : 4);
        CHECK(p.ok == s.ok);
        CHECK(p.detail == s.detail);
    }
}

TEST_CASE("numeric sweep: threaded equals serial bit for bit") {
    NumericParams params;
    params.fock_cutoff = 18;
    params.verma_cutoff = 28;
    NumericOptions opt;
    opt.sites = 2;
    opt.n_seeds = 2;
    opt.n_zeta = 2;
    opt.with_bgg = opt.with_stability = opt.with_negative = false;

    const NumericOutcome par = run_numeric_checks(params, opt);
    const NumericOutcome ser = run_numeric_checks_serial(params, opt);
    REQUIRE(par.cases.size() == ser.cases.size());
    for (size_t i = 0; i < par.cases.size(); ++i) {
        const CaseMetrics& a = par.cases[i];
        const CaseMetrics& b = ser.cases[i];
        CHECK(a.ok == b.ok);
        CHECK(a.mu1 == b.mu1);
        CHECK(a.log_zeta == b.log_zeta);
        CHECK(a.relation_residual == b.relation_residual);
        CHECK(a.intertwiner_residual == b.intertwiner_residual);
        CHECK(a.commutator_max == b.commutator_max);
        CHECK(a.kappa == b.kappa);
        CHECK(a.ratio_spread == b.ratio_spread);
        CHECK(a.eigen_match == b.eigen_match);
        CHECK(a.tail_max == b.tail_max);
    }
    CHECK(par.max_ratio_spread == ser.max_ratio_spread);
    CHECK(par.kappa_spread == ser.kappa_spread);
}
