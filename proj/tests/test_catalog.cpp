#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qloop/catalog.hpp"

#include <algorithm>

using namespace qloop;

namespace {

const AffineExponent mu1 = AffineExponent::sym("mu1");
const AffineExponent mu2 = AffineExponent::sym("mu2");
const AffineExponent mu3 = AffineExponent::sym("mu3");

std::vector<LinearFactor> factors(std::vector<AffineExponent> es) {
    std::vector<LinearFactor> fs;
    for (auto& e : es) fs.push_back({std::move(e)});
    std::sort(fs.begin(), fs.end());
    return fs;
}

}  // namespace

TEST_CASE("index validation") {
    CHECK_NOTHROW(EvalIndex(1, {4, 0, 0}));
    CHECK_THROWS(EvalIndex(1, {-1, 0, 0}));
    CHECK_THROWS(EvalIndex(1, {0, 1, 0}));  // unused entries must stay 0
    CHECK_NOTHROW(EvalIndex(2, {1, 2, 3}));
    CHECK_THROWS(EvalIndex(3, {0, 0, 0}));

    CHECK_NOTHROW(OscIndex(1, 2, {5, 0}));
    CHECK_THROWS(OscIndex(1, 3, {0, 0}));   // a ranges over 1..l+1
    CHECK_THROWS(OscIndex(1, 1, {0, 1}));   // unused entries must stay 0
    CHECK_THROWS(OscIndex(2, 1, {0, -1}));
}

TEST_CASE("rank-1 evaluation table") {
    const LWeight w = eval_lweight(EvalIndex(1, {2, 0, 0}));
    CHECK(w.weight.omega[0] == mu1 - mu2 - 4);
    CHECK(w.plus[0].num() == factors({2 * mu1 + 2, 2 * mu2}));
    CHECK(w.plus[0].den() == factors({2 * mu1 - 2, 2 * mu1 - 4}));
    CHECK(w.plus[0].prefactor().is_zero());

    // m12 = 0: one numerator factor cancels against the denominator.
    const LWeight top = eval_lweight(EvalIndex(1, {0, 0, 0}));
    CHECK(top.weight.omega[0] == mu1 - mu2);
    CHECK(top.plus[0].num() == factors({2 * mu2}));
    CHECK(top.plus[0].den() == factors({2 * mu1}));
}

TEST_CASE("rank-2 evaluation table") {
    const LWeight w = eval_lweight(EvalIndex(2, {1, 1, 1}));
    CHECK(w.weight.omega[0] == mu1 - mu2 - 2);
    CHECK(w.weight.omega[1] == mu2 - mu3 - 2);
    CHECK(w.plus[0].num() == factors({2 * mu1, 2 * mu2 - 2}));
    CHECK(w.plus[0].den() == factors({2 * mu1 - 2, 2 * mu1 - 4}));
    CHECK(w.plus[1].num() ==
          factors({2 * mu1 - 3, 2 * mu1 + 3, 2 * mu2 + 1, 2 * mu3 - 1}));
    CHECK(w.plus[1].den() ==
          factors({2 * mu1 - 1, 2 * mu1 + 1, 2 * mu2 - 1, 2 * mu2 - 3}));
}

TEST_CASE("rank-1 oscillator tables") {
    const LWeight a1 = osc_lweight(OscIndex(1, 1, {3, 0}));
    CHECK(a1.weight.omega[0] == AffineExponent(-8));
    CHECK(a1.plus[0].num() == factors({1}));
    CHECK(a1.plus[0].den() == factors({-7, -5}));

    const LWeight a2 = osc_lweight(OscIndex(1, 2, {3, 0}));
    CHECK(a2.weight.omega[0] == AffineExponent(-6));
    CHECK(a2.plus[0].num() == factors({1}));
    CHECK(a2.plus[0].den().empty());
}

TEST_CASE("rank-2 oscillator tables") {
    const LWeight a1 = osc_lweight(OscIndex(2, 1, {1, 2}));
    CHECK(a1.weight.omega[0] == AffineExponent(-7));
    CHECK(a1.weight.omega[1] == AffineExponent(-1));
    CHECK(a1.plus[0].num() == factors({-4}));
    CHECK(a1.plus[0].den() == factors({-6, -8}));
    CHECK(a1.plus[1].num() == factors({1, -7}));
    CHECK(a1.plus[1].den() == factors({-5, -3}));

    const LWeight a2 = osc_lweight(OscIndex(2, 2, {2, 1}));
    CHECK(a2.weight.omega[0] == AffineExponent(1));
    CHECK(a2.weight.omega[1] == AffineExponent(-5));
    CHECK(a2.plus[0].num() == factors({-4}));
    CHECK(a2.plus[0].den().empty());
    CHECK(a2.plus[1].num() == factors({1}));
    CHECK(a2.plus[1].den() == factors({-5, -3}));

    const LWeight a3 = osc_lweight(OscIndex(2, 3, {1, 1}));
    CHECK(a3.weight.omega[0] == AffineExponent(0));
    CHECK(a3.weight.omega[1] == AffineExponent(-3));
    CHECK(a3.plus[0].is_one());
    CHECK(a3.plus[1].num() == factors({1}));
    CHECK(a3.plus[1].den().empty());
}

TEST_CASE("table variants differ exactly in the defective factor") {
    const OscIndex idx(2, 2, {2, 1});
    const LWeight corrected = osc_lweight(idx);

    OscTableVariant missing;
    missing.kind = OscTableVariant::missing_factor;
    const LWeight dropped = osc_lweight(idx, {}, missing);
    CHECK(dropped.weight == corrected.weight);
    CHECK(dropped.plus[0] == corrected.plus[0]);
    CHECK(dropped.plus[1].den() == factors({-5}));  // -2n1+1 factor absent

    OscTableVariant custom;
    custom.kind = OscTableVariant::custom;
    custom.custom_exponent = -2 * AffineExponent::sym("n1") + 1;
    CHECK(osc_lweight(idx, {}, custom) == corrected);

    OscTableVariant swapped;
    swapped.kind = OscTableVariant::swapped_components;
    const LWeight sw = osc_lweight(idx, {}, swapped);
    CHECK(sw.plus[0] == corrected.plus[1]);
    CHECK(sw.plus[1] == corrected.plus[0]);
}

TEST_CASE("zeta points shift every series exponent") {
    ZetaPoint at(AffineExponent(5));
    const LWeight shifted = osc_lweight(OscIndex(1, 2, {1, 0}), at);
    CHECK(shifted.plus[0].num() == factors({6}));
    // The weight never depends on the spectral point.
    CHECK(shifted.weight == osc_lweight(OscIndex(1, 2, {1, 0})).weight);
}

TEST_CASE("specialization points") {
    const auto p1 = specialization_points(1);
    REQUIRE(p1.size() == 2);
    CHECK(p1[0].c == 2 * mu1 + 1);
    CHECK(p1[1].c == 2 * mu2 - 1);

    const auto p2 = specialization_points(2);
    REQUIRE(p2.size() == 3);
    CHECK(p2[0].c == 2 * mu1 + 2);
    CHECK(p2[1].c == 2 * mu2);
    CHECK(p2[2].c == 2 * mu3 - 2);

    const auto pert = specialization_points_perturbed(1, 2, 1);
    CHECK(pert[0].c == p1[0].c);
    CHECK(pert[1].c == 2 * mu2);
}

TEST_CASE("index identification splits module entries into m(n) and n'") {
    const auto m1 = eval_index_embedding(1);
    const auto p1 = nprime_embedding(1);
    CHECK(m1 == std::vector<std::pair<int, int>>{{1, 0}});
    CHECK(p1 == std::vector<std::pair<int, int>>{{2, 0}});

    const auto m2 = eval_index_embedding(2);
    const auto p2 = nprime_embedding(2);
    CHECK(m2 == std::vector<std::pair<int, int>>{{1, 0}, {1, 1}, {2, 0}});
    CHECK(p2 == std::vector<std::pair<int, int>>{{2, 1}, {3, 0}, {3, 1}});

    // Together they cover each module's entries exactly once.
    std::vector<std::pair<int, int>> all = m2;
    all.insert(all.end(), p2.begin(), p2.end());
    std::sort(all.begin(), all.end());
    CHECK(all == std::vector<std::pair<int, int>>{
                     {1, 0}, {1, 1}, {2, 0}, {2, 1}, {3, 0}, {3, 1}});
}

TEST_CASE("delta shifts") {
    const Weight d1 = delta_shift(1, {3});
    CHECK(d1.omega[0] == -mu1 + mu2 - 8);

    const Weight d2 = delta_shift(2, {1, 2, 3});
    CHECK(d2.omega[0] == -mu1 + mu2 - 3);
    CHECK(d2.omega[1] == -mu2 + mu3 - 9);

    // Symbolic form: linear coefficients of the n' symbols.
    const AffineExponent np1 = AffineExponent::sym("np1");
    const AffineExponent np2 = AffineExponent::sym("np2");
    const AffineExponent np3 = AffineExponent::sym("np3");
    const Weight ds = delta_shift_sym(2, {np1, np2, np3});
    CHECK(ds.omega[0] == -mu1 + mu2 - 2 * np1 - np2 + np3 - 2);
    CHECK(ds.omega[1] == -mu2 + mu3 + np1 - np2 - 2 * np3 - 2);
}

TEST_CASE("highest-weight products have the mu-free total weight") {
    const LWeight h1 = highest_lweight_product(1);
    CHECK(h1.weight.omega[0] == AffineExponent(-2));

    const LWeight h2 = highest_lweight_product(2);
    CHECK(h2.weight.omega[0] == AffineExponent(-2));
    CHECK(h2.weight.omega[1] == AffineExponent(-2));
}
