// ℓ-weight tables. The layout mirrors the structure of the underlying
// modules: one block per rank and module family, each listing the h-weight
// (coefficients of the fundamental weights) and the series components as
// multisets of factor exponents. The spectral-shift offset `at.c` is added
// to every factor exponent and never touches the h-weight.
#include "qloop/catalog.hpp"

#include <stdexcept>
#include <utility>

namespace qloop {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

LinearFactor fac(AffineExponent e) { return LinearFactor{std::move(e)}; }

/// Compose an affine expression over the index symbols n1, n2 with the
/// actual (possibly symbolic) index entries.
AffineExponent compose_n(const AffineExponent& e, const std::array<AffineExponent, 2>& n) {
    AffineExponent out = e.substitute({{"n1", Rational(0)}, {"n2", Rational(0)}});
    out += e.coeff("n1") * n[0];
    out += e.coeff("n2") * n[1];
    return out;
}

}  // namespace

void EvalIndex::validate() const {
    require(l == 1 || l == 2, "EvalIndex: rank must be 1 or 2");
    for (int k = 0; k < 3; ++k) {
        if (k < count())
            require(m[k] >= 0, "EvalIndex: entries must be non-negative");
        else
            require(m[k] == 0, "EvalIndex: unused entries must be 0");
    }
}

void OscIndex::validate() const {
    require(l == 1 || l == 2, "OscIndex: rank must be 1 or 2");
    require(a >= 1 && a <= l + 1, "OscIndex: module label out of range");
    for (int k = 0; k < 2; ++k) {
        if (k < l)
            require(n[k] >= 0, "OscIndex: entries must be non-negative");
        else
            require(n[k] == 0, "OscIndex: unused entries must be 0");
    }
}

const Symbol& mu_symbol(int a) {
    static const Symbol tab[3] = {"mu1", "mu2", "mu3"};
    require(a >= 1 && a <= 3, "mu_symbol: component out of range");
    return tab[a - 1];
}

std::vector<AffineExponent> mu_tuple(int l) {
    require(l == 1 || l == 2, "mu_tuple: rank must be 1 or 2");
    std::vector<AffineExponent> mu;
    for (int a = 1; a <= l + 1; ++a) mu.push_back(AffineExponent::sym(mu_symbol(a)));
    return mu;
}

LWeight eval_lweight_sym(int l, const std::array<AffineExponent, 3>& m, const ZetaPoint& at) {
    require(l == 1 || l == 2, "eval_lweight_sym: rank must be 1 or 2");
    const auto mu = mu_tuple(l);
    const AffineExponent& c = at.c;

    if (l == 1) {
        const AffineExponent& m12 = m[0];
        LWeight lw = LWeight::identity(1);
        lw.weight.omega[0] = mu[0] - mu[1] - 2 * m12;
        lw.plus[0] = RationalFunction(
            0,
            {fac(2 * mu[0] + 2 + c), fac(2 * mu[1] + c)},
            {fac(2 * mu[0] + 2 - 2 * m12 + c), fac(2 * mu[0] - 2 * m12 + c)});
        return lw;
    }

    const AffineExponent& m12 = m[0];
    const AffineExponent& m13 = m[1];
    const AffineExponent& m23 = m[2];
    LWeight lw = LWeight::identity(2);
    lw.weight.omega[0] = mu[0] - mu[1] - 2 * m12 - m13 + m23;
    lw.weight.omega[1] = mu[1] - mu[2] + m12 - m13 - 2 * m23;
    lw.plus[0] = RationalFunction(
        0,
        {fac(2 * mu[0] - 2 * m13 + 2 + c), fac(2 * mu[1] - 2 * m23 + c)},
        {fac(2 * mu[0] - 2 * m12 - 2 * m13 + 2 + c), fac(2 * mu[0] - 2 * m12 - 2 * m13 + c)});
    lw.plus[1] = RationalFunction(
        0,
        {fac(2 * mu[0] - 2 * m12 - 2 * m13 + 1 + c), fac(2 * mu[0] + 3 + c),
         fac(2 * mu[1] + 1 + c), fac(2 * mu[2] - 1 + c)},
        {fac(2 * mu[0] - 2 * m13 + 1 + c), fac(2 * mu[0] - 2 * m13 + 3 + c),
         fac(2 * mu[1] - 2 * m23 + 1 + c), fac(2 * mu[1] - 2 * m23 - 1 + c)});
    return lw;
}

LWeight osc_lweight_sym(int l, int a, const std::array<AffineExponent, 2>& n, const ZetaPoint& at,
                        const OscTableVariant& variant) {
    require(l == 1 || l == 2, "osc_lweight_sym: rank must be 1 or 2");
    require(a >= 1 && a <= l + 1, "osc_lweight_sym: module label out of range");
    const AffineExponent& c = at.c;

    if (l == 1) {
        const AffineExponent& n1 = n[0];
        LWeight lw = LWeight::identity(1);
        if (a == 1) {
            lw.weight.omega[0] = -2 * n1 - 2;
            lw.plus[0] = RationalFunction(
                0, {fac(1 + c)}, {fac(-2 * n1 - 1 + c), fac(-2 * n1 + 1 + c)});
        } else {
            lw.weight.omega[0] = -2 * n1;
            lw.plus[0] = RationalFunction(0, {fac(1 + c)}, {});
        }
        return lw;
    }

    const AffineExponent& n1 = n[0];
    const AffineExponent& n2 = n[1];
    LWeight lw = LWeight::identity(2);
    if (a == 1) {
        lw.weight.omega[0] = -2 * n1 - n2 - 3;
        lw.weight.omega[1] = n1 - n2;
        lw.plus[0] = RationalFunction(
            0, {fac(-2 * n2 + c)}, {fac(-2 * n1 - 2 * n2 + c), fac(-2 * n1 - 2 * n2 - 2 + c)});
        lw.plus[1] = RationalFunction(
            0, {fac(1 + c), fac(-2 * n1 - 2 * n2 - 1 + c)},
            {fac(-2 * n2 - 1 + c), fac(-2 * n2 + 1 + c)});
    } else if (a == 2) {
        lw.weight.omega[0] = n1 - 2 * n2 + 1;
        lw.weight.omega[1] = -2 * n1 + n2 - 2;
        lw.plus[0] = RationalFunction(0, {fac(-2 * n1 + c)}, {});
        // The second component's final denominator factor is the one the
        // printed table garbles; select it per the requested variant.
        std::vector<LinearFactor> den{fac(-2 * n1 - 1 + c)};
        switch (variant.kind) {
            case OscTableVariant::corrected:
                den.push_back(fac(-2 * n1 + 1 + c));
                break;
            case OscTableVariant::missing_factor:
                break;
            case OscTableVariant::custom:
                den.push_back(fac(compose_n(variant.custom_exponent, n) + c));
                break;
            case OscTableVariant::swapped_components:
                den.push_back(fac(-2 * n1 + 1 + c));
                break;
        }
        lw.plus[1] = RationalFunction(0, {fac(1 + c)}, std::move(den));
        if (variant.kind == OscTableVariant::swapped_components)
            std::swap(lw.plus[0], lw.plus[1]);
    } else {
        lw.weight.omega[0] = -n1 + n2;
        lw.weight.omega[1] = -n1 - 2 * n2;
        lw.plus[0] = RationalFunction::one();
        lw.plus[1] = RationalFunction(0, {fac(1 + c)}, {});
    }
    return lw;
}

LWeight eval_lweight(const EvalIndex& idx, const ZetaPoint& at) {
    return eval_lweight_sym(idx.l, {AffineExponent(idx.m[0]), AffineExponent(idx.m[1]),
                                    AffineExponent(idx.m[2])},
                            at);
}

LWeight osc_lweight(const OscIndex& idx, const ZetaPoint& at, const OscTableVariant& variant) {
    return osc_lweight_sym(idx.l, idx.a,
                           {AffineExponent(idx.n[0]), AffineExponent(idx.n[1])}, at, variant);
}

std::vector<ZetaPoint> specialization_points(int l) {
    require(l == 1 || l == 2, "specialization_points: rank must be 1 or 2");
    const auto mu = mu_tuple(l);
    std::vector<ZetaPoint> pts;
    if (l == 1) {
        pts.emplace_back(2 * mu[0] + 1);
        pts.emplace_back(2 * mu[1] - 1);
    } else {
        pts.emplace_back(2 * mu[0] + 2);
        pts.emplace_back(2 * mu[1] + 0);
        pts.emplace_back(2 * mu[2] - 2);
    }
    return pts;
}

std::vector<ZetaPoint> specialization_points_perturbed(int l, int which_a, int delta_c) {
    auto pts = specialization_points(l);
    require(which_a >= 1 && which_a <= static_cast<int>(pts.size()),
            "specialization_points_perturbed: module label out of range");
    pts[which_a - 1].c += AffineExponent(delta_c);
    return pts;
}

LWeight highest_lweight_product(int l, const OscTableVariant& variant) {
    const auto pts = specialization_points(l);
    LWeight prod = LWeight::identity(l);
    for (int a = 1; a <= l + 1; ++a) {
        const std::array<AffineExponent, 2> zero{AffineExponent(0), AffineExponent(0)};
        prod = lw_mul(prod, osc_lweight_sym(l, a, zero, pts[a - 1], variant));
    }
    return prod;
}

std::vector<std::pair<int, int>> eval_index_embedding(int l) {
    require(l == 1 || l == 2, "eval_index_embedding: rank must be 1 or 2");
    if (l == 1) return {{1, 0}};          // m12 = n11
    return {{1, 0}, {1, 1}, {2, 0}};      // (m12, m13, m23) = (n11, n12, n21)
}

std::vector<std::pair<int, int>> nprime_embedding(int l) {
    require(l == 1 || l == 2, "nprime_embedding: rank must be 1 or 2");
    if (l == 1) return {{2, 0}};          // n′ = (n21)
    return {{2, 1}, {3, 0}, {3, 1}};      // n′ = (n22, n31, n32)
}

Weight delta_shift_sym(int l, const std::vector<AffineExponent>& nprime) {
    require(l == 1 || l == 2, "delta_shift_sym: rank must be 1 or 2");
    require(nprime.size() == nprime_embedding(l).size(),
            "delta_shift_sym: wrong n' tuple length");
    const auto mu = mu_tuple(l);
    Weight w(l);
    if (l == 1) {
        const AffineExponent& n21 = nprime[0];
        w.omega[0] = -2 - mu[0] + mu[1] - 2 * n21;
        return w;
    }
    const AffineExponent& n22 = nprime[0];
    const AffineExponent& n31 = nprime[1];
    const AffineExponent& n32 = nprime[2];
    w.omega[0] = -2 - mu[0] + mu[1] - 2 * n22 - n31 + n32;
    w.omega[1] = -2 - mu[1] + mu[2] + n22 - n31 - 2 * n32;
    return w;
}

Weight delta_shift(int l, const std::vector<int>& nprime) {
    std::vector<AffineExponent> np;
    np.reserve(nprime.size());
    for (int v : nprime) np.emplace_back(v);
    return delta_shift_sym(l, np);
}

}  // namespace qloop
