// Closed-form ℓ-weight tables for the evaluation modules Ṽ^μ_ζ (rank l=1,2)
// and the q-oscillator Borel modules (θ_a)_ζ (a = 1..l+1), plus the shared
// index bookkeeping: spectral-shift points, highest-weight products and the
// identification between oscillator index tuples and evaluation indices.
//
// Conventions:
//   - the symbolic highest weight is μ = (mu1, .., mu{l+1});
//   - a ZetaPoint carries c with meaning "evaluate at q^{c/s}·ζ", so a table
//     factor (1 − q^x·(ζ')^s u) becomes (1 − q^{x+c}·Z) with Z = ζ^s·u;
//   - evaluation indices m are colexicographic: (m12) for l=1 and
//     (m12, m13, m23) for l=2; oscillator indices are (n1) / (n1, n2).
#pragma once

#include "qloop/lweight.hpp"

#include <array>

namespace qloop {

/// Evaluation-module ℓ-weight index.
struct EvalIndex {
    int l = 1;
    std::array<int, 3> m{0, 0, 0};  // m12[, m13, m23]; unused entries 0

    EvalIndex(int l_, std::array<int, 3> m_) : l(l_), m(m_) { validate(); }
    void validate() const;
    int count() const { return l * (l + 1) / 2; }
};

/// Oscillator-module ℓ-weight index (module a = 1..l+1, tuple n).
struct OscIndex {
    int l = 1;
    int a = 1;
    std::array<int, 2> n{0, 0};  // n1[, n2]; unused entries 0

    OscIndex(int l_, int a_, std::array<int, 2> n_) : l(l_), a(a_), n(n_) { validate(); }
    void validate() const;
};

/// Spectral-shift point: the module is evaluated at q^{c/s}·ζ.
struct ZetaPoint {
    AffineExponent c;  // default 0: the bare point ζ

    ZetaPoint() = default;
    explicit ZetaPoint(AffineExponent c_) : c(std::move(c_)) {}
};

/// How the second series component of the a=2, l=2 oscillator table is
/// completed. The printed source line for that component is garbled (its
/// label and its final factor are defective), so the table is parameterized:
/// `corrected` is the completion the consistency checks single out;
/// `missing_factor` drops the defective final factor; `custom` substitutes an
/// arbitrary affine exponent e(n1) for it — the ansatz-scan hook.
struct OscTableVariant {
    enum Kind { corrected, missing_factor, custom, swapped_components } kind = corrected;
    AffineExponent custom_exponent;  // used when kind == custom

    static OscTableVariant corrected_v() { return {}; }
};

const Symbol& mu_symbol(int a);  // "mu1", "mu2", "mu3" for a = 1, 2, 3

/// μ as a symbolic (l+1)-tuple (mu1, .., mu{l+1}).
std::vector<AffineExponent> mu_tuple(int l);

/// Symbolic-index core tables: indices enter as affine expressions so the
/// same code serves concrete integers and promoted index symbols.
LWeight eval_lweight_sym(int l, const std::array<AffineExponent, 3>& m, const ZetaPoint& at);
LWeight osc_lweight_sym(int l, int a, const std::array<AffineExponent, 2>& n, const ZetaPoint& at,
                        const OscTableVariant& variant = {});

/// Concrete-index wrappers.
LWeight eval_lweight(const EvalIndex& idx, const ZetaPoint& at = {});
LWeight osc_lweight(const OscIndex& idx, const ZetaPoint& at = {},
                    const OscTableVariant& variant = {});

/// The specialization offsets c_a (a = 1..l+1) such that ζ_a^μ = q^{c_a/s}·ζ;
/// affine in the μ symbols. An optional perturbation adds the given integer
/// to one offset — the negative-control hook of the factorization checks.
std::vector<ZetaPoint> specialization_points(int l);
std::vector<ZetaPoint> specialization_points_perturbed(int l, int which_a, int delta_c);

/// Product over a of the oscillator highest ℓ-weights (n = 0) at the
/// specialization points — the left side of the highest-weight matching.
LWeight highest_lweight_product(int l, const OscTableVariant& variant = {});

/// The oscillator tuple-of-tuples → evaluation index identification: which
/// oscillator index entries play the role of (m12[, m13, m23]). Returns, per
/// evaluation slot, the pair (module a, entry index within n).
std::vector<std::pair<int, int>> eval_index_embedding(int l);

/// The complementary entries (the n′ tuple): pairs (module a, entry index).
std::vector<std::pair<int, int>> nprime_embedding(int l);

/// δ-shift: weight offset, affine in μ and the promoted n′ symbols given as
/// arguments (length = nprime_embedding(l).size()). Derived as
/// (Σ_a ψ_{a,n_a}) − λ^μ_{m(n)} and independent of the embedded entries.
Weight delta_shift_sym(int l, const std::vector<AffineExponent>& nprime);

/// δ-shift with concrete n′ entries.
Weight delta_shift(int l, const std::vector<int>& nprime);

}  // namespace qloop
