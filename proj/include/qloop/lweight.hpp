// ℓ-weights and their building blocks.
//
// An ℓ-weight is a pair (λ, Λ⁺): an h*-weight λ expanded over the fundamental
// weights ω_1..ω_l, and an l-tuple of rational functions in the combined
// spectral variable Z = ζ^s·u. Each rational function is a product of linear
// factors (1 − q^e·Z)^{±1} together with a pure q-power prefactor, kept in a
// canonical cancelled form so that ℓ-weights can be hashed, ordered and
// compared as multiset elements.
//
// ℓ-weights form an abelian group under the componentwise product
// (λ, Λ⁺)(ξ, Ξ⁺) = (λ+ξ, (Λ⁺_i·Ξ⁺_i)); the identity has zero weight and unit
// series. All values are immutable in use and safe to share across threads.
#pragma once

#include "qloop/affine.hpp"

#include <vector>

namespace qloop {

/// The factor (1 − q^{exponent}·Z) with Z = ζ^s·u.
struct LinearFactor {
    AffineExponent exponent;

    friend bool operator==(const LinearFactor& a, const LinearFactor& b) {
        return a.exponent == b.exponent;
    }
    friend bool operator<(const LinearFactor& a, const LinearFactor& b) {
        return a.exponent < b.exponent;
    }
    std::string str() const { return "(1 - q^{" + exponent.str() + "} Z)"; }
};

/// A product q^{prefactor} · Π num_j / Π den_j of linear factors, canonical:
/// both multisets sorted and mutually cancelled (no factor occurs on both
/// sides). Constant term of the series part is always 1.
class RationalFunction {
public:
    RationalFunction() : prefactor_(0) {}

    static RationalFunction one() { return RationalFunction(); }

    /// Build from raw factor multisets; sorts and cancels.
    RationalFunction(AffineExponent prefactor, std::vector<LinearFactor> num,
                     std::vector<LinearFactor> den);

    const AffineExponent& prefactor() const { return prefactor_; }
    const std::vector<LinearFactor>& num() const { return num_; }
    const std::vector<LinearFactor>& den() const { return den_; }

    bool is_one() const { return prefactor_.is_zero() && num_.empty() && den_.empty(); }

    RationalFunction inverse() const;

    /// Substitute rational values for (some) symbols in every exponent and
    /// re-canonicalize: new cancellations may appear after substitution.
    RationalFunction substitute(const std::map<Symbol, Rational>& bindings) const;

    friend RationalFunction rf_mul(const RationalFunction& a, const RationalFunction& b);

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.prefactor_ == b.prefactor_ && a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator<(const RationalFunction& a, const RationalFunction& b) {
        if (!(a.prefactor_ == b.prefactor_)) return a.prefactor_ < b.prefactor_;
        if (a.num_ != b.num_)
            return std::lexicographical_compare(a.num_.begin(), a.num_.end(), b.num_.begin(),
                                                b.num_.end());
        return std::lexicographical_compare(a.den_.begin(), a.den_.end(), b.den_.begin(),
                                            b.den_.end());
    }

    std::string str() const;

private:
    void canonicalize();

    AffineExponent prefactor_;        // q^{prefactor_}
    std::vector<LinearFactor> num_;   // sorted
    std::vector<LinearFactor> den_;   // sorted, disjoint from num_
};

/// h*-weight expanded over fundamental weights: Σ_i omega[i]·ω_{i+1}.
/// The coefficient of ω_i equals the coroot pairing ⟨λ, α∨_i⟩.
struct Weight {
    std::vector<AffineExponent> omega;

    Weight() = default;
    explicit Weight(int l) : omega(static_cast<size_t>(l)) {}
    Weight(std::initializer_list<AffineExponent> cs) : omega(cs) {}

    int rank() const { return static_cast<int>(omega.size()); }

    Weight& operator+=(const Weight& o);
    Weight& operator-=(const Weight& o);
    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
    Weight operator-() const;

    friend bool operator==(const Weight& a, const Weight& b) { return a.omega == b.omega; }
    friend bool operator<(const Weight& a, const Weight& b) {
        return std::lexicographical_compare(a.omega.begin(), a.omega.end(), b.omega.begin(),
                                            b.omega.end());
    }

    Weight substitute(const std::map<Symbol, Rational>& bindings) const;
    std::string str() const;
};

/// The ℓ-weight (λ, Λ⁺): a weight plus one series component per node.
struct LWeight {
    Weight weight;
    std::vector<RationalFunction> plus;  // size = rank

    LWeight() = default;
    LWeight(Weight w, std::vector<RationalFunction> p) : weight(std::move(w)), plus(std::move(p)) {}

    static LWeight identity(int l) {
        return LWeight(Weight(l), std::vector<RationalFunction>(static_cast<size_t>(l)));
    }

    int rank() const { return weight.rank(); }

    LWeight inverse() const;
    LWeight substitute(const std::map<Symbol, Rational>& bindings) const;

    friend bool operator==(const LWeight& a, const LWeight& b) {
        return a.weight == b.weight && a.plus == b.plus;
    }
    friend bool operator<(const LWeight& a, const LWeight& b) {
        if (!(a.weight == b.weight)) return a.weight < b.weight;
        return std::lexicographical_compare(a.plus.begin(), a.plus.end(), b.plus.begin(),
                                            b.plus.end());
    }

    std::string str() const;
};

/// Componentwise product (λ+ξ, (Λ⁺_i Ξ⁺_i)); ranks must match.
LWeight lw_mul(const LWeight& a, const LWeight& b);

/// Substitution on every exponent; the group homomorphism onto specialized
/// ℓ-weights (canonical forms re-cancel after substitution).
LWeight lw_specialize(const LWeight& a, const std::map<Symbol, Rational>& bindings);

/// Shift by a weight: [ξ]-twist moves only the weight, the series are kept.
LWeight lw_shift(const LWeight& a, const Weight& xi);

}  // namespace qloop
