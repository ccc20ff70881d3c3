// AffineExponent: exact affine-linear expressions c0 + Σ c_s · s over named
// symbols (mu1..mu3, promoted index symbols, twist symbols) with rational
// coefficients. These are the exponents of q everywhere in the calculus.
//
// Values are canonical (no zero coefficients stored), totally ordered and
// immutable in spirit: every operation returns a fresh value, so they are
// safe to share across threads.
#pragma once

#include "qloop/rational.hpp"

#include <map>
#include <optional>
#include <string>

namespace qloop {

/// Parameter symbols are interned as plain strings; ordering is the string
/// order, which keeps every canonical form machine-independent.
using Symbol = std::string;

class AffineExponent {
public:
    AffineExponent() : constant_(0) {}
    AffineExponent(int c) : constant_(c) {}                  // NOLINT: implicit by design
    AffineExponent(const Rational& c) : constant_(c) {}      // NOLINT: implicit by design

    /// The expression consisting of a single symbol with coefficient 1.
    static AffineExponent sym(const Symbol& s) {
        AffineExponent e;
        e.coeffs_[s] = 1;
        return e;
    }

    const Rational& constant() const { return constant_; }
    const std::map<Symbol, Rational>& coeffs() const { return coeffs_; }

    /// Coefficient of a symbol (0 when absent).
    Rational coeff(const Symbol& s) const {
        auto it = coeffs_.find(s);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }

    bool is_constant() const { return coeffs_.empty(); }
    bool is_zero() const { return coeffs_.empty() && constant_ == 0; }

    AffineExponent operator-() const {
        AffineExponent r;
        r.constant_ = -constant_;
        for (const auto& [s, c] : coeffs_) r.coeffs_[s] = -c;
        return r;
    }

    AffineExponent& operator+=(const AffineExponent& o) {
        constant_ += o.constant_;
        for (const auto& [s, c] : o.coeffs_) {
            Rational& mine = coeffs_[s];
            mine += c;
            if (mine == 0) coeffs_.erase(s);
        }
        return *this;
    }
    AffineExponent& operator-=(const AffineExponent& o) { return *this += -o; }

    AffineExponent& operator*=(const Rational& k) {
        if (k == 0) {
            constant_ = 0;
            coeffs_.clear();
            return *this;
        }
        constant_ *= k;
        for (auto& [s, c] : coeffs_) c *= k;
        return *this;
    }

    friend AffineExponent operator+(AffineExponent a, const AffineExponent& b) { return a += b; }
    friend AffineExponent operator-(AffineExponent a, const AffineExponent& b) { return a -= b; }
    friend AffineExponent operator*(AffineExponent a, const Rational& k) { return a *= k; }
    friend AffineExponent operator*(const Rational& k, AffineExponent a) { return a *= k; }

    friend bool operator==(const AffineExponent& a, const AffineExponent& b) {
        return a.constant_ == b.constant_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const AffineExponent& a, const AffineExponent& b) { return !(a == b); }

    /// Total order for canonical containers: symbol maps first, constant last.
    friend bool operator<(const AffineExponent& a, const AffineExponent& b) {
        if (a.coeffs_ != b.coeffs_)
            return std::lexicographical_compare(a.coeffs_.begin(), a.coeffs_.end(),
                                                b.coeffs_.begin(), b.coeffs_.end());
        return a.constant_ < b.constant_;
    }

    /// Replace the bound symbols by rational values; unbound symbols remain.
    AffineExponent substitute(const std::map<Symbol, Rational>& bindings) const;

    /// Evaluate with every symbol bound; throws if a symbol is unbound.
    Rational evaluate(const std::map<Symbol, Rational>& bindings) const;

    /// Canonical rendering, e.g. "2*mu1 - 2*m12 + 2" or "0".
    std::string str() const;

private:
    Rational constant_;
    std::map<Symbol, Rational> coeffs_;  // canonical: no zero coefficients
};

}  // namespace qloop
