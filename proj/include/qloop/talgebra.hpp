// Commutative t-algebra: formal power series in t_1..t_l with exact rational
// coefficients truncated at a total degree, and monomials t^e with symbolic
// (affine) exponents. The t_i stand for the commuting Cartan factors
// q^{α̃∨_i/2}, so a weight shift δ contributes the monomial with
// exponent e_j = −2 Σ_i ⟨δ, α∨_i⟩ C_ij (C = inverse Cartan matrix).
//
// The resummation computation sums those monomials over all shift tuples n′
// and splits the result into a symbolic prefactor (the μ-dependent part)
// and a μ-free truncated series.
#pragma once

#include "qloop/affine.hpp"

#include <map>
#include <string>
#include <vector>

namespace qloop {

/// Truncated multivariate power series: coefficients are exact for total
/// degree ≤ order; deeper terms are dropped on construction and multiply.
struct TSeries {
    int vars = 1;
    int order = 0;
    std::map<std::vector<int>, Rational> c;  // canonical: no zero coefficients

    static TSeries zero(int vars, int order);
    static TSeries one(int vars, int order);
    static TSeries monomial(int vars, int order, std::vector<int> exps, Rational coeff = 1);

    /// Add k·t^exps in place (dropped when the total degree exceeds order).
    void add_term(const std::vector<int>& exps, const Rational& k);

    /// Σ_{k≥0} t^{k·step}, i.e. 1/(1 − t^step); step needs total degree ≥ 1.
    static TSeries geometric(int vars, int order, const std::vector<int>& step);

    friend TSeries operator+(const TSeries& a, const TSeries& b);
    friend TSeries operator*(const TSeries& a, const TSeries& b);
    friend bool operator==(const TSeries& a, const TSeries& b) {
        return a.vars == b.vars && a.order == b.order && a.c == b.c;
    }

    std::string str() const;
};

/// Monomial Π_j t_j^{e_j} with affine symbolic exponents.
struct TMonomial {
    std::vector<AffineExponent> exps;

    explicit TMonomial(int vars) : exps(static_cast<size_t>(vars)) {}
    explicit TMonomial(std::vector<AffineExponent> e) : exps(std::move(e)) {}

    int vars() const { return static_cast<int>(exps.size()); }
    TMonomial inverse() const;
    friend TMonomial operator*(const TMonomial& a, const TMonomial& b);
    friend TMonomial operator/(const TMonomial& a, const TMonomial& b);
    friend bool operator==(const TMonomial& a, const TMonomial& b) { return a.exps == b.exps; }

    /// True when every exponent is a symbol-free integer.
    bool is_integer_monomial() const;
    /// Exponents as integers (throws unless is_integer_monomial()).
    std::vector<int> integer_exponents() const;

    std::string str() const;
};

/// Product of factors t^num / (1 − t^den): the closed form of the rank-l
/// normalization series C_l.
struct NormalizedC {
    int vars = 1;
    std::vector<std::pair<std::vector<int>, std::vector<int>>> factors;  // (num, den step)

    TSeries expand(int order) const;
    std::string str() const;
};

/// C_l: rank 1 gives t1/(1−t1²); rank 2 gives
/// t1/(1−t1²) · t1t2/(1−t1²t2²) · t2/(1−t2²).
NormalizedC normalized_c(int l);

/// The t-monomial attached to a weight shift δ (given over the fundamental
/// weights): exponent on t_j is −2 Σ_i δ_i C_ij, affine in δ's symbols.
TMonomial shift_monomial(const std::vector<AffineExponent>& delta_omega);

struct Resummation {
    TMonomial prefactor;                     // μ-dependent exponent part
    TSeries series;                          // μ-free part summed over n′
    std::vector<AffineExponent> exponents;   // full exponents in μ and n′ symbols
    Resummation(int vars, int order)
        : prefactor(vars), series(TSeries::zero(vars, order)) {}
};

/// Sum the shift monomials of δ(n′) over all tuples n′, truncated at the
/// given total t-degree: prefactor t^{μ-part} times a μ-free series.
/// Throws if the μ-free exponent parts are not non-negative integers —
/// that would make the sum non-summable in the t-adic sense.
Resummation resummation_coefficient(int l, int order);

}  // namespace qloop
