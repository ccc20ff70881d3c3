// Finite Weyl group of sl_{l+1} acting on (l+1)-tuples, the ρ-shifted
// (affine) action, and the Cartan matrix with its exact rational inverse.
//
// Tuples are indexed 0-based; a Weyl element stores the permutation
// w as perm[i] = w(i) and acts on tuples from the left:
// (w·τ)_a = τ_{w⁻¹(a)}. The shifted action is w·μ = w(μ+ρ) − ρ.
#pragma once

#include "qloop/affine.hpp"

#include <vector>

namespace qloop {

struct WeylElement {
    std::vector<int> perm;  // perm[i] = w(i)
    int sign = 1;           // (−1)^{#inversions}

    explicit WeylElement(std::vector<int> p);
    int degree() const { return static_cast<int>(perm.size()); }
    std::vector<int> inverse_perm() const;
};

/// All (l+1)! elements, permutations in lexicographic order.
std::vector<WeylElement> weyl_group(int l);

/// ρ in the ε-basis, computed as the half-sum of the positive roots
/// ε_i − ε_j (i < j). l = 1: (1/2, −1/2); l = 2: (1, 0, −1).
std::vector<Rational> rho(int l);

/// Closed form ρ_a = (l + 2 − 2a)/2, a = 1..l+1 — cross-checked against
/// the half-sum in the tests.
std::vector<Rational> rho_closed_form(int l);

/// Cartan matrix A of sl_{l+1} (size l×l) and its exact inverse
/// C_ij = min(i,j)·(l + 1 − max(i,j))/(l + 1).
std::vector<std::vector<Rational>> cartan_matrix(int l);
std::vector<std::vector<Rational>> inverse_cartan(int l);

/// Plain (unshifted) left action on a tuple of affine expressions.
std::vector<AffineExponent> weyl_apply(const WeylElement& w,
                                       const std::vector<AffineExponent>& tau);

/// Shifted action w·μ = w(μ+ρ) − ρ on an (l+1)-tuple.
std::vector<AffineExponent> weyl_affine(const WeylElement& w,
                                        const std::vector<AffineExponent>& mu, int l);

}  // namespace qloop
