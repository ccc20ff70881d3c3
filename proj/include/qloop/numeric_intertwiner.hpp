// Numeric intertwiners on aux ⊗ site: the matrix X solving
//
//   [φ(e_i) ⊗ ψ(q^{α∨_i}) + I ⊗ ψ(e_i)] · X
//       = X · [φ(e_i) ⊗ I + φ(q^{α∨_i}) ⊗ ψ(e_i)],   i = 0, 1,
//
// with α∨₀ acting as −α∨₁. X conserves the total integer weight
// (−2·aux level + site weight), so the unknowns are the weight-diagonal
// entries; equations are kept only where every term lies strictly inside
// the truncation, which makes the linear system an exact restriction of
// the untruncated one. A one-dimensional null space then forces the
// solution to be the restriction of the true intertwiner; the solver
// asserts that rank profile from the scaled singular spectrum.
#pragma once

#include "qloop/numeric_rep.hpp"

namespace qloop {

struct IntertwinerResult {
    Eigen::MatrixXcd X;        // (aux.dim * site.dim) square; basis a*site.dim + j
    double sigma_null = 0.0;   // smallest σ / largest σ (should be ~0)
    double sigma_next = 0.0;   // second smallest σ / largest σ (should be O(1))
    double residual = 0.0;     // relative interior residual of the e-equations
    double f_residual = 0.0;   // same for the f-equations when both reps have f's
    bool checked_f = false;
};

/// Solve for X (top entry normalized to 1). Throws when the scaled spectrum
/// does not show exactly one null direction within the configured
/// thresholds, or the top-weight entry of the solution vanishes.
IntertwinerResult solve_intertwiner(const BorelRep& aux, const BorelRep& site,
                                    const NumericParams& p);

/// Kronecker product helper (a ⊗ b).
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace qloop
