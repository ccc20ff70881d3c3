// Finite-matrix realizations of the rank-1 Borel representations entering
// the transfer/Q-operator constructions: the two q-oscillator towers, the
// Verma tower, its integral finite quotient, and the 2-state site module.
//
// Conventions (basis vectors indexed by the tower level):
//   - the α∨₁ eigenvalue of a level-m vector is stored in alpha_weight;
//   - loop generators carry spectral powers: e0 ~ ζ^{s0}, e1 ~ ζ^{s1},
//     f0 ~ ζ^{-s0}, f1 ~ ζ^{-s1}; ζ is carried as log ζ so complex powers
//     are single-valued;
//   - oscillator towers are Borel-only (no f's); Verma, the finite quotient
//     and the site carry the full action.
#pragma once

#include "qloop/numeric_params.hpp"

#include <Eigen/Dense>

#include <optional>

namespace qloop {

/// Closed-form description of a tower's matrix entries, recorded by the
/// builders. The intertwiner solver re-derives entries from it in extended
/// precision: truncated-tower recursions amplify rounding geometrically with
/// the level, so double-precision matrices alone cannot deliver deep entries
/// at full relative accuracy.
struct TowerSpec {
    int kind = 0;  // 0 = sl2 tower (Verma/finite/site), 1 or 2 = oscillator
    cplx mu1{0.0, 0.0}, mu2{0.0, 0.0};  // sl2 towers only
    cplx log_zeta{0.0, 0.0};
};

struct BorelRep {
    int dim = 0;
    bool has_f = false;
    bool truncated = false;  // true when the matrices are a cutoff of an
                             // infinite tower (relations then hold only on
                             // interior levels)
    cplx log_zeta{0.0, 0.0};
    std::optional<TowerSpec> spec;

    Eigen::MatrixXcd e0, e1;
    Eigen::MatrixXcd f0, f1;        // 0x0 unless has_f
    Eigen::VectorXcd alpha_weight;  // α∨₁ eigenvalue per basis vector
    Eigen::VectorXi level;          // tower level per basis vector

    /// Diagonal matrix q^{ν·α∨₁}.
    Eigen::MatrixXcd cartan_power(const NumericParams& p, const cplx& nu) const;
};

/// q-number [x] = (q^x − q^{−x})/(q − q^{−1}).
cplx qnum(const NumericParams& p, const cplx& x);

/// Oscillator towers: which = 1 or 2, cutoff levels 0..cutoff−1.
BorelRep oscillator_rep(const NumericParams& p, int which, const cplx& log_zeta, int cutoff);

/// Verma tower with highest weight μ = (mu1, mu2), λ = mu1 − mu2.
BorelRep verma_rep(const NumericParams& p, const cplx& mu1, const cplx& mu2,
                   const cplx& log_zeta, int cutoff);

/// Finite quotient of the Verma tower: requires mu1 − mu2 ≈ dim − 1
/// (a non-negative integer); relations then hold exactly on all of it.
BorelRep finite_rep(const NumericParams& p, const cplx& mu1, const cplx& mu2,
                    const cplx& log_zeta, int dim);

/// The 2-state site module: the finite quotient at μ = (1, 0), ζ = 1.
BorelRep site_rep(const NumericParams& p);

struct RelationResiduals {
    double cartan = 0.0;   // q^{α∨₁} e_i q^{−α∨₁} = q^{∓2} e_i
    double serre = 0.0;    // degree-4 loop Serre relations, interior levels
    double ef = 0.0;       // [e_i, f_i] Cartan relations (full reps only)
    double max() const { return std::max(cartan, std::max(serre, ef)); }
};

/// Max relative residuals of the defining relations. For truncated towers
/// only interior levels count (rows and columns far enough from the cutoff
/// that no product path touches it).
RelationResiduals relation_residuals(const BorelRep& rep, const NumericParams& p);

}  // namespace qloop
