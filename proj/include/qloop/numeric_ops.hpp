// From intertwiners to operators on the spin chain: monodromy matrices over
// n sites, twisted auxiliary traces with a tail estimate, the resulting
// transfer and Q-operators, and the diagonal chain factors entering the
// factorization identity.
//
// Index conventions: the monodromy acts on aux ⊗ site_1 ⊗ ... ⊗ site_n with
// the flat index (((a·S + u_1)·S + u_2)·S + ...)·S + u_n, i.e. site 1 is the
// most significant chain digit. Chain operators use the same chain index.
#pragma once

#include "qloop/numeric_intertwiner.hpp"

namespace qloop {

/// X^{(aux, n)} ⋯ X^{(aux, 1)}: apply one X per site, contracting the aux
/// index through. X is the (aux.dim·S)² intertwiner; the result is
/// (aux.dim·S^n)².
Eigen::MatrixXcd monodromy(const Eigen::MatrixXcd& x, int aux_dim, int site_dim, int sites);

struct TwistedTrace {
    Eigen::MatrixXcd op;        // S^n × S^n chain operator
    double tail = 0.0;          // relative estimate of the dropped level sum
    int levels_summed = 0;      // exact levels included in the trace
};

/// Σ_v q^{twist·weight(v)} M[(v,c),(v,c′)] over auxiliary levels, keeping
/// only levels whose monodromy entries are unaffected by the cutoff
/// (excursions of ±1 per site). The tail is estimated from the decay of
/// the last included level contributions.
TwistedTrace twisted_trace(const Eigen::MatrixXcd& m, const BorelRep& aux, int site_dim,
                           int sites, const NumericParams& p);

struct ChainOperator {
    Eigen::MatrixXcd op;
    IntertwinerResult x;
    TwistedTrace trace;
};

/// Full pipeline for one auxiliary representation: solve the intertwiner
/// against the site, build the n-site monodromy, take the twisted trace.
ChainOperator build_chain_operator(const BorelRep& aux, const BorelRep& site, int sites,
                                   const NumericParams& p);

/// Chain weights: α∨₁ eigenvalue per chain basis state (integer diagonal).
Eigen::VectorXd chain_weights(int sites);

/// Diagonal operator q^{(W − 2τ)/2} / (1 − q^{W − 2τ}) — the operator form
/// of the rank-1 normalization series at t = q^{(W − 2τ)/2}.
Eigen::MatrixXcd c1_chain_operator(const NumericParams& p, int sites);

/// Diagonal operator q^{x·(W − 2τ)/2} for a complex coefficient x.
Eigen::MatrixXcd chain_weight_power(const NumericParams& p, int sites, const cplx& x);

}  // namespace qloop
