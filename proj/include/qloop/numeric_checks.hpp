// The finite-matrix experiment suite for the rank-1 factorization
//
//   T(ζ) ∝ q^{-(λ+1)(W-2τ)/2} · C₁(W)⁻¹ · Q₁(ζ q^{c₁/s}) · Q₂(ζ q^{c₂/s}),
//
// with c = (2μ₁+1, 2μ₂-1): builds transfer and Q-operators on spin chains
// from Verma/oscillator auxiliary towers, checks representation relations,
// intertwiner quality, mutual commutativity, the factorization identity
// (scalar fit + eigenvalue matching), and the supplementary experiments
// (finite-quotient resolution, cutoff stability, a falsified-specialization
// control). Randomized sweeps draw (μ, ζ) deterministically per seed so
// parallel and serial runs produce identical results.
#pragma once

#include "qloop/numeric_ops.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qloop {

struct NumericOptions {
    int sites = 2;          // chain length n (operators are 2^n × 2^n)
    int n_seeds = 3;        // independent μ draws
    int n_zeta = 5;         // spectral points per seed
    std::uint64_t base_seed = 1729;
    bool parallel = true;   // sweep cases with OpenMP when available

    bool with_bgg = true;        // finite quotient vs. Verma pair, once
    bool with_stability = true;  // cutoff robustness, once
    bool with_negative = true;   // falsified specialization must fail, once

    // Acceptance tolerances (relative throughout).
    double tol_relation = 1e-12;     // defining relations, interior levels
    double tol_intertwiner = 1e-11;  // intertwiner equation residuals
    double tol_commutator = 1e-10;   // pairwise [T, Q_a] commutators
    double tol_ratio = 1e-8;         // factorization, Frobenius mismatch
    double tol_eigen = 1e-7;         // factorization, eigenvalue matching
    double tol_bgg = 1e-8;           // finite quotient two-term fit
    double tol_stability = 1e-9;     // operator drift under larger cutoffs
    double negative_margin = 1e-4;   // falsified run must mismatch at least this
};

struct CaseMetrics {
    int seed_index = 0;
    int zeta_index = 0;
    std::uint64_t seed = 0;
    cplx mu1, mu2, log_zeta;

    double relation_residual = 0.0;    // worst over site/Verma/oscillators
    double intertwiner_residual = 0.0; // worst e/f equation residual
    double sigma_null_max = 0.0;       // worst (largest) null-σ ratio
    double sigma_next_min = 0.0;       // worst (smallest) next-σ ratio
    double tail_max = 0.0;             // worst trace tail estimate
    double commutator_max = 0.0;       // worst pairwise commutator
    cplx kappa;                        // fitted factorization scalar
    double ratio_spread = 0.0;         // ‖T − κ·RHS‖_F / (|κ|·‖RHS‖_F)
    double eigen_match = 0.0;          // matched eigenvalue mismatch

    bool ok = false;
    std::string detail;  // populated on failure
};

struct NumericOutcome {
    bool ok = false;
    std::vector<CaseMetrics> cases;

    // Aggregates over the sweep.
    double max_relation = 0.0;
    double max_intertwiner = 0.0;
    double max_commutator = 0.0;
    double max_ratio_spread = 0.0;
    double max_eigen_match = 0.0;
    double max_tail = 0.0;
    double kappa_spread = 0.0;  // per-seed spread of κ across ζ (informational)

    bool bgg_ran = false;
    bool bgg_ok = false;
    bool bgg_perturbed = false;  // Verma ops averaged at μ ± ε (rank fallback)
    double bgg_residual = 0.0;
    cplx bgg_x, bgg_y;

    bool stability_ran = false;
    bool stability_ok = false;
    double stability = 0.0;

    bool negative_ran = false;
    bool negative_ok = false;
    double negative_spread = 0.0;

    double seconds = 0.0;
    std::string detail;  // populated on failure
};

/// Deterministic case inputs for one sweep (exposed for tests).
struct CaseInput {
    int seed_index = 0;
    int zeta_index = 0;
    std::uint64_t seed = 0;
    cplx mu1, mu2, log_zeta;
};
std::vector<CaseInput> numeric_case_inputs(const NumericOptions& opt);

/// Evaluate a single (μ, ζ) case end to end.
CaseMetrics evaluate_numeric_case(const NumericParams& p, const NumericOptions& opt,
                                  const CaseInput& input);

/// The full randomized sweep plus the one-off experiments.
NumericOutcome run_numeric_checks(const NumericParams& p, const NumericOptions& opt);

/// Serial reference: identical results with the parallel sweep disabled.
NumericOutcome run_numeric_checks_serial(const NumericParams& p, NumericOptions opt);

}  // namespace qloop
