// Parameters of the finite-matrix harness: the deformation parameter q
// (stored through its logarithm so complex powers are single-valued), the
// loop gradings s0/s1, the trace twist, truncation cutoffs and solver
// thresholds. Loadable from / storable to a JSON config file.
#pragma once

#include <complex>
#include <string>

namespace qloop {

using cplx = std::complex<double>;

struct NumericParams {
    // q = exp(log_q). Keeping the logarithm makes q^x = exp(x·log_q)
    // unambiguous for complex x (no branch choices anywhere downstream).
    cplx log_q{0.31, 0.17};

    // Loop gradings: e0 scales with ζ^{s0}, e1 with ζ^{s1}; s = s0 + s1.
    double s0 = 1.0;
    double s1 = 1.0;

    // Trace twist τ: traces weight an auxiliary vector of Cartan weight w
    // by q^{τ·w}. Re(τ·log_q) > 0 makes the level sums geometric, but the
    // margin must also cover the monodromy entries, which grow along the
    // tower at a rate that increases with the chain length: the effective
    // per-level decay is roughly 2·Re(τ·log_q) − 2n·Re(log_q) on an n-site
    // chain. The default is sized for chains up to four sites, where it
    // pushes truncation tails at the default cutoffs to machine precision.
    cplx twist{5.5, 0.4};

    // Truncation: oscillator chains keep fock_cutoff levels, Verma towers
    // verma_cutoff levels.
    int fock_cutoff = 24;
    int verma_cutoff = 40;

    // Intertwiner solve: the scaled spectrum must show exactly one null
    // direction — smallest σ/σ_max below null_tol, next one above
    // rank_margin.
    double null_tol = 1e-10;
    double rank_margin = 1e-6;

    double s() const { return s0 + s1; }
    cplx q() const { return std::exp(log_q); }
    /// q^x for complex x, through the stored logarithm.
    cplx qpow(const cplx& x) const { return std::exp(x * log_q); }

    /// Throws std::invalid_argument when the configuration is unusable:
    /// |q| = 1 (root-of-unity danger zone), divergent trace twist,
    /// non-positive gradings, or cutoffs too small to leave an interior.
    void validate() const;

    /// JSON round-trip for --config files; unknown keys are rejected.
    static NumericParams from_json_file(const std::string& path);
    void to_json_file(const std::string& path) const;
    std::string to_json_string() const;
};

}  // namespace qloop
