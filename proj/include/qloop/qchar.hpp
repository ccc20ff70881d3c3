// Truncated q-characters: finite multisets of ℓ-weights with multiplicities,
// complete up to a fixed depth below a reference highest weight. Depth is
// measured in the root lattice: highest − w = Σ_j d_j α_j with every d_j a
// non-negative integer, depth = Σ_j d_j.
//
// Products truncate coherently because depth is additive, so two characters
// complete to depth N multiply to a character complete to depth N.
#pragma once

#include "qloop/catalog.hpp"

#include <map>
#include <string>

namespace qloop {

struct QCharacter {
    int l = 1;
    int cutoff = 0;   // terms are complete for depth ≤ cutoff
    Weight highest;   // depth reference; not necessarily a term of the map
    std::map<LWeight, long long> terms;

    QCharacter(int l_, int cutoff_, Weight highest_)
        : l(l_), cutoff(cutoff_), highest(std::move(highest_)) {}
};

/// Root-lattice coordinates d with highest − w = Σ d_j α_j. Throws if the
/// difference is not constant (symbols must cancel) or d is not a
/// non-negative integer vector.
std::vector<long long> root_coordinates(const Weight& highest, const Weight& w);

/// Σ_j d_j of the root coordinates.
long long depth_of(const Weight& highest, const Weight& w);

/// Full (truncated) q-character of the rank-l evaluation module: all index
/// tuples m of depth ≤ cutoff, each with multiplicity 1.
QCharacter char_evaluation(int l, int cutoff, const ZetaPoint& at = {});

/// Truncated q-character of the a-th oscillator module.
QCharacter char_oscillator(int l, int a, int cutoff, const ZetaPoint& at = {},
                           const OscTableVariant& variant = {});

/// Product of characters; cutoff = min of the factors' cutoffs.
/// char_mul dispatches to the threaded kernel when built with OpenMP;
/// char_mul_serial is the always-available reference implementation.
QCharacter char_mul(const QCharacter& a, const QCharacter& b);
QCharacter char_mul_serial(const QCharacter& a, const QCharacter& b);

/// Shift every term (and the reference weight) by ξ; series parts unchanged.
QCharacter char_shift(const QCharacter& ch, const Weight& xi);

/// Drop terms deeper than new_cutoff (new_cutoff ≤ current cutoff).
QCharacter char_truncate(const QCharacter& ch, int new_cutoff);

/// Add all terms of `part` into `into` (same rank; depths must fit into
/// into.cutoff — a violation indicates a construction bug and throws).
void char_accumulate(QCharacter& into, const QCharacter& part);

bool char_equal(const QCharacter& a, const QCharacter& b);

/// Human-readable first differences, for diagnostics on mismatch.
std::string char_diff(const QCharacter& a, const QCharacter& b, std::size_t max_lines = 8);

struct GrothendieckOptions {
    OscTableVariant variant;   // oscillator table selection (default: corrected)
    int perturb_module = 0;    // 0 = none; else shift module a's ζ-offset…
    int perturb_delta = 0;     // …by this integer (negative-control hook)
};

struct GrothendieckResult {
    bool ok = false;
    int l = 0;
    int depth = 0;
    std::size_t lhs_terms = 0;
    std::size_t rhs_terms = 0;
    std::string mismatch;  // empty when ok
    double seconds = 0.0;
};

/// The truncated product identity: the product of the l+1 oscillator
/// characters at their specialization points equals the sum over shift
/// tuples n′ of the δ(n′)-shifted evaluation character, both complete to
/// the given depth. Exact symbolic comparison.
GrothendieckResult verify_grothendieck(int l, int depth, const GrothendieckOptions& opts = {});

}  // namespace qloop
