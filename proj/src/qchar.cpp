// Truncated q-character engine: construction of evaluation/oscillator
// characters from the closed-form tables, coherent truncated products
// (serial and threaded), shifts, and the truncated product identity check.
#include "qloop/qchar.hpp"

#include "qloop/weyl.hpp"

#include <chrono>
#include <sstream>
#include <stdexcept>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qloop {

namespace {

/// Visit every integer tuple in [0, bound]^k.
template <class F>
void for_each_box(int k, int bound, F&& f) {
    std::vector<int> idx(static_cast<size_t>(k), 0);
    while (true) {
        f(idx);
        int pos = k - 1;
        while (pos >= 0 && idx[pos] == bound) {
            idx[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++idx[pos];
    }
}

/// Depth if the drop is a valid non-negative integral root-lattice vector,
/// std::nullopt otherwise (used where invalid just means "outside the cone").
std::optional<long long> try_depth(const Weight& highest, const Weight& w) {
    if (highest.rank() != w.rank()) return std::nullopt;
    const int l = highest.rank();
    const auto c = inverse_cartan(l);
    std::vector<Rational> delta;
    delta.reserve(static_cast<size_t>(l));
    for (int i = 0; i < l; ++i) {
        AffineExponent d = highest.omega[i] - w.omega[i];
        if (!d.is_constant()) return std::nullopt;
        delta.push_back(d.constant());
    }
    long long total = 0;
    for (int j = 0; j < l; ++j) {
        Rational dj(0);
        for (int i = 0; i < l; ++i) dj += c[j][i] * delta[i];
        if (!is_integral(dj) || dj < 0) return std::nullopt;
        total += to_long_exact(dj);
    }
    return total;
}

}  // namespace

std::vector<long long> root_coordinates(const Weight& highest, const Weight& w) {
    if (highest.rank() != w.rank())
        throw std::invalid_argument("root_coordinates: rank mismatch");
    const int l = highest.rank();
    const auto c = inverse_cartan(l);
    std::vector<Rational> delta;
    delta.reserve(static_cast<size_t>(l));
    for (int i = 0; i < l; ++i) {
        AffineExponent d = highest.omega[i] - w.omega[i];
        if (!d.is_constant())
            throw std::invalid_argument(
                "root_coordinates: weight difference is not symbol-free: " + d.str());
        delta.push_back(d.constant());
    }
    std::vector<long long> out;
    out.reserve(static_cast<size_t>(l));
    for (int j = 0; j < l; ++j) {
        Rational dj(0);
        for (int i = 0; i < l; ++i) dj += c[j][i] * delta[i];
        if (!is_integral(dj) || dj < 0)
            throw std::invalid_argument(
                "root_coordinates: drop is not a non-negative integral root vector");
        out.push_back(to_long_exact(dj));
    }
    return out;
}

long long depth_of(const Weight& highest, const Weight& w) {
    long long total = 0;
    for (long long d : root_coordinates(highest, w)) total += d;
    return total;
}

QCharacter char_evaluation(int l, int cutoff, const ZetaPoint& at) {
    if (cutoff < 0) throw std::invalid_argument("char_evaluation: negative cutoff");
    const int k = l * (l + 1) / 2;
    const Weight top = eval_lweight(EvalIndex(l, {0, 0, 0}), at).weight;
    QCharacter ch(l, cutoff, top);
    // Depth is linear in the index tuple with positive integer coefficients
    // (regression-tested), so the [0, cutoff]^k box plus a depth filter
    // enumerates exactly the terms of depth ≤ cutoff.
    for_each_box(k, cutoff, [&](const std::vector<int>& idx) {
        std::array<int, 3> m{0, 0, 0};
        for (int i = 0; i < k; ++i) m[static_cast<size_t>(i)] = idx[static_cast<size_t>(i)];
        LWeight lw = eval_lweight(EvalIndex(l, m), at);
        const auto d = try_depth(top, lw.weight);
        if (!d)
            throw std::logic_error("char_evaluation: table weight outside the root cone");
        if (*d <= cutoff) ch.terms[lw] += 1;
    });
    return ch;
}

QCharacter char_oscillator(int l, int a, int cutoff, const ZetaPoint& at,
                           const OscTableVariant& variant) {
    if (cutoff < 0) throw std::invalid_argument("char_oscillator: negative cutoff");
    const int k = l;
    const Weight top = osc_lweight(OscIndex(l, a, {0, 0}), at, variant).weight;
    QCharacter ch(l, cutoff, top);
    for_each_box(k, cutoff, [&](const std::vector<int>& idx) {
        std::array<int, 2> n{0, 0};
        for (int i = 0; i < k; ++i) n[static_cast<size_t>(i)] = idx[static_cast<size_t>(i)];
        LWeight lw = osc_lweight(OscIndex(l, a, n), at, variant);
        const auto d = try_depth(top, lw.weight);
        if (!d)
            throw std::logic_error("char_oscillator: table weight outside the root cone");
        if (*d <= cutoff) ch.terms[lw] += 1;
    });
    return ch;
}

namespace {

struct FlatTerm {
    const LWeight* lw;
    long long mult;
    long long depth;
};

std::vector<FlatTerm> flatten(const QCharacter& ch) {
    std::vector<FlatTerm> out;
    out.reserve(ch.terms.size());
    for (const auto& [lw, mult] : ch.terms)
        out.push_back({&lw, mult, depth_of(ch.highest, lw.weight)});
    return out;
}

QCharacter char_mul_impl(const QCharacter& a, const QCharacter& b, bool parallel) {
    if (a.l != b.l) throw std::invalid_argument("char_mul: rank mismatch");
    const int cutoff = std::min(a.cutoff, b.cutoff);
    QCharacter out(a.l, cutoff, a.highest + b.highest);

    const auto ta = flatten(a);
    const auto tb = flatten(b);

#ifdef _OPENMP
    if (parallel) {
        const int n = static_cast<int>(ta.size());
#pragma omp parallel
        {
            std::map<LWeight, long long> local;
#pragma omp for schedule(dynamic, 1) nowait
            for (int i = 0; i < n; ++i) {
                for (const auto& y : tb) {
                    if (ta[static_cast<size_t>(i)].depth + y.depth > cutoff) continue;
                    local[lw_mul(*ta[static_cast<size_t>(i)].lw, *y.lw)] +=
                        ta[static_cast<size_t>(i)].mult * y.mult;
                }
            }
#pragma omp critical(qchar_merge)
            for (const auto& [lw, m] : local) out.terms[lw] += m;
        }
        return out;
    }
#else
    (void)parallel;
#endif

    for (const auto& x : ta)
        for (const auto& y : tb) {
            if (x.depth + y.depth > cutoff) continue;
            out.terms[lw_mul(*x.lw, *y.lw)] += x.mult * y.mult;
        }
    return out;
}

}  // namespace

QCharacter char_mul(const QCharacter& a, const QCharacter& b) {
    return char_mul_impl(a, b, /*parallel=*/true);
}

QCharacter char_mul_serial(const QCharacter& a, const QCharacter& b) {
    return char_mul_impl(a, b, /*parallel=*/false);
}

QCharacter char_shift(const QCharacter& ch, const Weight& xi) {
    QCharacter out(ch.l, ch.cutoff, ch.highest + xi);
    for (const auto& [lw, mult] : ch.terms) out.terms[lw_shift(lw, xi)] += mult;
    return out;
}

QCharacter char_truncate(const QCharacter& ch, int new_cutoff) {
    if (new_cutoff > ch.cutoff)
        throw std::invalid_argument("char_truncate: cannot extend a truncated character");
    QCharacter out(ch.l, new_cutoff, ch.highest);
    for (const auto& [lw, mult] : ch.terms)
        if (depth_of(ch.highest, lw.weight) <= new_cutoff) out.terms[lw] += mult;
    return out;
}

void char_accumulate(QCharacter& into, const QCharacter& part) {
    if (into.l != part.l) throw std::invalid_argument("char_accumulate: rank mismatch");
    for (const auto& [lw, mult] : part.terms) {
        if (depth_of(into.highest, lw.weight) > into.cutoff)
            throw std::logic_error("char_accumulate: term deeper than the target cutoff");
        into.terms[lw] += mult;
    }
}

bool char_equal(const QCharacter& a, const QCharacter& b) {
    return a.l == b.l && a.cutoff == b.cutoff && a.highest == b.highest && a.terms == b.terms;
}

std::string char_diff(const QCharacter& a, const QCharacter& b, std::size_t max_lines) {
    std::ostringstream os;
    std::size_t lines = 0;
    auto emit = [&](const std::string& s) {
        if (lines < max_lines) os << s << '\n';
        ++lines;
    };
    if (a.l != b.l) emit("rank differs");
    if (a.cutoff != b.cutoff) emit("cutoff differs");
    if (!(a.highest == b.highest))
        emit("reference weight differs: " + a.highest.str() + " vs " + b.highest.str());
    auto ia = a.terms.begin();
    auto ib = b.terms.begin();
    while (ia != a.terms.end() || ib != b.terms.end()) {
        if (ib == b.terms.end() || (ia != a.terms.end() && ia->first < ib->first)) {
            emit("left only  x" + std::to_string(ia->second) + ": " + ia->first.str());
            ++ia;
        } else if (ia == a.terms.end() || ib->first < ia->first) {
            emit("right only x" + std::to_string(ib->second) + ": " + ib->first.str());
            ++ib;
        } else {
            if (ia->second != ib->second)
                emit("multiplicity " + std::to_string(ia->second) + " vs " +
                     std::to_string(ib->second) + ": " + ia->first.str());
            ++ia;
            ++ib;
        }
    }
    if (lines > max_lines)
        os << "... (" << (lines - max_lines) << " further differences)\n";
    return os.str();
}

GrothendieckResult verify_grothendieck(int l, int depth, const GrothendieckOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    if (l != 1 && l != 2)
        throw std::invalid_argument("verify_grothendieck: rank must be 1 or 2");
    if (depth < 0) throw std::invalid_argument("verify_grothendieck: negative depth");

    const auto pts = opts.perturb_module != 0
                         ? specialization_points_perturbed(l, opts.perturb_module,
                                                           opts.perturb_delta)
                         : specialization_points(l);

    // Left side: product of the l+1 oscillator characters at their points.
    QCharacter lhs = char_oscillator(l, 1, depth, pts[0], opts.variant);
    for (int a = 2; a <= l + 1; ++a)
        lhs = char_mul(lhs, char_oscillator(l, a, depth, pts[static_cast<size_t>(a - 1)],
                                            opts.variant));

    // Right side: Σ over shift tuples n′ of the δ(n′)-shifted evaluation
    // character, each complete to the remaining depth.
    const int nlen = static_cast<int>(nprime_embedding(l).size());
    const Weight delta0 = delta_shift(l, std::vector<int>(static_cast<size_t>(nlen), 0));
    const Weight rhs_top = eval_lweight(EvalIndex(l, {0, 0, 0})).weight + delta0;
    QCharacter rhs(l, depth, rhs_top);
    for_each_box(nlen, depth, [&](const std::vector<int>& np) {
        const Weight dw = delta_shift(l, np);
        const auto d = try_depth(delta0, dw);
        if (!d) throw std::logic_error("verify_grothendieck: shift outside the root cone");
        if (*d > depth) return;
        const QCharacter block =
            char_shift(char_evaluation(l, depth - static_cast<int>(*d)), dw);
        char_accumulate(rhs, block);
    });

    GrothendieckResult res;
    res.l = l;
    res.depth = depth;
    res.lhs_terms = lhs.terms.size();
    res.rhs_terms = rhs.terms.size();
    res.ok = char_equal(lhs, rhs);
    if (!res.ok) res.mismatch = char_diff(lhs, rhs);
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

}  // namespace qloop
