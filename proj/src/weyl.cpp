// Weyl-group and Cartan utilities.
#include "qloop/weyl.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qloop {

WeylElement::WeylElement(std::vector<int> p) : perm(std::move(p)) {
    const int n = static_cast<int>(perm.size());
    std::vector<bool> seen(n, false);
    for (int v : perm) {
        if (v < 0 || v >= n || seen[v])
            throw std::invalid_argument("WeylElement: not a permutation");
        seen[v] = true;
    }
    int inversions = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (perm[i] > perm[j]) ++inversions;
    sign = (inversions % 2 == 0) ? 1 : -1;
}

std::vector<int> WeylElement::inverse_perm() const {
    std::vector<int> inv(perm.size());
    for (int i = 0; i < static_cast<int>(perm.size()); ++i) inv[perm[i]] = i;
    return inv;
}

std::vector<WeylElement> weyl_group(int l) {
    if (l < 1) throw std::invalid_argument("weyl_group: rank must be positive");
    std::vector<int> p(l + 1);
    std::iota(p.begin(), p.end(), 0);
    std::vector<WeylElement> out;
    do {
        out.emplace_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::vector<Rational> rho(int l) {
    if (l < 1) throw std::invalid_argument("rho: rank must be positive");
    std::vector<Rational> r(l + 1, Rational(0));
    for (int i = 0; i < l + 1; ++i)
        for (int j = i + 1; j < l + 1; ++j) {
            r[i] += Rational(1, 2);
            r[j] -= Rational(1, 2);
        }
    return r;
}

std::vector<Rational> rho_closed_form(int l) {
    std::vector<Rational> r;
    for (int a = 1; a <= l + 1; ++a) r.emplace_back(Rational(l + 2 - 2 * a, 2));
    return r;
}

std::vector<std::vector<Rational>> cartan_matrix(int l) {
    if (l < 1) throw std::invalid_argument("cartan_matrix: rank must be positive");
    std::vector<std::vector<Rational>> a(l, std::vector<Rational>(l, Rational(0)));
    for (int i = 0; i < l; ++i) {
        a[i][i] = 2;
        if (i > 0) a[i][i - 1] = -1;
        if (i + 1 < l) a[i][i + 1] = -1;
    }
    return a;
}

std::vector<std::vector<Rational>> inverse_cartan(int l) {
    if (l < 1) throw std::invalid_argument("inverse_cartan: rank must be positive");
    std::vector<std::vector<Rational>> c(l, std::vector<Rational>(l, Rational(0)));
    for (int i = 1; i <= l; ++i)
        for (int j = 1; j <= l; ++j)
            c[i - 1][j - 1] = Rational(std::min(i, j) * (l + 1 - std::max(i, j)), l + 1);
    return c;
}

std::vector<AffineExponent> weyl_apply(const WeylElement& w,
                                       const std::vector<AffineExponent>& tau) {
    if (tau.size() != w.perm.size())
        throw std::invalid_argument("weyl_apply: tuple length mismatch");
    const auto inv = w.inverse_perm();
    std::vector<AffineExponent> out;
    out.reserve(tau.size());
    for (size_t a = 0; a < tau.size(); ++a) out.push_back(tau[inv[a]]);
    return out;
}

std::vector<AffineExponent> weyl_affine(const WeylElement& w,
                                        const std::vector<AffineExponent>& mu, int l) {
    if (static_cast<int>(mu.size()) != l + 1 || w.degree() != l + 1)
        throw std::invalid_argument("weyl_affine: tuple length mismatch");
    const auto r = rho(l);
    std::vector<AffineExponent> shifted;
    shifted.reserve(mu.size());
    for (size_t a = 0; a < mu.size(); ++a) shifted.push_back(mu[a] + r[a]);
    auto moved = weyl_apply(w, shifted);
    for (size_t a = 0; a < moved.size(); ++a) moved[a] -= r[a];
    return moved;
}

}  // namespace qloop
