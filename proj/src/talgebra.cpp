// Truncated t-series arithmetic and the shift-monomial resummation.
#include "qloop/talgebra.hpp"

#include "qloop/catalog.hpp"
#include "qloop/weyl.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qloop {

namespace {

int total_degree(const std::vector<int>& exps) {
    return std::accumulate(exps.begin(), exps.end(), 0);
}

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

TSeries TSeries::zero(int vars, int order) {
    require(vars >= 1 && order >= 0, "TSeries: vars must be >= 1 and order >= 0");
    TSeries s;
    s.vars = vars;
    s.order = order;
    return s;
}

TSeries TSeries::one(int vars, int order) {
    TSeries s = zero(vars, order);
    s.c[std::vector<int>(static_cast<size_t>(vars), 0)] = 1;
    return s;
}

TSeries TSeries::monomial(int vars, int order, std::vector<int> exps, Rational coeff) {
    TSeries s = zero(vars, order);
    s.add_term(exps, coeff);
    return s;
}

void TSeries::add_term(const std::vector<int>& exps, const Rational& k) {
    require(static_cast<int>(exps.size()) == vars, "TSeries: exponent arity mismatch");
    for (int e : exps) require(e >= 0, "TSeries: negative exponent");
    if (k == 0 || total_degree(exps) > order) return;
    Rational& slot = c[exps];
    slot += k;
    if (slot == 0) c.erase(exps);
}

TSeries TSeries::geometric(int vars, int order, const std::vector<int>& step) {
    require(static_cast<int>(step.size()) == vars, "TSeries::geometric: arity mismatch");
    for (int e : step) require(e >= 0, "TSeries::geometric: negative step");
    require(total_degree(step) >= 1, "TSeries::geometric: step must have positive degree");
    TSeries s = zero(vars, order);
    std::vector<int> cur(static_cast<size_t>(vars), 0);
    while (total_degree(cur) <= order) {
        s.c[cur] = 1;
        for (int j = 0; j < vars; ++j) cur[static_cast<size_t>(j)] += step[static_cast<size_t>(j)];
    }
    return s;
}

TSeries operator+(const TSeries& a, const TSeries& b) {
    require(a.vars == b.vars, "TSeries: arity mismatch");
    TSeries s = TSeries::zero(a.vars, std::min(a.order, b.order));
    for (const auto& [e, k] : a.c) s.add_term(e, k);
    for (const auto& [e, k] : b.c) s.add_term(e, k);
    return s;
}

TSeries operator*(const TSeries& a, const TSeries& b) {
    require(a.vars == b.vars, "TSeries: arity mismatch");
    TSeries s = TSeries::zero(a.vars, std::min(a.order, b.order));
    std::vector<int> e(static_cast<size_t>(a.vars));
    for (const auto& [ea, ka] : a.c)
        for (const auto& [eb, kb] : b.c) {
            for (int j = 0; j < a.vars; ++j)
                e[static_cast<size_t>(j)] =
                    ea[static_cast<size_t>(j)] + eb[static_cast<size_t>(j)];
            s.add_term(e, ka * kb);
        }
    return s;
}

std::string TSeries::str() const {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, k] : c) {
        if (!first) os << " + ";
        first = false;
        const bool constant_term = (total_degree(e) == 0);
        bool wrote = false;
        if (k != 1 || constant_term) {
            os << rational_str(k);
            wrote = true;
        }
        for (int j = 0; j < vars; ++j) {
            const int p = e[static_cast<size_t>(j)];
            if (p == 0) continue;
            if (wrote) os << "*";
            wrote = true;
            os << "t" << (j + 1);
            if (p != 1) os << "^" << p;
        }
    }
    return os.str();
}

TMonomial TMonomial::inverse() const {
    TMonomial m(vars());
    for (int j = 0; j < vars(); ++j)
        m.exps[static_cast<size_t>(j)] = -exps[static_cast<size_t>(j)];
    return m;
}

TMonomial operator*(const TMonomial& a, const TMonomial& b) {
    require(a.vars() == b.vars(), "TMonomial: arity mismatch");
    TMonomial m(a.vars());
    for (int j = 0; j < a.vars(); ++j)
        m.exps[static_cast<size_t>(j)] =
            a.exps[static_cast<size_t>(j)] + b.exps[static_cast<size_t>(j)];
    return m;
}

TMonomial operator/(const TMonomial& a, const TMonomial& b) { return a * b.inverse(); }

bool TMonomial::is_integer_monomial() const {
    for (const auto& e : exps)
        if (!e.is_constant() || !is_integral(e.constant())) return false;
    return true;
}

std::vector<int> TMonomial::integer_exponents() const {
    std::vector<int> out;
    out.reserve(exps.size());
    for (const auto& e : exps) {
        if (!e.is_constant() || !is_integral(e.constant()))
            throw std::invalid_argument("TMonomial: exponent is not a plain integer: " + e.str());
        out.push_back(static_cast<int>(to_long_exact(e.constant())));
    }
    return out;
}

std::string TMonomial::str() const {
    std::ostringstream os;
    bool any = false;
    for (int j = 0; j < vars(); ++j) {
        const auto& e = exps[static_cast<size_t>(j)];
        if (e.is_zero()) continue;
        if (any) os << " ";
        any = true;
        os << "t" << (j + 1) << "^{" << e.str() << "}";
    }
    return any ? os.str() : "1";
}

TSeries NormalizedC::expand(int order) const {
    TSeries s = TSeries::one(vars, order);
    for (const auto& [num, den] : factors)
        s = s * TSeries::monomial(vars, order, num) * TSeries::geometric(vars, order, den);
    return s;
}

std::string NormalizedC::str() const {
    std::ostringstream os;
    auto mono = [&](const std::vector<int>& e) {
        std::ostringstream m;
        bool any = false;
        for (int j = 0; j < vars; ++j) {
            const int p = e[static_cast<size_t>(j)];
            if (p == 0) continue;
            any = true;
            m << "t" << (j + 1);
            if (p != 1) m << "^" << p;
        }
        return any ? m.str() : std::string("1");
    };
    bool first = true;
    for (const auto& [num, den] : factors) {
        if (!first) os << " * ";
        first = false;
        os << mono(num) << "/(1 - " << mono(den) << ")";
    }
    return os.str();
}

NormalizedC normalized_c(int l) {
    require(l == 1 || l == 2, "normalized_c: rank must be 1 or 2");
    NormalizedC c;
    c.vars = l;
    if (l == 1) {
        c.factors = {{{1}, {2}}};
    } else {
        c.factors = {{{1, 0}, {2, 0}}, {{1, 1}, {2, 2}}, {{0, 1}, {0, 2}}};
    }
    return c;
}

TMonomial shift_monomial(const std::vector<AffineExponent>& delta_omega) {
    const int l = static_cast<int>(delta_omega.size());
    const auto cinv = inverse_cartan(l);
    TMonomial m(l);
    for (int j = 0; j < l; ++j) {
        AffineExponent e;
        for (int i = 0; i < l; ++i)
            e += delta_omega[static_cast<size_t>(i)] * (Rational(-2) * cinv[static_cast<size_t>(i)][static_cast<size_t>(j)]);
        m.exps[static_cast<size_t>(j)] = e;
    }
    return m;
}

Resummation resummation_coefficient(int l, int order) {
    require(l == 1 || l == 2, "resummation_coefficient: rank must be 1 or 2");
    require(order >= 0, "resummation_coefficient: negative order");

    // δ(n′) with the n′ entries promoted to symbols np1, np2, ...
    const int nlen = static_cast<int>(nprime_embedding(l).size());
    std::vector<Symbol> np_syms;
    std::vector<AffineExponent> np;
    for (int k = 0; k < nlen; ++k) {
        np_syms.push_back("np" + std::to_string(k + 1));
        np.push_back(AffineExponent::sym(np_syms.back()));
    }
    const Weight delta = delta_shift_sym(l, np);
    const TMonomial full = shift_monomial(delta.omega);

    Resummation res(l, order);
    res.exponents = full.exps;

    // Split each exponent into its μ part (→ prefactor) and the rest.
    const auto mu = mu_tuple(l);
    std::vector<AffineExponent> rest(static_cast<size_t>(l));
    for (int j = 0; j < l; ++j) {
        const AffineExponent& e = full.exps[static_cast<size_t>(j)];
        AffineExponent mu_part;
        for (int a = 1; a <= l + 1; ++a)
            mu_part += e.coeff(mu_symbol(a)) * AffineExponent::sym(mu_symbol(a));
        res.prefactor.exps[static_cast<size_t>(j)] = mu_part;
        rest[static_cast<size_t>(j)] = e - mu_part;
    }

    // The μ-free parts must be affine in n′ with non-negative integer
    // coefficients and constants; then summing over the n′ box truncated at
    // the total t-degree is exhaustive once every n′ symbol carries a
    // positive coefficient in at least one exponent.
    for (const auto& sym : np_syms) {
        bool appears = false;
        for (int j = 0; j < l; ++j) {
            const Rational k = rest[static_cast<size_t>(j)].coeff(sym);
            if (!is_integral(k) || k < 0)
                throw std::logic_error("resummation_coefficient: non-summable exponent");
            if (k > 0) appears = true;
        }
        if (!appears)
            throw std::logic_error("resummation_coefficient: free direction in the shift sum");
    }
    for (int j = 0; j < l; ++j) {
        const Rational k0 = rest[static_cast<size_t>(j)].constant();
        if (!is_integral(k0) || k0 < 0)
            throw std::logic_error("resummation_coefficient: non-summable constant part");
    }

    // Enumerate n′ tuples; entries beyond `order` cannot keep the total
    // degree within bounds because every symbol has a positive coefficient.
    std::vector<int> tuple(static_cast<size_t>(nlen), 0);
    std::vector<int> exps(static_cast<size_t>(l));
    while (true) {
        std::map<Symbol, Rational> bind;
        for (int k = 0; k < nlen; ++k)
            bind[np_syms[static_cast<size_t>(k)]] = tuple[static_cast<size_t>(k)];
        int deg = 0;
        for (int j = 0; j < l; ++j) {
            exps[static_cast<size_t>(j)] =
                static_cast<int>(to_long_exact(rest[static_cast<size_t>(j)].evaluate(bind)));
            deg += exps[static_cast<size_t>(j)];
        }
        if (deg <= order) res.series.add_term(exps, 1);
        int pos = nlen - 1;
        while (pos >= 0 && tuple[static_cast<size_t>(pos)] == order) {
            tuple[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++tuple[static_cast<size_t>(pos)];
    }
    return res;
}

}  // namespace qloop
