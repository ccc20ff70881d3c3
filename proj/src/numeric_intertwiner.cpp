// Weight-block reduced intertwiner solve: a rank-revealing SVD certifies the
// one-dimensional null space on the shallow head block, and the solution is
// extended level by level. Towers built from a recorded closed form are
// re-solved in extended precision, because the level recursion amplifies
// rounding geometrically and double precision cannot hold the deep entries
// to full relative accuracy.
#include "qloop/numeric_intertwiner.hpp"

#include <Eigen/SVD>

#include <boost/multiprecision/cpp_complex.hpp>

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

namespace qloop {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

namespace {

/// The conserved integer key of a tensor basis vector: −2·(aux level) +
/// (site α∨₁ weight). Site weights are integers by construction.
int weight_key(const BorelRep& aux, const BorelRep& site, int a, int j) {
    const double w = site.alpha_weight(j).real();
    return -2 * aux.level(a) + static_cast<int>(std::lround(w));
}

struct EquationSet {
    Eigen::MatrixXcd lhs;  // E'_i = φ(e_i) ⊗ ψ(K_i) + I ⊗ ψ(e_i)
    Eigen::MatrixXcd rhs;  // E''_i = φ(e_i) ⊗ I + φ(K_i) ⊗ ψ(e_i)
};

EquationSet equation_pair(const BorelRep& aux, const BorelRep& site, const NumericParams& p,
                          int i) {
    const Eigen::MatrixXcd& ea = (i == 0) ? aux.e0 : aux.e1;
    const Eigen::MatrixXcd& es = (i == 0) ? site.e0 : site.e1;
    // α∨₀ = −α∨₁.
    const cplx nu = (i == 0) ? cplx(-1.0, 0.0) : cplx(1.0, 0.0);
    const Eigen::MatrixXcd ka = aux.cartan_power(p, nu);
    const Eigen::MatrixXcd ks = site.cartan_power(p, nu);
    const Eigen::MatrixXcd ia = Eigen::MatrixXcd::Identity(aux.dim, aux.dim);
    const Eigen::MatrixXcd is = Eigen::MatrixXcd::Identity(site.dim, site.dim);
    EquationSet eq;
    eq.lhs = kron(ea, ks) + kron(ia, es);
    eq.rhs = kron(ea, is) + kron(ka, es);
    return eq;
}

EquationSet f_equation_pair(const BorelRep& aux, const BorelRep& site, const NumericParams& p,
                            int i) {
    const Eigen::MatrixXcd& fa = (i == 0) ? aux.f0 : aux.f1;
    const Eigen::MatrixXcd& fs = (i == 0) ? site.f0 : site.f1;
    const cplx nu = (i == 0) ? cplx(-1.0, 0.0) : cplx(1.0, 0.0);
    const Eigen::MatrixXcd ka_inv = aux.cartan_power(p, -nu);
    const Eigen::MatrixXcd ks_inv = site.cartan_power(p, -nu);
    const Eigen::MatrixXcd ia = Eigen::MatrixXcd::Identity(aux.dim, aux.dim);
    const Eigen::MatrixXcd is = Eigen::MatrixXcd::Identity(site.dim, site.dim);
    EquationSet eq;
    eq.lhs = kron(fa, is) + kron(ka_inv, fs);
    eq.rhs = kron(fa, ks_inv) + kron(ia, fs);
    return eq;
}

/// Relative max-entry residual of L·X − X·R over interior rows/cols.
double pair_residual(const EquationSet& eq, const Eigen::MatrixXcd& x, const BorelRep& aux,
                     int site_dim, int max_level) {
    const Eigen::MatrixXcd lhs = eq.lhs * x;
    const Eigen::MatrixXcd rhs = x * eq.rhs;
    auto lvl = [&](int flat) { return aux.level(flat / site_dim); };
    double num = 0.0, den = 0.0;
    for (int r = 0; r < lhs.rows(); ++r) {
        if (lvl(r) > max_level) continue;
        for (int c = 0; c < lhs.cols(); ++c) {
            if (lvl(c) > max_level) continue;
            num = std::max(num, std::abs(lhs(r, c) - rhs(r, c)));
            den = std::max({den, std::abs(lhs(r, c)), std::abs(rhs(r, c))});
        }
    }
    return den > 0.0 ? num / den : num;
}

/// Levels up to this bound form the "head" of a tower: the block of the
/// equation system confined to them never touches the cutoff, so rank
/// statements made there are statements about the untruncated system.
constexpr int kHeadLevel = 8;

using mpc = boost::multiprecision::cpp_complex_50;

mpc to_mpc(const cplx& z) { return mpc(z.real(), z.imag()); }

cplx to_cplx(const mpc& z) {
    return cplx(z.real().convert_to<double>(), z.imag().convert_to<double>());
}

/// Closed-form tower entries in extended precision. Every tower used here
/// has the same shape: e0 raises one level (entry at (n+1, n)), e1 lowers
/// one (entry at (n−1, n)), and the Cartan weights are diagonal.
struct MpTower {
    std::vector<mpc> e0_up;   // e0(n+1, n), indexed by the column n
    std::vector<mpc> e1_dn;   // e1(n−1, n), indexed by the column n
    std::vector<mpc> kplus;   // q^{+α∨₁(n)}
    std::vector<mpc> kminus;  // q^{−α∨₁(n)}

    MpTower(const TowerSpec& ts, int dim, const NumericParams& p) {
        const mpc lq = to_mpc(p.log_q);
        auto qp = [&](const mpc& x) { return exp(x * lq); };
        const mpc one(1.0, 0.0);
        const mpc invqq = one / (qp(one) - qp(-one));
        auto qn = [&](const mpc& x) { return (qp(x) - qp(-x)) * invqq; };
        const mpc zp0 = exp(mpc(p.s0, 0.0) * to_mpc(ts.log_zeta));
        const mpc zp1 = exp(mpc(p.s1, 0.0) * to_mpc(ts.log_zeta));
        e0_up.assign(static_cast<size_t>(dim), mpc(0.0, 0.0));
        e1_dn.assign(static_cast<size_t>(dim), mpc(0.0, 0.0));
        kplus.resize(static_cast<size_t>(dim));
        kminus.resize(static_cast<size_t>(dim));
        for (int n = 0; n < dim; ++n) {
            mpc alpha;
            if (ts.kind == 0) {
                const mpc lambda = to_mpc(ts.mu1) - to_mpc(ts.mu2);
                alpha = lambda - mpc(2.0 * n, 0.0);
                if (n + 1 < dim)
                    e0_up[static_cast<size_t>(n)] = zp0 * qp(to_mpc(ts.mu1) + to_mpc(ts.mu2));
                if (n >= 1)
                    e1_dn[static_cast<size_t>(n)] =
                        zp1 * qn(mpc(n, 0.0)) * qn(lambda - mpc(n - 1.0, 0.0));
            } else if (ts.kind == 1) {
                alpha = mpc(-2.0 * (n + 1), 0.0);
                if (n + 1 < dim)
                    e0_up[static_cast<size_t>(n)] = zp0 * (-invqq) * qp(mpc(-(n + 1.0), 0.0));
                if (n >= 1) e1_dn[static_cast<size_t>(n)] = zp1 * (-qn(mpc(n, 0.0)));
            } else {
                alpha = mpc(-2.0 * n, 0.0);
                if (n + 1 < dim) e0_up[static_cast<size_t>(n)] = zp0;
                if (n >= 1)
                    e1_dn[static_cast<size_t>(n)] =
                        zp1 * (-invqq) * qp(mpc(n, 0.0)) * qn(mpc(n, 0.0));
            }
            kplus[static_cast<size_t>(n)] = qp(alpha);
            kminus[static_cast<size_t>(n)] = one / kplus[static_cast<size_t>(n)];
        }
    }
};

/// Square linear solve by Gaussian elimination with partial pivoting.
/// Throws when a pivot collapses (degenerate parameters).
std::vector<mpc> mp_gauss(std::vector<std::vector<mpc>> g, std::vector<mpc> h, int lvl) {
    const int k = static_cast<int>(h.size());
    using mpf = decltype(abs(mpc()));
    mpf gmax(0);
    for (const auto& row : g)
        for (const auto& e : row) gmax = (std::max)(gmax, abs(e));
    for (int col = 0; col < k; ++col) {
        int piv = col;
        for (int r = col + 1; r < k; ++r)
            if (abs(g[static_cast<size_t>(r)][static_cast<size_t>(col)]) >
                abs(g[static_cast<size_t>(piv)][static_cast<size_t>(col)]))
                piv = r;
        if (!(abs(g[static_cast<size_t>(piv)][static_cast<size_t>(col)]) > gmax * mpf(1e-40)))
            throw std::runtime_error("solve_intertwiner: singular level block at level " +
                                     std::to_string(lvl));
        std::swap(g[static_cast<size_t>(piv)], g[static_cast<size_t>(col)]);
        std::swap(h[static_cast<size_t>(piv)], h[static_cast<size_t>(col)]);
        for (int r = col + 1; r < k; ++r) {
            const mpc f = g[static_cast<size_t>(r)][static_cast<size_t>(col)] /
                          g[static_cast<size_t>(col)][static_cast<size_t>(col)];
            for (int cc = col; cc < k; ++cc)
                g[static_cast<size_t>(r)][static_cast<size_t>(cc)] -=
                    f * g[static_cast<size_t>(col)][static_cast<size_t>(cc)];
            h[static_cast<size_t>(r)] -= f * h[static_cast<size_t>(col)];
        }
    }
    std::vector<mpc> x(static_cast<size_t>(k));
    for (int r = k - 1; r >= 0; --r) {
        mpc s = h[static_cast<size_t>(r)];
        for (int cc = r + 1; cc < k; ++cc)
            s -= g[static_cast<size_t>(r)][static_cast<size_t>(cc)] * x[static_cast<size_t>(cc)];
        x[static_cast<size_t>(r)] = s / g[static_cast<size_t>(r)][static_cast<size_t>(r)];
    }
    return x;
}

/// Re-solves the cascade in extended precision from the closed-form tower
/// entries, seeded by X(0,0) = 1, and overwrites `value` for every unknown
/// it determines. The double-precision pass has already certified the rank
/// structure; this pass only restores the relative accuracy that the
/// geometric error growth of the level recursion costs in doubles.
void mp_refine(const TowerSpec& aux_spec, const TowerSpec& site_spec, const NumericParams& p,
               int aux_dim, int sd, int eq_level,
               const std::vector<std::pair<int, int>>& unknowns,
               const std::map<std::pair<int, int>, int>& unknown_index,
               const std::vector<int>& ulevel, std::vector<cplx>& value) {
    const MpTower aux(aux_spec, aux_dim, p);
    const MpTower site(site_spec, sd, p);
    const int u = static_cast<int>(unknowns.size());
    const int n = aux_dim * sd;

    struct MpRow {
        std::vector<std::pair<int, mpc>> terms;
        int max_ul = 0;
    };
    std::vector<MpRow> rows;
    auto add_term = [&](MpRow& row, int rr, int cc, const mpc& coeff) {
        auto it = unknown_index.find({rr, cc});
        if (it == unknown_index.end()) return;
        row.terms.emplace_back(it->second, coeff);
        row.max_ul = std::max(row.max_ul, ulevel[static_cast<size_t>(it->second)]);
    };
    for (int i = 0; i < 2; ++i) {
        const bool plus = (i == 1);  // α∨₀ = −α∨₁
        const auto& ks = plus ? site.kplus : site.kminus;
        const auto& ka = plus ? aux.kplus : aux.kminus;
        for (int r = 0; r < n; ++r) {
            const int a = r / sd, j = r % sd;
            if (a > eq_level) continue;
            for (int c = 0; c < n; ++c) {
                const int b = c / sd, k = c % sd;
                if (b > eq_level) continue;
                MpRow row;
                // φ(e_i) ⊗ ψ(K_i) acting on the left.
                if (i == 0 && a >= 1)
                    add_term(row, (a - 1) * sd + j, c, aux.e0_up[static_cast<size_t>(a - 1)] *
                                                           ks[static_cast<size_t>(j)]);
                if (i == 1 && a + 1 < aux_dim)
                    add_term(row, (a + 1) * sd + j, c,
                             aux.e1_dn[static_cast<size_t>(a + 1)] * ks[static_cast<size_t>(j)]);
                // I ⊗ ψ(e_i) acting on the left.
                if (i == 0 && j == 1) add_term(row, a * sd + 0, c, site.e0_up[0]);
                if (i == 1 && j == 0) add_term(row, a * sd + 1, c, site.e1_dn[1]);
                // φ(e_i) ⊗ I acting on the right (subtracted).
                if (i == 0 && b + 1 < aux_dim)
                    add_term(row, r, (b + 1) * sd + k, -aux.e0_up[static_cast<size_t>(b)]);
                if (i == 1 && b >= 1)
                    add_term(row, r, (b - 1) * sd + k, -aux.e1_dn[static_cast<size_t>(b)]);
                // φ(K_i) ⊗ ψ(e_i) acting on the right (subtracted).
                if (i == 0 && k == 0)
                    add_term(row, r, b * sd + 1, -ka[static_cast<size_t>(b)] * site.e0_up[0]);
                if (i == 1 && k == 1)
                    add_term(row, r, b * sd + 0, -ka[static_cast<size_t>(b)] * site.e1_dn[1]);
                if (!row.terms.empty()) rows.push_back(std::move(row));
            }
        }
    }

    // Rows confined to the head levels are solved jointly as the first
    // stage: pinning the seed is what makes that block uniquely solvable,
    // while its individual levels are not determined one at a time.
    std::map<int, std::vector<int>> stages;
    for (size_t k = 0; k < rows.size(); ++k)
        stages[std::max(rows[k].max_ul, kHeadLevel)].push_back(static_cast<int>(k));

    std::vector<mpc> val(static_cast<size_t>(u), mpc(0.0, 0.0));
    std::vector<char> kn(static_cast<size_t>(u), 0);
    const int seed = unknown_index.at({0, 0});
    val[static_cast<size_t>(seed)] = mpc(1.0, 0.0);
    kn[static_cast<size_t>(seed)] = 1;

    for (const auto& [lvl, rws] : stages) {
        std::vector<int> fresh;
        std::map<int, int> fresh_index;
        for (int k : rws)
            for (const auto& [id, coeff] : rows[static_cast<size_t>(k)].terms)
                if (!kn[static_cast<size_t>(id)] && !fresh_index.count(id)) {
                    fresh_index[id] = static_cast<int>(fresh.size());
                    fresh.push_back(id);
                }
        if (fresh.empty()) continue;
        if (static_cast<int>(rws.size()) < static_cast<int>(fresh.size()))
            throw std::runtime_error("solve_intertwiner: underdetermined level block at level " +
                                     std::to_string(lvl));
        const int fk = static_cast<int>(fresh.size());
        // Normal equations: conditioning is squared, which fifty digits
        // absorb without ceremony.
        std::vector<std::vector<mpc>> g(static_cast<size_t>(fk),
                                        std::vector<mpc>(static_cast<size_t>(fk), mpc(0.0, 0.0)));
        std::vector<mpc> h(static_cast<size_t>(fk), mpc(0.0, 0.0));
        std::vector<mpc> arow(static_cast<size_t>(fk));
        for (int k : rws) {
            std::fill(arow.begin(), arow.end(), mpc(0.0, 0.0));
            mpc b(0.0, 0.0);
            for (const auto& [id, coeff] : rows[static_cast<size_t>(k)].terms) {
                if (kn[static_cast<size_t>(id)])
                    b -= coeff * val[static_cast<size_t>(id)];
                else
                    arow[static_cast<size_t>(fresh_index.at(id))] += coeff;
            }
            for (int r = 0; r < fk; ++r) {
                const mpc cr = conj(arow[static_cast<size_t>(r)]);
                if (cr == mpc(0.0, 0.0)) continue;
                for (int cc = 0; cc < fk; ++cc)
                    g[static_cast<size_t>(r)][static_cast<size_t>(cc)] +=
                        cr * arow[static_cast<size_t>(cc)];
                h[static_cast<size_t>(r)] += cr * b;
            }
        }
        const std::vector<mpc> sol = mp_gauss(std::move(g), std::move(h), lvl);
        for (int j = 0; j < fk; ++j) {
            val[static_cast<size_t>(fresh[static_cast<size_t>(j)])] =
                sol[static_cast<size_t>(j)];
            kn[static_cast<size_t>(fresh[static_cast<size_t>(j)])] = 1;
        }
    }

    for (int k = 0; k < u; ++k)
        if (kn[static_cast<size_t>(k)]) value[static_cast<size_t>(k)] = to_cplx(val[static_cast<size_t>(k)]);
}

}  // namespace

IntertwinerResult solve_intertwiner(const BorelRep& aux, const BorelRep& site,
                                    const NumericParams& p) {
    const int sd = site.dim;
    const int n = aux.dim * sd;
    const int top_level = aux.dim - 1;
    // Equations are restricted to rows/cols of aux level ≤ cutoff − 2 so
    // every referenced unknown (level shifts of ±1) stays inside the block
    // of solved entries — the system is then a restriction of the
    // untruncated one.
    const int eq_level = aux.truncated ? top_level - 1 : top_level;

    // Unknowns: weight-diagonal entries.
    std::vector<std::pair<int, int>> unknowns;
    std::map<std::pair<int, int>, int> unknown_index;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (weight_key(aux, site, r / sd, r % sd) == weight_key(aux, site, c / sd, c % sd)) {
                unknown_index[{r, c}] = static_cast<int>(unknowns.size());
                unknowns.emplace_back(r, c);
            }
    const int u = static_cast<int>(unknowns.size());

    const EquationSet eq0 = equation_pair(aux, site, p, 0);
    const EquationSet eq1 = equation_pair(aux, site, p, 1);

    // Assemble rows of A·vec(X) = 0 for every interior matrix position of
    // L·X − X·R. Only weight-compatible positions give nonzero rows.
    std::vector<Eigen::VectorXcd> rows;
    auto assemble = [&](const EquationSet& eq) {
        for (int r = 0; r < n; ++r) {
            if (aux.level(r / sd) > eq_level) continue;
            for (int c = 0; c < n; ++c) {
                if (aux.level(c / sd) > eq_level) continue;
                Eigen::VectorXcd row = Eigen::VectorXcd::Zero(u);
                bool nonzero = false;
                for (int m = 0; m < n; ++m) {
                    if (eq.lhs(r, m) != cplx(0.0, 0.0)) {
                        auto it = unknown_index.find({m, c});
                        if (it != unknown_index.end()) {
                            row(it->second) += eq.lhs(r, m);
                            nonzero = true;
                        }
                    }
                    if (eq.rhs(m, c) != cplx(0.0, 0.0)) {
                        auto it = unknown_index.find({r, m});
                        if (it != unknown_index.end()) {
                            row(it->second) -= eq.rhs(m, c);
                            nonzero = true;
                        }
                    }
                }
                if (nonzero) rows.push_back(std::move(row));
            }
        }
    };
    assemble(eq0);
    assemble(eq1);

    if (rows.empty()) throw std::runtime_error("solve_intertwiner: empty equation system");

    // A single global SVD cannot certify the null space on a deep tower: the
    // bulk recursion has a second solution that violates only the top-weight
    // boundary rows, so its relative residual — and with it the second
    // singular value — shrinks geometrically with the cutoff.  The solve is
    // therefore split: a rank-revealing SVD on the shallow head block, where
    // one-dimensionality is a well-conditioned statement, followed by
    // level-by-level forward substitution, which extends the head solution
    // downward with no null freedom at all.
    std::vector<int> ulevel(static_cast<size_t>(u));
    for (int k = 0; k < u; ++k)
        ulevel[static_cast<size_t>(k)] =
            std::max(aux.level(unknowns[static_cast<size_t>(k)].first / sd),
                     aux.level(unknowns[static_cast<size_t>(k)].second / sd));

    struct RowRec {
        std::vector<int> nz;
        int max_ulevel = 0;
    };
    std::vector<RowRec> recs(rows.size());
    for (size_t k = 0; k < rows.size(); ++k) {
        for (int j = 0; j < u; ++j)
            if (rows[k](j) != cplx(0.0, 0.0)) {
                recs[k].nz.push_back(j);
                recs[k].max_ulevel = std::max(recs[k].max_ulevel, ulevel[static_cast<size_t>(j)]);
            }
    }

    std::vector<int> head_rows;
    std::map<int, std::vector<int>> stage_rows;  // level -> row indices
    for (size_t k = 0; k < rows.size(); ++k) {
        if (recs[k].max_ulevel <= kHeadLevel)
            head_rows.push_back(static_cast<int>(k));
        else
            stage_rows[recs[k].max_ulevel].push_back(static_cast<int>(k));
    }
    if (head_rows.empty()) throw std::runtime_error("solve_intertwiner: empty head system");

    std::vector<char> known(static_cast<size_t>(u), 0);
    std::vector<cplx> value(static_cast<size_t>(u), cplx(0.0, 0.0));

    IntertwinerResult res;
    {
        // Head block: all unknowns its rows reference.
        std::vector<int> hk;
        std::map<int, int> hk_index;
        for (int k : head_rows)
            for (int j : recs[static_cast<size_t>(k)].nz)
                if (!hk_index.count(j)) {
                    hk_index[j] = static_cast<int>(hk.size());
                    hk.push_back(j);
                }
        const int hu = static_cast<int>(hk.size());
        if (hu < 2) throw std::runtime_error("solve_intertwiner: degenerate head system");
        Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(static_cast<int>(head_rows.size()), hu);
        for (size_t r = 0; r < head_rows.size(); ++r) {
            const Eigen::VectorXcd& row = rows[static_cast<size_t>(head_rows[r])];
            for (int j : recs[static_cast<size_t>(head_rows[r])].nz)
                a(static_cast<int>(r), hk_index[j]) = row(j);
            // Row equilibration: coefficients within a row span several
            // orders of magnitude and would hide the rank structure.
            const double scale = a.row(static_cast<int>(r)).cwiseAbs().maxCoeff();
            if (scale > 0.0) a.row(static_cast<int>(r)) /= scale;
        }
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinV);
        const auto& sigma = svd.singularValues();
        const double smax = sigma(0);
        res.sigma_null = sigma(hu - 1) / smax;
        res.sigma_next = sigma(hu - 2) / smax;
        if (res.sigma_null > p.null_tol)
            throw std::runtime_error(
                "solve_intertwiner: no null direction (sigma_min/sigma_max = " +
                std::to_string(res.sigma_null) + ")");
        if (res.sigma_next < p.rank_margin)
            throw std::runtime_error(
                "solve_intertwiner: null space not one-dimensional (sigma ratio " +
                std::to_string(res.sigma_next) + ")");
        const Eigen::VectorXcd sol = svd.matrixV().col(hu - 1);
        for (int j = 0; j < hu; ++j) {
            value[static_cast<size_t>(hk[static_cast<size_t>(j)])] = sol(j);
            known[static_cast<size_t>(hk[static_cast<size_t>(j)])] = 1;
        }
    }

    // Forward substitution, one level at a time.  Each stage solves a small
    // inhomogeneous least-squares block for the unknowns its rows introduce;
    // a singular block means degenerate parameters, same as a fat null space.
    for (const auto& [lvl, rws] : stage_rows) {
        std::vector<int> fresh;
        std::map<int, int> fresh_index;
        for (int k : rws)
            for (int j : recs[static_cast<size_t>(k)].nz)
                if (!known[static_cast<size_t>(j)] && !fresh_index.count(j)) {
                    fresh_index[j] = static_cast<int>(fresh.size());
                    fresh.push_back(j);
                }
        if (fresh.empty()) continue;
        if (static_cast<int>(rws.size()) < static_cast<int>(fresh.size()))
            throw std::runtime_error("solve_intertwiner: underdetermined level block at level " +
                                     std::to_string(lvl));
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<int>(rws.size()),
                                                    static_cast<int>(fresh.size()));
        Eigen::VectorXcd b = Eigen::VectorXcd::Zero(static_cast<int>(rws.size()));
        for (size_t r = 0; r < rws.size(); ++r) {
            const Eigen::VectorXcd& row = rows[static_cast<size_t>(rws[r])];
            double scale = 0.0;
            for (int j : recs[static_cast<size_t>(rws[r])].nz)
                scale = std::max(scale, std::abs(row(j)));
            if (scale == 0.0) scale = 1.0;
            for (int j : recs[static_cast<size_t>(rws[r])].nz) {
                const cplx cf = row(j) / scale;
                if (known[static_cast<size_t>(j)])
                    b(static_cast<int>(r)) -= cf * value[static_cast<size_t>(j)];
                else
                    m(static_cast<int>(r), fresh_index[j]) = cf;
            }
        }
        // Column equilibration: a fresh unknown's coefficient is O(1) while
        // the known terms beside it grow with the level, so without it the
        // rank test reads scale disparity as rank deficiency.
        Eigen::VectorXd colscale(static_cast<int>(fresh.size()));
        for (int j = 0; j < static_cast<int>(fresh.size()); ++j) {
            colscale(j) = m.col(j).cwiseAbs().maxCoeff();
            if (colscale(j) == 0.0)
                throw std::runtime_error("solve_intertwiner: dangling unknown at level " +
                                         std::to_string(lvl));
            m.col(j) /= colscale(j);
        }
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto& sigma = svd.singularValues();
        const double ratio = sigma(sigma.size() - 1) / sigma(0);
        if (ratio < p.rank_margin)
            throw std::runtime_error("solve_intertwiner: singular level block at level " +
                                     std::to_string(lvl) + " (sigma ratio " +
                                     std::to_string(ratio) + ")");
        res.sigma_next = std::min(res.sigma_next, ratio);
        const Eigen::VectorXcd sol = svd.solve(b);
        for (size_t j = 0; j < fresh.size(); ++j) {
            value[static_cast<size_t>(fresh[j])] = sol(static_cast<int>(j)) / colscale(static_cast<int>(j));
            known[static_cast<size_t>(fresh[j])] = 1;
        }
    }

    // The double-precision cascade certified the rank structure, but its
    // forward substitution compounds rounding geometrically with the level.
    // When both towers carry a closed form, re-derive the entries at fifty
    // digits and replace the values; rounded back to doubles they satisfy
    // the double-precision equations to machine accuracy.
    if (aux.spec && site.spec)
        mp_refine(*aux.spec, *site.spec, p, aux.dim, sd, eq_level, unknowns, unknown_index,
                  ulevel, value);

    // Normalize the top-weight entry (aux level 0, site highest) to 1.  It
    // is compared against the shallow head entries: deep entries of a
    // truncated tower grow without bound and say nothing about degeneracy.
    const cplx top = value[static_cast<size_t>(unknown_index.at({0, 0}))];
    double head_max = 0.0;
    for (int k = 0; k < u; ++k)
        if (ulevel[static_cast<size_t>(k)] <= kHeadLevel)
            head_max = std::max(head_max, std::abs(value[static_cast<size_t>(k)]));
    if (std::abs(top) < 1e-10 * head_max)
        throw std::runtime_error("solve_intertwiner: top-weight entry vanishes");

    res.X = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 0; k < u; ++k)
        res.X(unknowns[static_cast<size_t>(k)].first, unknowns[static_cast<size_t>(k)].second) =
            value[static_cast<size_t>(k)] / top;

    res.residual = std::max(pair_residual(eq0, res.X, aux, sd, eq_level),
                            pair_residual(eq1, res.X, aux, sd, eq_level));
    if (aux.has_f && site.has_f) {
        res.checked_f = true;
        res.f_residual = std::max(
            pair_residual(f_equation_pair(aux, site, p, 0), res.X, aux, sd, eq_level),
            pair_residual(f_equation_pair(aux, site, p, 1), res.X, aux, sd, eq_level));
    }
    return res;
}

}  // namespace qloop
