// Monodromy, twisted traces and chain-diagonal factors.
#include "qloop/numeric_ops.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace qloop {

Eigen::MatrixXcd monodromy(const Eigen::MatrixXcd& x, int aux_dim, int site_dim, int sites) {
    if (sites < 1) throw std::invalid_argument("monodromy: need at least one site");
    if (x.rows() != static_cast<long>(aux_dim) * site_dim ||
        x.cols() != static_cast<long>(aux_dim) * site_dim)
        throw std::invalid_argument("monodromy: intertwiner dimension mismatch");

    Eigen::MatrixXcd m = x;  // one site: aux ⊗ site_1
    long chain = site_dim;
    for (int k = 1; k < sites; ++k) {
        // m lives on aux ⊗ chain; append the next site:
        //   m'[(v,c,u),(v',c',u')] = Σ_w X[(v,u),(w,u')] · m[(w,c),(v',c')].
        const long half = static_cast<long>(aux_dim) * chain;  // rows of m
        Eigen::MatrixXcd next(half * site_dim, half * site_dim);
        Eigen::MatrixXcd block(half, half);
        for (int u = 0; u < site_dim; ++u)
            for (int up = 0; up < site_dim; ++up) {
                // block = (X_{u,u'} ⊗ I_chain) · m, built as per-aux-row
                // combinations so the banded structure of X is exploited.
                block.setZero();
                for (int v = 0; v < aux_dim; ++v) {
                    auto dest = block.middleRows(static_cast<long>(v) * chain, chain);
                    for (int w = 0; w < aux_dim; ++w) {
                        const cplx coeff = x(v * site_dim + u, w * site_dim + up);
                        if (coeff == cplx(0.0, 0.0)) continue;
                        dest.noalias() +=
                            coeff * m.middleRows(static_cast<long>(w) * chain, chain);
                    }
                }
                // Scatter into the enlarged index (…, u) = row·site_dim + u.
                for (long r = 0; r < half; ++r) {
                    const long rr = r * site_dim + u;
                    for (long c = 0; c < half; ++c)
                        next(rr, c * site_dim + up) = block(r, c);
                }
            }
        chain *= site_dim;
        m = std::move(next);
    }
    return m;
}

TwistedTrace twisted_trace(const Eigen::MatrixXcd& m, const BorelRep& aux, int site_dim,
                           int sites, const NumericParams& p) {
    long chain = 1;
    for (int k = 0; k < sites; ++k) chain *= site_dim;
    if (m.rows() != static_cast<long>(aux.dim) * chain)
        throw std::invalid_argument("twisted_trace: monodromy dimension mismatch");

    // Aux level v contributes exactly when every excursion v ± sites stays
    // below the cutoff; deeper levels are truncation-contaminated.
    const int v_max = aux.truncated ? aux.dim - 1 - sites : aux.dim - 1;
    if (v_max < 0) throw std::invalid_argument("twisted_trace: cutoff smaller than the chain");

    TwistedTrace out;
    out.levels_summed = v_max + 1;
    out.op = Eigen::MatrixXcd::Zero(chain, chain);

    std::vector<double> level_norm(static_cast<size_t>(v_max) + 1, 0.0);
    for (int v = 0; v <= v_max; ++v) {
        const cplx weight = p.qpow(p.twist * aux.alpha_weight(v));
        const Eigen::MatrixXcd contrib =
            weight * m.block(static_cast<long>(v) * chain, static_cast<long>(v) * chain,
                             chain, chain);
        level_norm[static_cast<size_t>(v)] = contrib.norm();
        out.op += contrib;
    }

    // Empirical tail: fit the decay ratio of the last level contributions
    // and sum the implied geometric remainder.
    if (aux.truncated) {
        const int probes = std::min(4, v_max);
        double ratio = 0.0;
        int used = 0;
        for (int k = 0; k < probes; ++k) {
            const double hi = level_norm[static_cast<size_t>(v_max - k)];
            const double lo = level_norm[static_cast<size_t>(v_max - k - 1)];
            if (lo > 0.0 && hi > 0.0) {
                ratio += hi / lo;
                ++used;
            }
        }
        ratio = used > 0 ? ratio / used : 0.0;
        ratio = std::min(ratio, 0.95);
        const double last = level_norm[static_cast<size_t>(v_max)];
        const double tail_abs = last * ratio / (1.0 - ratio);
        const double scale = out.op.norm();
        out.tail = scale > 0.0 ? tail_abs / scale : tail_abs;
    }
    return out;
}

ChainOperator build_chain_operator(const BorelRep& aux, const BorelRep& site, int sites,
                                   const NumericParams& p) {
    ChainOperator op;
    op.x = solve_intertwiner(aux, site, p);
    const Eigen::MatrixXcd m = monodromy(op.x.X, aux.dim, site.dim, sites);
    op.trace = twisted_trace(m, aux, site.dim, sites, p);
    op.op = op.trace.op;
    return op;
}

Eigen::VectorXd chain_weights(int sites) {
    const long dim = 1L << sites;
    Eigen::VectorXd w(dim);
    for (long c = 0; c < dim; ++c) {
        int ones = 0;
        for (int k = 0; k < sites; ++k)
            if (c & (1L << k)) ++ones;
        w(c) = sites - 2 * ones;
    }
    return w;
}

Eigen::MatrixXcd c1_chain_operator(const NumericParams& p, int sites) {
    const Eigen::VectorXd w = chain_weights(sites);
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(w.size(), w.size());
    for (long c = 0; c < w.size(); ++c) {
        const cplx t = p.qpow((w(c) - 2.0 * p.twist) / 2.0);
        op(c, c) = t / (1.0 - t * t);
    }
    return op;
}

Eigen::MatrixXcd chain_weight_power(const NumericParams& p, int sites, const cplx& x) {
    const Eigen::VectorXd w = chain_weights(sites);
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(w.size(), w.size());
    for (long c = 0; c < w.size(); ++c) op(c, c) = p.qpow(x * (w(c) - 2.0 * p.twist) / 2.0);
    return op;
}

}  // namespace qloop
