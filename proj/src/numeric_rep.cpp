// Representation builders and defining-relation residuals.
#include "qloop/numeric_rep.hpp"

#include <stdexcept>

namespace qloop {

cplx qnum(const NumericParams& p, const cplx& x) {
    return (p.qpow(x) - p.qpow(-x)) / (p.qpow(1) - p.qpow(-1));
}

Eigen::MatrixXcd BorelRep::cartan_power(const NumericParams& p, const cplx& nu) const {
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) k(i, i) = p.qpow(nu * alpha_weight(i));
    return k;
}

BorelRep oscillator_rep(const NumericParams& p, int which, const cplx& log_zeta, int cutoff) {
    if (which != 1 && which != 2)
        throw std::invalid_argument("oscillator_rep: tower label must be 1 or 2");
    if (cutoff < 2) throw std::invalid_argument("oscillator_rep: cutoff too small");

    BorelRep r;
    r.dim = cutoff;
    r.has_f = false;
    r.truncated = true;
    r.log_zeta = log_zeta;
    r.e0 = Eigen::MatrixXcd::Zero(cutoff, cutoff);
    r.e1 = Eigen::MatrixXcd::Zero(cutoff, cutoff);
    r.alpha_weight = Eigen::VectorXcd::Zero(cutoff);
    r.level = Eigen::VectorXi::Zero(cutoff);

    r.spec = TowerSpec{which, cplx(0.0, 0.0), cplx(0.0, 0.0), log_zeta};

    const cplx zp0 = std::exp(p.s0 * log_zeta);
    const cplx zp1 = std::exp(p.s1 * log_zeta);
    const cplx inv_qq = 1.0 / (p.qpow(1) - p.qpow(-1));

    for (int n = 0; n < cutoff; ++n) {
        r.level(n) = n;
        r.alpha_weight(n) = (which == 1) ? cplx(-2.0 * (n + 1), 0.0) : cplx(-2.0 * n, 0.0);
        if (n + 1 < cutoff) {
            // raising part e0: level n -> n+1
            r.e0(n + 1, n) = (which == 1) ? zp0 * (-inv_qq) * p.qpow(-(n + 1.0)) : zp0;
        }
        if (n >= 1) {
            // lowering part e1: level n -> n-1
            r.e1(n - 1, n) = (which == 1) ? zp1 * (-qnum(p, n))
                                          : zp1 * (-inv_qq) * p.qpow(n) * qnum(p, n);
        }
    }
    return r;
}

namespace {

/// Shared tower construction for Verma and its finite quotient: the only
/// difference is whether the last level still has a raising image.
BorelRep sl2_tower(const NumericParams& p, const cplx& mu1, const cplx& mu2,
                   const cplx& log_zeta, int dim, bool truncated) {
    BorelRep r;
    r.dim = dim;
    r.has_f = true;
    r.truncated = truncated;
    r.log_zeta = log_zeta;
    r.spec = TowerSpec{0, mu1, mu2, log_zeta};
    r.alpha_weight = Eigen::VectorXcd::Zero(dim);
    r.level = Eigen::VectorXi::Zero(dim);

    const cplx lambda = mu1 - mu2;
    Eigen::MatrixXcd E1 = Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::MatrixXcd F1 = Eigen::MatrixXcd::Zero(dim, dim);
    for (int m = 0; m < dim; ++m) {
        r.level(m) = m;
        r.alpha_weight(m) = lambda - 2.0 * m;
        if (m >= 1) E1(m - 1, m) = qnum(p, m) * qnum(p, lambda - (m - 1.0));
        if (m + 1 < dim) F1(m + 1, m) = 1.0;
    }

    const cplx zp0 = std::exp(p.s0 * log_zeta);
    const cplx zp1 = std::exp(p.s1 * log_zeta);
    const cplx g = p.qpow(mu1 + mu2);

    r.e1 = zp1 * E1;
    r.f1 = (1.0 / zp1) * F1;
    r.e0 = zp0 * g * F1;
    r.f0 = (1.0 / zp0) * (1.0 / g) * E1;
    return r;
}

}  // namespace

BorelRep verma_rep(const NumericParams& p, const cplx& mu1, const cplx& mu2,
                   const cplx& log_zeta, int cutoff) {
    if (cutoff < 4) throw std::invalid_argument("verma_rep: cutoff too small");
    return sl2_tower(p, mu1, mu2, log_zeta, cutoff, /*truncated=*/true);
}

BorelRep finite_rep(const NumericParams& p, const cplx& mu1, const cplx& mu2,
                    const cplx& log_zeta, int dim) {
    if (dim < 1) throw std::invalid_argument("finite_rep: dimension must be positive");
    if (std::abs(mu1 - mu2 - cplx(dim - 1.0, 0.0)) > 1e-9)
        throw std::invalid_argument("finite_rep: mu1 - mu2 must equal dim - 1");
    return sl2_tower(p, mu1, mu2, log_zeta, dim, /*truncated=*/false);
}

BorelRep site_rep(const NumericParams& p) {
    return finite_rep(p, cplx(1.0, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0), 2);
}

namespace {

/// Max |entry| of m restricted to rows/cols whose level is ≤ max_level.
double interior_max(const Eigen::MatrixXcd& m, const Eigen::VectorXi& level, int max_level) {
    double best = 0.0;
    for (int r = 0; r < m.rows(); ++r) {
        if (level(r) > max_level) continue;
        for (int c = 0; c < m.cols(); ++c) {
            if (level(c) > max_level) continue;
            best = std::max(best, std::abs(m(r, c)));
        }
    }
    return best;
}

/// Relative interior residual of `expr` against the scale of `ref`.
double interior_residual(const Eigen::MatrixXcd& expr, const Eigen::MatrixXcd& ref,
                         const Eigen::VectorXi& level, int max_level) {
    const double scale = interior_max(ref, level, max_level);
    if (scale == 0.0) return interior_max(expr, level, max_level);
    return interior_max(expr, level, max_level) / scale;
}

}  // namespace

RelationResiduals relation_residuals(const BorelRep& rep, const NumericParams& p) {
    RelationResiduals out;
    const int top = rep.dim - 1;
    const int serre_interior = rep.truncated ? top - 4 : top;
    const int ef_interior = rep.truncated ? top - 2 : top;

    const Eigen::MatrixXcd k = rep.cartan_power(p, 1.0);
    const Eigen::MatrixXcd kinv = rep.cartan_power(p, -1.0);

    // Cartan conjugation: K e0 K^{-1} = q^{-2} e0, K e1 K^{-1} = q^{+2} e1.
    {
        const Eigen::MatrixXcd c0 = k * rep.e0 * kinv - p.qpow(-2) * rep.e0;
        const Eigen::MatrixXcd c1 = k * rep.e1 * kinv - p.qpow(2) * rep.e1;
        out.cartan = std::max(interior_residual(c0, rep.e0, rep.level, ef_interior),
                              interior_residual(c1, rep.e1, rep.level, ef_interior));
    }

    // Loop Serre relations: x³y − [3] x²yx + [3] xyx² − yx³ = 0 for
    // (x, y) = (e0, e1) and (e1, e0).
    {
        const cplx three = qnum(p, 3);
        auto serre = [&](const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
            const Eigen::MatrixXcd x2 = x * x;
            const Eigen::MatrixXcd x3 = x2 * x;
            const Eigen::MatrixXcd lhs = x3 * y - three * (x2 * y * x) + three * (x * y * x2);
            const Eigen::MatrixXcd rhs = y * x3;
            return interior_residual(lhs - rhs, x3 * y, rep.level, serre_interior);
        };
        out.serre = std::max(serre(rep.e0, rep.e1), serre(rep.e1, rep.e0));
    }

    // [e1, f1] = (K − K^{-1})/(q − q^{-1}), [e0, f0] = (K^{-1} − K)/(q − q^{-1}),
    // [e0, f1] = [e1, f0] = 0.  Tower entries span many orders of magnitude,
    // so each position is normalized by the terms that cancel there rather
    // than by a single global scale.
    if (rep.has_f) {
        const cplx inv_qq = 1.0 / (p.qpow(1) - p.qpow(-1));
        auto commutator_residual = [&](const Eigen::MatrixXcd& e, const Eigen::MatrixXcd& f,
                                       const Eigen::MatrixXcd& cart) {
            const Eigen::MatrixXcd ef = e * f;
            const Eigen::MatrixXcd fe = f * e;
            const Eigen::MatrixXcd diff = ef - fe - cart;
            double best = 0.0;
            for (int r = 0; r < diff.rows(); ++r) {
                if (rep.level(r) > ef_interior) continue;
                for (int c = 0; c < diff.cols(); ++c) {
                    if (rep.level(c) > ef_interior) continue;
                    const double scale = std::max(
                        {std::abs(ef(r, c)), std::abs(fe(r, c)), std::abs(cart(r, c)), 1.0});
                    best = std::max(best, std::abs(diff(r, c)) / scale);
                }
            }
            return best;
        };
        const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(rep.dim, rep.dim);
        out.ef = std::max({commutator_residual(rep.e1, rep.f1, inv_qq * (k - kinv)),
                           commutator_residual(rep.e0, rep.f0, inv_qq * (kinv - k)),
                           commutator_residual(rep.e0, rep.f1, zero),
                           commutator_residual(rep.e1, rep.f0, zero)});
    }
    return out;
}

}  // namespace qloop
