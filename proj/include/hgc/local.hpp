#pragma once

#include <map>
#include <stdexcept>

#include "hgc/points.hpp"
#include "hgc/series.hpp"

namespace hgc {

/// Local expansion engine.  For every non-fiber point it produces Laurent
/// expansions of x and y in a local parameter t and evaluates arbitrary
/// function-field elements against them, giving exact vanishing orders and
/// residues.  Parametrizations are memoized per point and recomputed lazily
/// when more precision is requested.
///
/// Local parameters: t = x at the a_i, t = y at the b_i, t = 1/x at the
/// c1_i, t = 1/y at the c2_i, and t = x - x0 at affine points (all affine
/// points with y0 != 0 are unramified over x).
template <class B>
class Expander {
public:
    using S = typename B::Scalar;
    using CF = CurveFun<B>;
    using LS = LSeries<S>;

    struct Config {
        int initial_prec = 0;  // 0 -> 2N
        int prec_ceiling = 0;  // 0 -> 8N
    };

    explicit Expander(const Curve<B>& cv, Config cfg = {})
        : cv_(&cv), b_(&cv.backend()) {
        int n = b_->N();
        init_prec_ = cfg.initial_prec > 0 ? cfg.initial_prec : 2 * n;
        ceiling_ = cfg.prec_ceiling > 0 ? cfg.prec_ceiling : 8 * n;
        if (ceiling_ < init_prec_) ceiling_ = init_prec_;
    }

    const Curve<B>& curve() const { return *cv_; }
    int precision_ceiling() const { return ceiling_; }

    struct Param {
        LS x, y;
    };

    /// Expansion of (x, y) at pt to coefficient precision >= prec.
    const Param& parametrization(const Point<B>& pt, int prec) {
        if (pt.is_fiber())
            throw std::invalid_argument("fiber symbols have no single local parameter");
        auto it = cache_.find(pt);
        if (it != cache_.end() && it->second.x.prec() >= prec &&
            it->second.y.prec() >= prec)
            return it->second;
        Param par = compute_param(pt, prec);
        auto [jt, _] = cache_.insert_or_assign(pt, std::move(par));
        return jt->second;
    }

    /// Laurent expansion of f at pt; absolute precision is at least prec
    /// minus the pole order contributed by negative-exponent parameters.
    LS expand(const CF& f, const Point<B>& pt, int prec) {
        // pad the parametrization against the precision eaten by Horner steps
        // on 1/t leading terms and by inverting denominator series that
        // vanish at the point; the bound depends on where we expand
        int n = b_->N();
        int maxnum = 0, maxden = 0;
        for (int j = 0; j < n; ++j) {
            const auto& rf = f.comp(j);
            if (rf.is_zero()) continue;
            maxnum = std::max(maxnum, rf.num().degree());
            maxden = std::max(maxden, rf.den().degree());
        }
        using K = Point<B>;
        int pad = 2 * n;
        switch (pt.kind()) {
            case K::Kind::CuspA: pad += maxden; break;
            case K::Kind::CuspB: pad += n * maxden; break;
            case K::Kind::CuspC1: pad += maxnum + maxden + n; break;
            case K::Kind::CuspC2: pad += n * maxden + n; break;
            default: pad += maxden; break;
        }
        const Param& par = parametrization(pt, prec + pad);
        LS acc(zr(), prec + pad);
        LS ypow = LS::constant(zr().one(), prec + pad);
        for (int j = 0; j < b_->N(); ++j) {
            const auto& rf = f.comp(j);
            if (!rf.is_zero()) {
                LS num = poly_at(rf.num(), par.x);
                LS den = poly_at(rf.den(), par.x);
                acc = acc + num * den.inv() * ypow;
            }
            if (j + 1 < b_->N()) ypow = ypow * par.y;
        }
        return acc.truncated(std::min(acc.prec(), prec));
    }

    /// Exact vanishing order of f at pt, escalating precision up to the
    /// ceiling.  f must be nonzero.
    long ord_at(const CF& f, const Point<B>& pt) {
        if (f.is_zero())
            throw std::invalid_argument("vanishing order of the zero function");
        for (int prec = init_prec_;; prec *= 2) {
            LS s = expand(f, pt, prec);
            if (auto v = s.val()) return *v;
            if (prec >= ceiling_)
                throw std::runtime_error(
                    "precision ceiling " + std::to_string(ceiling_) +
                    " exceeded computing ord at " + pt.str());
        }
    }

    /// Residue of the form f dx at pt (coefficient of 1/t in f * dx/dt).
    S residue_at(const CF& f, const Point<B>& pt) {
        if (f.is_zero()) return zr();
        for (int prec = init_prec_;; prec *= 2) {
            LS fs = expand(f, pt, prec);
            const Param& par = parametrization(pt, prec);
            LS w = fs * par.x.derivative();
            if (w.prec() >= 0) return w.coeff(-1);
            if (prec >= ceiling_)
                throw std::runtime_error("precision ceiling exceeded computing residue at " +
                                         pt.str());
        }
    }

    /// Value f(pt) for f regular at pt.
    S value_at(const CF& f, const Point<B>& pt) {
        if (f.is_zero()) return zr();
        LS s = expand(f, pt, init_prec_);
        if (auto v = s.val(); v && *v < 0)
            throw std::domain_error("function has a pole at " + pt.str());
        if (s.prec() < 1) s = expand(f, pt, 2 * init_prec_);
        return s.coeff(0);
    }

private:
    S zr() const { return b_->integer(0); }

    LS poly_at(const Poly<S>& p, const LS& xs) const {
        LS acc(zr(), xs.prec());
        for (int i = p.degree(); i >= 0; --i) {
            acc = acc * xs;
            if (!p.coeff(i).is_zero())
                acc = acc + LS::constant(p.coeff(i), xs.prec());
        }
        return acc;
    }

    /// Solve u^N = rhs for a power series u with u(0) = u0 (Newton).
    LS nth_root(const LS& rhs, const S& u0, int prec) const {
        int n = b_->N();
        S n_scalar = b_->integer(n);
        LS u = LS::constant(u0, prec);
        for (int reached = 1; reached < prec; reached *= 2) {
            LS un1 = u.pow(n - 1);
            LS err = un1 * u - rhs;
            u = u - err * (un1.scaled(n_scalar)).inv();
        }
        return u;
    }

    /// Solve A(u) = rhs for u with u(0) = u0, where A = num/den is the
    /// Kummer right-hand side and A'(u0) != 0.
    LS rf_root(const RatFunc<S>& A, const LS& rhs, const S& u0, int prec) const {
        RatFunc<S> Ad = A.derivative();
        LS u = LS::constant(u0, prec);
        for (int reached = 1; reached < prec; reached *= 2) {
            LS val = poly_at(A.num(), u) * poly_at(A.den(), u).inv();
            LS der = poly_at(Ad.num(), u) * poly_at(Ad.den(), u).inv();
            u = u - (val - rhs) * der.inv();
        }
        return u;
    }

    Param compute_param(const Point<B>& pt, int prec) const {
        using K = Point<B>;
        int n = b_->N();
        const S one = b_->integer(1);
        const RatFunc<S>& A = cv_->y_pow_N();
        switch (pt.kind()) {
            case K::Kind::CuspA: {
                // x = t, y = zeta^i * (A(t))^{1/N} branch
                LS x = LS::t_pow(zr(), 1, prec);
                LS rhs = poly_at(A.num(), x) * poly_at(A.den(), x).inv();
                LS y = nth_root(rhs, b_->zeta_pow(pt.index()), prec);
                return {x, y};
            }
            case K::Kind::CuspB: {
                // y = t; A has a simple zero at zeta^i, so x solves A(x)=t^N
                LS y = LS::t_pow(zr(), 1, prec);
                LS x = rf_root(A, y.pow(n), b_->zeta_pow(pt.index()), prec);
                return {x, y};
            }
            case K::Kind::CuspC1: {
                // x = 1/t; y -> rho^{-1} zeta^i as t -> 0
                LS x = LS::t_pow(zr(), -1, prec);
                LS rhs = poly_at(A.num(), x) * poly_at(A.den(), x).inv();
                LS y = nth_root(rhs, b_->rho_inv() * b_->zeta_pow(pt.index()), prec);
                return {x, y};
            }
            case K::Kind::CuspC2: {
                // y = 1/t; by the x<->y symmetry of the relation,
                // x^N = (1-y^N)/(1-(1-lambda)y^N)
                LS y = LS::t_pow(zr(), -1, prec);
                LS yn = y.pow(n);
                LS one_s = LS::constant(one, prec - n);
                LS rhs = (one_s - yn) * (one_s - yn.scaled(one - b_->lambda())).inv();
                LS x = nth_root(rhs, b_->rho_inv() * b_->zeta_pow(pt.index()), prec);
                return {x, y};
            }
            case K::Kind::Affine: {
                // t = x - x0; unramified since y0 != 0
                LS x = LS(zr(), 0, {pt.x0(), one}, prec);
                LS rhs = poly_at(A.num(), x) * poly_at(A.den(), x).inv();
                LS y = nth_root(rhs, pt.y0(), prec);
                return {x, y};
            }
            default:
                throw std::invalid_argument("no parametrization for fiber symbols");
        }
    }

    const Curve<B>* cv_;
    const B* b_;
    int init_prec_, ceiling_;
    std::map<Point<B>, Param> cache_;
};

}  // namespace hgc
