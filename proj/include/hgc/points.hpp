#pragma once

#include <stdexcept>
#include <string>

#include "hgc/curve.hpp"

namespace hgc {

/// Closed points of X_{N,lambda} handled by the engine.
///
/// The four cusp families and affine points are honest degree-1 points over
/// K0.  The three fiber kinds are formal symbols for complete fibers whose
/// individual points need roots outside the coefficient tower:
///   XFiber(c):    the N points with x = c           (degree N)
///   YFiber(c):    the N points with y = c           (degree N)
///   LineFiber(c): the 2N affine points with x = c*y (degree 2N)
template <class B>
class Point {
public:
    using S = typename B::Scalar;
    enum class Kind { CuspA, CuspB, CuspC1, CuspC2, Affine, XFiber, YFiber, LineFiber };

    // --- constructors ----------------------------------------------------
    static Point cusp_a(const B& b, int i) { return cusp(b, Kind::CuspA, i); }
    static Point cusp_b(const B& b, int i) { return cusp(b, Kind::CuspB, i); }
    static Point cusp_c1(const B& b, int i) { return cusp(b, Kind::CuspC1, i); }
    static Point cusp_c2(const B& b, int i) { return cusp(b, Kind::CuspC2, i); }

    /// Affine point (x0, y0); must satisfy the curve relation.  Points with
    /// a vanishing coordinate normalize to the corresponding cusp.
    static Point affine(const B& b, const S& x0, const S& y0) {
        S one = b.integer(1);
        S xN = x0.pow(b.N()), yN = y0.pow(b.N());
        if (!((one - xN) * (one - yN) - b.lambda() * xN * yN).is_zero())
            throw std::invalid_argument("point does not lie on the curve");
        if (x0.is_zero()) return cusp_a(b, root_of_unity_index(b, y0));
        if (y0.is_zero()) return cusp_b(b, root_of_unity_index(b, x0));
        Point p(&b, Kind::Affine);
        p.x0_ = x0;
        p.y0_ = y0;
        return p;
    }

    /// Fixed points of alpha (odd N only): P = (xi, -xi), Q = (-xi, xi).
    static Point fixed_p(const B& b) {
        require_odd(b);
        return affine(b, b.xi(), -b.xi());
    }
    static Point fixed_q(const B& b) {
        require_odd(b);
        return affine(b, -b.xi(), b.xi());
    }

    static Point x_fiber(const B& b, const S& c) { return fiber(b, Kind::XFiber, c); }
    static Point y_fiber(const B& b, const S& c) { return fiber(b, Kind::YFiber, c); }
    static Point line_fiber(const B& b, const S& c) {
        if (c.is_zero()) throw std::invalid_argument("degenerate line fiber");
        Point p(&b, Kind::LineFiber);
        p.c_ = c;
        return p;
    }

    // --- accessors -------------------------------------------------------
    Kind kind() const { return k_; }
    int index() const { return idx_; }
    const S& x0() const { return x0_; }
    const S& y0() const { return y0_; }
    const S& fiber_value() const { return c_; }
    const B& backend() const { return *b_; }

    bool is_fiber() const {
        return k_ == Kind::XFiber || k_ == Kind::YFiber || k_ == Kind::LineFiber;
    }
    bool is_cusp() const {
        return k_ == Kind::CuspA || k_ == Kind::CuspB || k_ == Kind::CuspC1 ||
               k_ == Kind::CuspC2;
    }
    int degree() const {
        switch (k_) {
            case Kind::XFiber:
            case Kind::YFiber: return b_->N();
            case Kind::LineFiber: return 2 * b_->N();
            default: return 1;
        }
    }

    // --- automorphism action (image of the point) ------------------------
    Point apply(const Automorphism& s) const {
        const B& b = *b_;
        int n = b.N();
        switch (s.kind) {
            case Automorphism::Kind::Group:
                switch (k_) {
                    case Kind::CuspA: return cusp_a(b, idx_ + s.s);
                    case Kind::CuspB: return cusp_b(b, idx_ + s.r);
                    case Kind::CuspC1: return cusp_c1(b, idx_ + s.s);
                    case Kind::CuspC2: return cusp_c2(b, idx_ + s.r);
                    case Kind::Affine:
                        return affine(b, b.zeta_pow(s.r) * x0_, b.zeta_pow(s.s) * y0_);
                    case Kind::XFiber: return x_fiber(b, b.zeta_pow(s.r) * c_);
                    case Kind::YFiber: return y_fiber(b, b.zeta_pow(s.s) * c_);
                    case Kind::LineFiber:
                        return line_fiber(b, b.zeta_pow(s.r - s.s) * c_);
                }
                break;
            case Automorphism::Kind::Alpha:
                switch (k_) {
                    case Kind::CuspA: return cusp_c1(b, n - idx_);
                    case Kind::CuspC1: return cusp_a(b, n - idx_);
                    case Kind::CuspB: return cusp_c2(b, n - idx_);
                    case Kind::CuspC2: return cusp_b(b, n - idx_);
                    case Kind::Affine:
                        return affine(b, (b.rho() * x0_).inv(), (b.rho() * y0_).inv());
                    case Kind::XFiber: return x_fiber(b, (b.rho() * c_).inv());
                    case Kind::YFiber: return y_fiber(b, (b.rho() * c_).inv());
                    case Kind::LineFiber: return line_fiber(b, c_.inv());
                }
                break;
            case Automorphism::Kind::Swap:
                switch (k_) {
                    case Kind::CuspA: return cusp_b(b, idx_);
                    case Kind::CuspB: return cusp_a(b, idx_);
                    case Kind::CuspC1: return cusp_c2(b, idx_);
                    case Kind::CuspC2: return cusp_c1(b, idx_);
                    case Kind::Affine: return affine(b, y0_, x0_);
                    case Kind::XFiber: return y_fiber(b, c_);
                    case Kind::YFiber: return x_fiber(b, c_);
                    case Kind::LineFiber: return line_fiber(b, c_.inv());
                }
                break;
        }
        throw std::logic_error("unreachable");
    }

    // --- ordering / printing ---------------------------------------------
    int cmp(const Point& o) const {
        if (k_ != o.k_) return k_ < o.k_ ? -1 : 1;
        switch (k_) {
            case Kind::Affine: {
                int c = x0_.cmp(o.x0_);
                return c != 0 ? c : y0_.cmp(o.y0_);
            }
            case Kind::XFiber:
            case Kind::YFiber:
            case Kind::LineFiber: return c_.cmp(o.c_);
            default: return idx_ < o.idx_ ? -1 : (idx_ > o.idx_ ? 1 : 0);
        }
    }
    bool operator==(const Point& o) const { return cmp(o) == 0; }
    bool operator!=(const Point& o) const { return cmp(o) != 0; }
    bool operator<(const Point& o) const { return cmp(o) < 0; }

    std::string str() const {
        switch (k_) {
            case Kind::CuspA: return "a_" + std::to_string(idx_);
            case Kind::CuspB: return "b_" + std::to_string(idx_);
            case Kind::CuspC1: return "c1_" + std::to_string(idx_);
            case Kind::CuspC2: return "c2_" + std::to_string(idx_);
            case Kind::Affine:
                if (b_->N() % 2 == 1) {
                    if (x0_ == b_->xi() && y0_ == -b_->xi()) return "P";
                    if (x0_ == -b_->xi() && y0_ == b_->xi()) return "Q";
                }
                return "(" + x0_.str() + ", " + y0_.str() + ")";
            case Kind::XFiber: return "fiber{x=" + c_.str() + "}";
            case Kind::YFiber: return "fiber{y=" + c_.str() + "}";
            case Kind::LineFiber: return "fiber{x=(" + c_.str() + ")*y}";
        }
        return "?";
    }

private:
    Point(const B* b, Kind k) : b_(b), k_(k) {}

    static Point cusp(const B& b, Kind k, int i) {
        Point p(&b, k);
        int n = b.N();
        p.idx_ = ((i % n) + n) % n;
        return p;
    }
    static Point fiber(const B& b, Kind k, const S& c) {
        S one = b.integer(1);
        S cN = c.pow(b.N());
        if (c.is_zero() || (cN - one).is_zero() ||
            ((one - b.lambda()) * cN - one).is_zero())
            throw std::invalid_argument(
                "fiber value hits a cusp fiber; use cusp points instead");
        Point p(&b, k);
        p.c_ = c;
        return p;
    }
    static int root_of_unity_index(const B& b, const S& v) {
        for (int i = 0; i < b.N(); ++i)
            if (v == b.zeta_pow(i)) return i;
        throw std::invalid_argument("coordinate is not a known root of unity");
    }
    static void require_odd(const B& b) {
        if (b.N() % 2 == 0)
            throw std::invalid_argument("alpha has no fixed points for even N");
    }

    const B* b_;
    Kind k_;
    int idx_ = 0;
    S x0_, y0_, c_;
};

}  // namespace hgc
