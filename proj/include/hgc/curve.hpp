#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgc/backend.hpp"
#include "hgc/ratfunc.hpp"

namespace hgc {

/// Automorphisms of X_{N,lambda} handled by the engine:
///  group(r,s): (x,y) -> (zeta^r x, zeta^s y)
///  alpha:      (x,y) -> (1/(rho x), 1/(rho y)), order 2
///  swap_xy:    (x,y) -> (y,x)
struct Automorphism {
    enum class Kind { Group, Alpha, Swap } kind = Kind::Group;
    int r = 0, s = 0;

    static Automorphism group(int r, int s) { return {Kind::Group, r, s}; }
    static Automorphism alpha() { return {Kind::Alpha, 0, 0}; }
    static Automorphism swap_xy() { return {Kind::Swap, 0, 0}; }
    static Automorphism identity() { return group(0, 0); }

    std::string str() const {
        switch (kind) {
            case Kind::Alpha: return "alpha";
            case Kind::Swap: return "swap";
            default:
                return "g^{" + std::to_string(r) + "," + std::to_string(s) + "}";
        }
    }
};

template <class B>
class Curve;

/// Element of the function field of X_{N,lambda} in canonical reduced form:
/// y-degree < N with fully reduced x-rational coefficients.  The curve
/// relation folds as y^N = (1-x^N) / (1-(1-lambda)x^N).
template <class B>
class CurveFun {
public:
    using S = typename B::Scalar;
    using RF = RatFunc<S>;

    CurveFun() = default;
    CurveFun(const Curve<B>* cv, std::vector<RF> comps) : cv_(cv), c_(std::move(comps)) {}

    const Curve<B>* curve() const { return cv_; }
    const std::vector<RF>& comps() const { return c_; }
    const RF& comp(int j) const { return c_[static_cast<size_t>(j)]; }

    bool is_zero() const {
        for (const auto& r : c_)
            if (!r.is_zero()) return false;
        return true;
    }

    CurveFun operator+(const CurveFun& o) const {
        check(o);
        std::vector<RF> r = c_;
        for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] + o.c_[i];
        return CurveFun(cv_, std::move(r));
    }
    CurveFun operator-(const CurveFun& o) const {
        check(o);
        std::vector<RF> r = c_;
        for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] - o.c_[i];
        return CurveFun(cv_, std::move(r));
    }
    CurveFun operator-() const {
        std::vector<RF> r = c_;
        for (auto& x : r) x = -x;
        return CurveFun(cv_, std::move(r));
    }
    CurveFun operator*(const CurveFun& o) const;
    CurveFun inv() const;
    CurveFun operator/(const CurveFun& o) const { return *this * o.inv(); }

    CurveFun pow(long k) const;

    bool operator==(const CurveFun& o) const {
        for (size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != o.c_[i]) return false;
        return true;
    }
    bool operator!=(const CurveFun& o) const { return !(*this == o); }

    std::string str() const;

private:
    void check(const CurveFun& o) const {
        if (cv_ != o.cv_) throw std::invalid_argument("curve mismatch");
    }

    const Curve<B>* cv_ = nullptr;
    std::vector<RF> c_;  // y^0 .. y^{N-1} coordinates over K0(x)
};

/// The hypergeometric curve X_{N,lambda} with affine relation
/// (1-x^N)(1-y^N) = lambda x^N y^N, presented as the Kummer extension
/// K0(x)[y] / (y^N - A(x)) with A = (1-x^N)/(1-(1-lambda)x^N).
template <class B>
class Curve {
public:
    using S = typename B::Scalar;
    using RF = RatFunc<S>;
    using CF = CurveFun<B>;

    explicit Curve(const B& backend) : b_(&backend), N_(backend.N()) {
        S one = b_->integer(1);
        S lam = b_->lambda();
        // 1 - x^N and 1 - (1-lambda) x^N
        Poly<S> xN = Poly<S>::monomial(one, N_);
        Poly<S> one_p(one);
        Poly<S> num = one_p - xN;
        Poly<S> den = one_p - xN.scaled(one - lam);
        yN_ = RF(num, den);
    }

    const B& backend() const { return *b_; }
    int N() const { return N_; }
    const RF& y_pow_N() const { return yN_; }

    // --- element constructors -------------------------------------------
    CF zero() const { return from_rf(rf_const(b_->integer(0))); }
    CF one() const { return from_rf(rf_const(b_->integer(1))); }
    CF constant(const S& s) const { return from_rf(rf_const(s)); }
    CF x() const { return from_rf(RF::from_poly(b_->integer(1), Poly<S>::monomial(b_->integer(1), 1))); }
    CF y() const {
        std::vector<RF> c = zero_comps();
        if (N_ == 1) return from_rf(yN_);
        c[1] = rf_const(b_->integer(1));
        return CF(this, std::move(c));
    }
    CF from_rf(RF r) const {
        std::vector<RF> c = zero_comps();
        c[0] = std::move(r);
        return CF(this, std::move(c));
    }
    RF rf_const(const S& s) const { return RF::from_const(s); }

    /// x^m y^n for arbitrary integer exponents.
    CF monomial(long m, long n) const {
        long nr = ((n % N_) + N_) % N_;
        long fold = (n - nr) / N_;
        RF coeff = RF::from_const(b_->integer(1));
        Poly<S> xm = Poly<S>::monomial(b_->integer(1), static_cast<int>(m >= 0 ? m : -m));
        RF xr = RF::from_poly(b_->integer(1), xm);
        if (m < 0) xr = xr.inv();
        coeff = coeff * xr;
        // y^n = yN^fold * y^nr
        RF yf = RF::from_const(b_->integer(1));
        for (long i = 0; i < (fold >= 0 ? fold : -fold); ++i) yf = yf * yN_;
        if (fold < 0) yf = yf.inv();
        std::vector<RF> c = zero_comps();
        c[static_cast<size_t>(nr)] = coeff * yf;
        return CF(this, std::move(c));
    }

    /// Encode the defining relation (1-x^N)(1-y^N) - lambda x^N y^N; must
    /// reduce to zero.
    CF defining_relation() const {
        CF xN = x().pow(N_), yNf = y().pow(N_);
        CF one_f = one();
        CF lamf = constant(b_->lambda());
        return (one_f - xN) * (one_f - yNf) - lamf * xN * yNf;
    }

    // --- automorphisms ---------------------------------------------------
    /// Image of x under sigma, as a curve function.
    CF image_x(const Automorphism& s) const {
        switch (s.kind) {
            case Automorphism::Kind::Group:
                return constant(b_->zeta_pow(s.r)) * x();
            case Automorphism::Kind::Alpha:
                return (constant(b_->rho()) * x()).inv();
            case Automorphism::Kind::Swap:
                return y();
        }
        throw std::logic_error("unreachable");
    }
    CF image_y(const Automorphism& s) const {
        switch (s.kind) {
            case Automorphism::Kind::Group:
                return constant(b_->zeta_pow(s.s)) * y();
            case Automorphism::Kind::Alpha:
                return (constant(b_->rho()) * y()).inv();
            case Automorphism::Kind::Swap:
                return x();
        }
        throw std::logic_error("unreachable");
    }

    /// Substitution action on functions: f -> f(sigma(x), sigma(y)).
    CF apply(const Automorphism& s, const CF& f) const {
        if (s.kind == Automorphism::Kind::Group) {
            // fast path: x -> zeta^r x on each coefficient, y^j picks zeta^{sj}
            std::vector<RF> r;
            r.reserve(static_cast<size_t>(N_));
            for (int j = 0; j < N_; ++j) {
                RF cj = substitute_x_scale(f.comp(j), b_->zeta_pow(s.r));
                S m = b_->zeta_pow(static_cast<long>(s.s) * j);
                r.push_back(cj * RF::from_const(m));
            }
            return CF(this, std::move(r));
        }
        CF X = image_x(s), Y = image_y(s);
        CF acc = zero();
        CF ypow = one();
        for (int j = 0; j < N_; ++j) {
            if (!f.comp(j).is_zero()) acc = acc + eval_rf_at(f.comp(j), X) * ypow;
            if (j + 1 < N_) ypow = ypow * Y;
        }
        return acc;
    }

    /// Sum of translates over a set of group elements (the Galois trace
    /// when the set is a subgroup).
    CF galois_trace(const CF& f, const std::vector<std::pair<int, int>>& subgroup) const {
        CF acc = zero();
        for (auto [r, s] : subgroup) acc = acc + apply(Automorphism::group(r, s), f);
        return acc;
    }
    std::vector<std::pair<int, int>> full_group() const {
        std::vector<std::pair<int, int>> g;
        for (int r = 0; r < N_; ++r)
            for (int s = 0; s < N_; ++s) g.emplace_back(r, s);
        return g;
    }

    /// d/dx on the function field; y' = -F_x/F_y from the curve relation.
    CF derivative(const CF& f) const {
        CF acc = zero();
        CF yp = y_prime();
        CF yf = y();
        for (int j = 0; j < N_; ++j) {
            const RF& cj = f.comp(j);
            if (cj.is_zero()) continue;
            CF term = from_rf(cj.derivative());
            if (j > 0) term = term * yf.pow(j);
            acc = acc + term;
            if (j > 0) {
                CF chain = constant(b_->integer(j)) * from_rf(cj) * yf.pow(j - 1) * yp;
                acc = acc + chain;
            }
        }
        return acc;
    }
    CF y_prime() const {
        // F = (1-x^N)(1-y^N) - lambda x^N y^N
        // F_x = -N x^{N-1} (1 - (1-lambda) y^N)
        // F_y = -N y^{N-1} (1 - (1-lambda) x^N)
        CF one_f = one();
        CF oml = constant(b_->integer(1) - b_->lambda());
        CF fx = -constant(b_->integer(N_)) * x().pow(N_ - 1) * (one_f - oml * y().pow(N_));
        CF fy = -constant(b_->integer(N_)) * y().pow(N_ - 1) * (one_f - oml * x().pow(N_));
        return -(fx / fy);
    }

    /// Parse an expression in x, y, zeta, rho, xi, lambda.
    CF parse(const std::string& text) const;

private:
    friend class CurveFun<B>;

    std::vector<RF> zero_comps() const {
        return std::vector<RF>(static_cast<size_t>(N_),
                               RF::from_const(b_->integer(0)));
    }

    /// c(x) -> c(a*x) for a scalar a.
    RF substitute_x_scale(const RF& r, const S& a) const {
        auto sub = [&](const Poly<S>& p) {
            std::vector<S> c;
            c.reserve(static_cast<size_t>(p.degree() + 1));
            S ap = b_->integer(1);
            for (int i = 0; i <= p.degree(); ++i) {
                c.push_back(p.coeff(i) * ap);
                ap = ap * a;
            }
            return Poly<S>(std::move(c));
        };
        if (r.is_zero()) return r;
        return RF(sub(r.num()), sub(r.den()));
    }

    /// Evaluate a rational function at a curve element.
    CF eval_rf_at(const RF& r, const CF& at) const {
        CF num = eval_poly_at(r.num(), at);
        CF den = eval_poly_at(r.den(), at);
        return num / den;
    }
    CF eval_poly_at(const Poly<S>& p, const CF& at) const {
        CF acc = zero();
        for (int i = p.degree(); i >= 0; --i) {
            acc = acc * at;
            if (!p.coeff(i).is_zero()) acc = acc + constant(p.coeff(i));
        }
        return acc;
    }

    const B* b_;
    int N_;
    RF yN_;
};

template <class B>
CurveFun<B> CurveFun<B>::operator*(const CurveFun& o) const {
    check(o);
    int n = cv_->N();
    std::vector<RF> r(static_cast<size_t>(n), c_[0].zero());
    const RF& fold = cv_->y_pow_N();
    for (int i = 0; i < n; ++i) {
        if (c_[static_cast<size_t>(i)].is_zero()) continue;
        for (int j = 0; j < n; ++j) {
            if (o.c_[static_cast<size_t>(j)].is_zero()) continue;
            RF p = c_[static_cast<size_t>(i)] * o.c_[static_cast<size_t>(j)];
            int k = i + j;
            if (k >= n) {
                k -= n;
                p = p * fold;
            }
            r[static_cast<size_t>(k)] = r[static_cast<size_t>(k)] + p;
        }
    }
    return CurveFun(cv_, std::move(r));
}

template <class B>
CurveFun<B> CurveFun<B>::inv() const {
    if (is_zero()) throw std::domain_error("division by zero in function field");
    int n = cv_->N();
    Poly<RF> a{std::vector<RF>(c_)};
    std::vector<RF> def(static_cast<size_t>(n) + 1, c_[0].zero());
    def[0] = -cv_->y_pow_N();
    def[static_cast<size_t>(n)] = c_[0].zero().one();
    Poly<RF> m{std::move(def)};
    auto [g, s, t] = Poly<RF>::ext_gcd(a, m);
    (void)t;
    if (g.degree() != 0)
        throw std::logic_error(
            "y^N - A(x) found reducible over K0(x): curve irreducibility "
            "violated");
    RF gi = g.coeff(0).inv();
    std::vector<RF> r(static_cast<size_t>(n), c_[0].zero());
    for (int i = 0; i <= s.degree() && i < n; ++i)
        r[static_cast<size_t>(i)] = s.coeff(i) * gi;
    return CurveFun(cv_, std::move(r));
}

template <class B>
CurveFun<B> CurveFun<B>::pow(long k) const {
    if (k < 0) return inv().pow(-k);
    CurveFun r = cv_->one();
    CurveFun b = *this;
    while (k > 0) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k) b = b * b;  // skip the unused final squaring
    }
    return r;
}

template <class B>
std::string CurveFun<B>::str() const {
    if (is_zero()) return "0";
    auto poly_str = [](const Poly<S>& p, bool parens) {
        std::string s;
        for (int i = 0; i <= p.degree(); ++i) {
            if (p.coeff(i).is_zero()) continue;
            if (!s.empty()) s += " + ";
            std::string cs = p.coeff(i).str();
            if (cs.find('+') != std::string::npos || cs.find('/') != std::string::npos)
                cs = "(" + cs + ")";
            if (i == 0) {
                s += cs;
            } else {
                if (cs != "1") s += cs + "*";
                s += "x";
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        if (s.empty()) s = "0";
        if (parens && s.find(' ') != std::string::npos) s = "(" + s + ")";
        return s;
    };
    std::string out;
    for (size_t j = 0; j < c_.size(); ++j) {
        if (c_[j].is_zero()) continue;
        if (!out.empty()) out += " + ";
        std::string cs = poly_str(c_[j].num(), true);
        if (c_[j].den().degree() > 0) cs += "/" + poly_str(c_[j].den(), true);
        if (j >= 1) {
            cs += "*y";
            if (j > 1) cs += "^" + std::to_string(j);
        }
        out += cs;
    }
    return out;
}

// ---------------------------------------------------------------------------
// expression parser: integer literals, + - * / ^, parentheses, and the
// named symbols x, y, zeta, rho, xi, lambda
// ---------------------------------------------------------------------------
template <class B>
CurveFun<B> Curve<B>::parse(const std::string& text) const {
    struct Parser {
        const Curve* cv;
        const std::string& s;
        size_t i = 0;

        void skip() {
            while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        }
        bool eat(char c) {
            skip();
            if (i < s.size() && s[i] == c) {
                ++i;
                return true;
            }
            return false;
        }
        [[noreturn]] void fail(const std::string& msg) {
            throw std::invalid_argument("parse error at position " +
                                        std::to_string(i) + ": " + msg);
        }

        CF expr() {
            CF v = term();
            for (;;) {
                skip();
                if (eat('+'))
                    v = v + term();
                else if (eat('-'))
                    v = v - term();
                else
                    return v;
            }
        }
        CF term() {
            CF v = factor();
            for (;;) {
                skip();
                if (eat('*'))
                    v = v * factor();
                else if (eat('/'))
                    v = v / factor();
                else
                    return v;
            }
        }
        CF factor() {
            skip();
            if (eat('-')) return -factor();
            CF base = atom();
            skip();
            if (eat('^')) {
                skip();
                bool neg = eat('-');
                long e = integer();
                return base.pow(neg ? -e : e);
            }
            return base;
        }
        long integer() {
            skip();
            if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
                fail("expected integer");
            long v = 0;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
                v = v * 10 + (s[i++] - '0');
            return v;
        }
        CF atom() {
            skip();
            if (i >= s.size()) fail("unexpected end of input");
            if (s[i] == '(') {
                ++i;
                CF v = expr();
                if (!eat(')')) fail("expected ')'");
                return v;
            }
            if (std::isdigit(static_cast<unsigned char>(s[i])))
                return cv->constant(cv->backend().integer(integer()));
            size_t j = i;
            while (j < s.size() && std::isalpha(static_cast<unsigned char>(s[j]))) ++j;
            std::string name = s.substr(i, j - i);
            i = j;
            if (name == "x") return cv->x();
            if (name == "y") return cv->y();
            if (name == "zeta") return cv->constant(cv->backend().zeta_pow(1));
            if (name == "rho") return cv->constant(cv->backend().rho());
            if (name == "xi") return cv->constant(cv->backend().xi());
            if (name == "lambda") return cv->constant(cv->backend().lambda());
            fail("unknown symbol '" + name + "'");
        }
    };
    Parser p{this, text};
    CF v = p.expr();
    p.skip();
    if (p.i != text.size()) p.fail("trailing input");
    return v;
}

}  // namespace hgc
