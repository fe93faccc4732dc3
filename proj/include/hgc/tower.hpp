#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgc/cyclotomic.hpp"
#include "hgc/poly.hpp"

namespace hgc {

struct TowerCtx;

/// Rational function in the indeterminate lambda over Q(zeta_N).
/// Denominator is monic and coprime to the numerator; the representation
/// is unique, so equality and ordering are structural.
class LambdaRat {
public:
    LambdaRat() = default;
    LambdaRat(Poly<Cyclo> num, Poly<Cyclo> den) : num_(std::move(num)), den_(std::move(den)) {
        normalize();
    }
    explicit LambdaRat(Poly<Cyclo> num) : num_(std::move(num)) {
        if (!num_.is_zero())
            den_ = Poly<Cyclo>(num_.leading().one());
        else
            den_ = Poly<Cyclo>();
    }
    static LambdaRat from_cyclo(const Cyclo& c) {
        LambdaRat r;
        r.num_ = Poly<Cyclo>(c);
        r.den_ = Poly<Cyclo>(c.one());
        return r;
    }
    /// lambda^k as a polynomial
    static LambdaRat lambda_pow(const CycloCtx* cc, int k) {
        LambdaRat r;
        Cyclo one = Cyclo::integer(cc, 1);
        r.num_ = Poly<Cyclo>::monomial(one, k);
        r.den_ = Poly<Cyclo>(one);
        return r;
    }

    const Poly<Cyclo>& num() const { return num_; }
    const Poly<Cyclo>& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const {
        return num_.degree() == 0 && den_.degree() == 0 && num_.coeff(0).is_one();
    }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

    LambdaRat zero() const { return LambdaRat(Poly<Cyclo>(), den_); }
    LambdaRat one() const {
        Cyclo c = den_.leading().one();
        return from_cyclo(c);
    }

    LambdaRat operator+(const LambdaRat& o) const { return add(o, false); }
    LambdaRat operator-(const LambdaRat& o) const { return add(o, true); }
    LambdaRat operator*(const LambdaRat& o) const {
        if (is_zero() || o.is_zero()) return zero();
        // cross-cancel before multiplying so degrees stay small
        Poly<Cyclo> n1 = num_, d2 = o.den_;
        Poly<Cyclo> n2 = o.num_, d1 = den_;
        cancel(n1, d2);
        cancel(n2, d1);
        LambdaRat r;
        r.num_ = n1 * n2;
        r.den_ = d1 * d2;
        r.make_monic();
        return r;
    }
    LambdaRat operator-() const {
        LambdaRat r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    LambdaRat inv() const {
        if (is_zero()) throw std::domain_error("division by zero in Q(zeta)(lambda)");
        return LambdaRat(den_, num_);
    }
    LambdaRat operator/(const LambdaRat& o) const { return *this * o.inv(); }

    bool operator==(const LambdaRat& o) const {
        return num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const LambdaRat& o) const { return !(*this == o); }

    int cmp(const LambdaRat& o) const {
        int c = num_.cmp(o.num_);
        if (c != 0) return c;
        return den_.cmp(o.den_);
    }

    std::string str() const;

private:
    /// Smallest exponent with a nonzero coefficient.
    static int low_val(const Poly<Cyclo>& p) {
        for (int i = 0; i <= p.degree(); ++i)
            if (!p.coeff(i).is_zero()) return i;
        return 0;
    }
    static bool is_monomial(const Poly<Cyclo>& p) {
        return low_val(p) == p.degree();
    }
    static Poly<Cyclo> shifted_down(const Poly<Cyclo>& p, int k) {
        std::vector<Cyclo> c(p.coeffs().begin() + k, p.coeffs().end());
        return Poly<Cyclo>(std::move(c));
    }
    /// Multiplicity of the factor (lambda - 1) in p, capped at `cap`,
    /// removing the factors by synthetic division as it counts.
    static int strip_lambda_minus_one(Poly<Cyclo>& p, int cap) {
        int k = 0;
        Cyclo one = p.leading().one();
        while (k < cap && p.degree() >= 1 && p.eval(one).is_zero()) {
            // synthetic division by (lambda - 1)
            std::vector<Cyclo> q(static_cast<size_t>(p.degree()), p.leading().zero());
            Cyclo carry = p.leading().zero();
            for (int i = p.degree(); i >= 1; --i) {
                carry = carry + p.coeff(i);
                q[static_cast<size_t>(i - 1)] = carry;
            }
            p = Poly<Cyclo>(std::move(q));
            ++k;
        }
        return k;
    }
    /// Remove the common factor of n and d.  Denominators in this tower are
    /// very often lambda^a (lambda-1)^b times a unit (norms from the xi layer
    /// produce powers of lambda, and xi^{2N} reduction produces powers of
    /// 1-lambda), so those factors are cancelled by valuation and synthetic
    /// division; a polynomial gcd runs only on what remains.
    static void cancel(Poly<Cyclo>& n, Poly<Cyclo>& d) {
        if (n.degree() < 1 || d.degree() < 1) return;
        int s = std::min(low_val(n), low_val(d));
        if (s > 0) {
            n = shifted_down(n, s);
            d = shifted_down(d, s);
        }
        if (n.degree() >= 1 && d.degree() >= 1) {
            Poly<Cyclo> n1 = n;
            int kn = strip_lambda_minus_one(n1, d.degree());
            if (kn > 0) {
                Poly<Cyclo> d1 = d;
                int kd = strip_lambda_minus_one(d1, kn);
                if (kd > 0) {
                    // re-divide to the common multiplicity
                    n = n1;
                    d = d1;
                    for (int i = kd; i < kn; ++i) n = mul_lambda_minus_one(n);
                }
            }
        }
        if (n.degree() < 1 || d.degree() < 1) return;
        if (is_monomial(d) || is_monomial(n)) return;
        Poly<Cyclo> g = Poly<Cyclo>::gcd(n, d);
        if (g.degree() > 0) {
            n = n / g;
            d = d / g;
        }
    }
    static Poly<Cyclo> mul_lambda_minus_one(const Poly<Cyclo>& p) {
        std::vector<Cyclo> c(static_cast<size_t>(p.degree()) + 2, p.leading().zero());
        for (int i = 0; i <= p.degree(); ++i) {
            c[static_cast<size_t>(i + 1)] = c[static_cast<size_t>(i + 1)] + p.coeff(i);
            c[static_cast<size_t>(i)] = c[static_cast<size_t>(i)] - p.coeff(i);
        }
        return Poly<Cyclo>(std::move(c));
    }

    LambdaRat add(const LambdaRat& o, bool sub) const {
        if (o.is_zero()) return *this;
        if (is_zero()) return sub ? -o : o;
        if (den_ == o.den_) {
            // common case; only the (already reduced) shared denominator can
            // cancel against the new numerator
            Poly<Cyclo> n = sub ? num_ - o.num_ : num_ + o.num_;
            return LambdaRat(std::move(n), den_);
        }
        Poly<Cyclo> da = den_, db = o.den_;
        if (is_monomial(da) || is_monomial(db)) {
            int s = std::min(low_val(da), low_val(db));
            if (s > 0) {
                da = shifted_down(da, s);
                db = shifted_down(db, s);
            }
        } else {
            Poly<Cyclo> g = Poly<Cyclo>::gcd(da, db);
            if (g.degree() > 0) {
                da = da / g;
                db = db / g;
            }
        }
        // num_/den_ +- o.num_/o.den_ with den_ = g*da, o.den_ = g*db
        Poly<Cyclo> n = sub ? num_ * db - o.num_ * da : num_ * db + o.num_ * da;
        return LambdaRat(std::move(n), da * o.den_);
    }

    void make_monic() {
        Cyclo lc = den_.leading();
        if (!lc.is_one()) {
            Cyclo li = lc.inv();
            num_ = num_.scaled(li);
            den_ = den_.scaled(li);
        }
    }

    void normalize() {
        if (den_.is_zero()) throw std::domain_error("zero denominator in lambda layer");
        if (num_.is_zero()) {
            den_ = Poly<Cyclo>(den_.leading().one());
            return;
        }
        cancel(num_, den_);
        make_monic();
    }

    Poly<Cyclo> num_;
    Poly<Cyclo> den_;  // monic
};

/// Context for the full coefficient tower K0 = Q(zeta_N)(lambda)(xi),
/// xi^{2N} = (1-lambda)^{-1}.  Holds the cyclotomic layer and the data of
/// the defining relation.  The sign of xi is configurable so that the
/// xi -> -xi stability of certificates can be expercised by rebuilding the
/// context with the generator negated.
struct TowerCtx {
    int N;
    std::shared_ptr<CycloCtx> cyc;
    LambdaRat one_minus_lambda;      // 1 - lambda
    LambdaRat inv_one_minus_lambda;  // xi^{2N}
    int xi_sign;                     // +1 or -1; tower generator is xi_sign * xi

    explicit TowerCtx(int n, int sign = 1)
        : N(n), cyc(std::make_shared<CycloCtx>(n)), xi_sign(sign) {
        Cyclo c1 = Cyclo::integer(cyc.get(), 1);
        Poly<Cyclo> oml{std::vector<Cyclo>{c1, -c1}};  // 1 - lambda
        one_minus_lambda = LambdaRat(oml);
        inv_one_minus_lambda = one_minus_lambda.inv();
    }
};

/// Element of K0 = Q(zeta_N)(lambda)(xi): residue modulo
/// xi^{2N} - (1-lambda)^{-1}, i.e. a vector of 2N lambda-rational
/// coordinates.  The defining polynomial is irreducible over
/// Q(zeta_N)(lambda) (total ramification at lambda = 1), so every nonzero
/// element is invertible; a failed inversion of a nonzero element would
/// falsify that assumption and aborts loudly.
class TowerScalar {
public:
    TowerScalar() = default;
    TowerScalar(const TowerCtx* ctx, std::vector<LambdaRat> comps)
        : ctx_(ctx), c_(std::move(comps)) {
        c_.resize(static_cast<size_t>(2 * ctx->N),
                  LambdaRat::from_cyclo(Cyclo::integer(ctx->cyc.get(), 0)));
    }

    static TowerScalar from_lr(const TowerCtx* ctx, const LambdaRat& v) {
        std::vector<LambdaRat> c;
        c.push_back(v);
        return TowerScalar(ctx, std::move(c));
    }
    static TowerScalar integer(const TowerCtx* ctx, long n) {
        Cyclo c = Cyclo::integer(ctx->cyc.get(), n);
        return from_lr(ctx, LambdaRat::from_cyclo(c));
    }
    static TowerScalar from_cyclo(const TowerCtx* ctx, const Cyclo& c) {
        return from_lr(ctx, LambdaRat::from_cyclo(c));
    }
    static TowerScalar zeta_pow(const TowerCtx* ctx, long k) {
        return from_cyclo(ctx, Cyclo::zeta_pow(ctx->cyc.get(), k));
    }
    static TowerScalar lambda(const TowerCtx* ctx) {
        return from_lr(ctx, LambdaRat::lambda_pow(ctx->cyc.get(), 1));
    }
    /// xi^k for k >= 0, honoring the context's xi sign.
    static TowerScalar xi_pow(const TowerCtx* ctx, long k) {
        long twoN = 2 * ctx->N;
        long q = k >= 0 ? k / twoN : -((-k + twoN - 1) / twoN);
        long r = k - q * twoN;  // 0 <= r < 2N
        std::vector<LambdaRat> c(static_cast<size_t>(twoN),
                                 LambdaRat::from_cyclo(Cyclo::integer(ctx->cyc.get(), 0)));
        LambdaRat unit = LambdaRat::from_cyclo(Cyclo::integer(ctx->cyc.get(), 1));
        // xi^{2N} = 1/(1-lambda)
        LambdaRat fold = ctx->inv_one_minus_lambda;
        LambdaRat scale = unit;
        if (q > 0)
            for (long i = 0; i < q; ++i) scale = scale * fold;
        else
            for (long i = 0; i < -q; ++i) scale = scale * ctx->one_minus_lambda;
        if ((ctx->xi_sign < 0) && (((k % 2) + 2) % 2 == 1)) scale = -scale;
        c[static_cast<size_t>(r)] = scale;
        return TowerScalar(ctx, std::move(c));
    }
    static TowerScalar xi(const TowerCtx* ctx) { return xi_pow(ctx, 1); }
    /// rho = xi^{-2}, so rho^N = 1 - lambda.
    static TowerScalar rho(const TowerCtx* ctx) { return xi_pow(ctx, -2); }
    static TowerScalar rho_inv(const TowerCtx* ctx) { return xi_pow(ctx, 2); }

    const TowerCtx* ctx() const { return ctx_; }
    const std::vector<LambdaRat>& comps() const { return c_; }

    TowerScalar zero() const { return integer(ctx_, 0); }
    TowerScalar one() const { return integer(ctx_, 1); }
    TowerScalar from_int(long n) const { return integer(ctx_, n); }

    bool is_zero() const {
        for (const auto& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }
    bool is_one() const {
        if (!c_[0].is_one()) return false;
        for (size_t i = 1; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return false;
        return true;
    }

    TowerScalar operator+(const TowerScalar& o) const {
        check(o);
        std::vector<LambdaRat> r = c_;
        for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] + o.c_[i];
        return TowerScalar(ctx_, std::move(r));
    }
    TowerScalar operator-(const TowerScalar& o) const {
        check(o);
        std::vector<LambdaRat> r = c_;
        for (size_t i = 0; i < r.size(); ++i) r[i] = r[i] - o.c_[i];
        return TowerScalar(ctx_, std::move(r));
    }
    TowerScalar operator-() const {
        std::vector<LambdaRat> r = c_;
        for (auto& x : r) x = -x;
        return TowerScalar(ctx_, std::move(r));
    }
    TowerScalar operator*(const TowerScalar& o) const {
        check(o);
        size_t n = c_.size();
        std::vector<LambdaRat> r(n, c_[0].zero());
        const LambdaRat& fold = ctx_->inv_one_minus_lambda;
        for (size_t i = 0; i < n; ++i) {
            if (c_[i].is_zero()) continue;
            for (size_t j = 0; j < n; ++j) {
                if (o.c_[j].is_zero()) continue;
                LambdaRat p = c_[i] * o.c_[j];
                size_t k = i + j;
                if (k >= n) {
                    k -= n;
                    p = p * fold;
                }
                r[k] = r[k] + p;
            }
        }
        return TowerScalar(ctx_, std::move(r));
    }

    TowerScalar inv() const {
        if (is_zero()) throw std::domain_error("division by zero in tower");
        // extended Euclid against xi^{2N} - 1/(1-lambda) over Q(zeta)(lambda)
        Poly<LambdaRat> a{std::vector<LambdaRat>(c_)};
        size_t n = c_.size();
        std::vector<LambdaRat> def(n + 1, c_[0].zero());
        def[0] = -ctx_->inv_one_minus_lambda;
        def[n] = c_[0].zero().one();
        Poly<LambdaRat> m{std::move(def)};
        auto [g, s, t] = Poly<LambdaRat>::ext_gcd(a, m);
        (void)t;
        if (g.degree() != 0)
            throw std::logic_error(
                "tower defining polynomial found reducible: nonzero element "
                "with non-unit gcd");
        LambdaRat gi = g.coeff(0).inv();
        std::vector<LambdaRat> r(n, c_[0].zero());
        for (int i = 0; i <= s.degree() && i < static_cast<int>(n); ++i)
            r[static_cast<size_t>(i)] = s.coeff(i) * gi;
        return TowerScalar(ctx_, std::move(r));
    }
    TowerScalar operator/(const TowerScalar& o) const { return *this * o.inv(); }

    TowerScalar pow(long k) const {
        if (k < 0) return inv().pow(-k);
        TowerScalar r = one();
        TowerScalar b = *this;
        while (k > 0) {
            if (k & 1) r = r * b;
            k >>= 1;
            if (k) b = b * b;
        }
        return r;
    }

    bool operator==(const TowerScalar& o) const {
        for (size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != o.c_[i]) return false;
        return true;
    }
    bool operator!=(const TowerScalar& o) const { return !(*this == o); }

    int cmp(const TowerScalar& o) const {
        for (size_t i = 0; i < c_.size(); ++i) {
            int c = c_[i].cmp(o.c_[i]);
            if (c != 0) return c;
        }
        return 0;
    }

    std::string str() const;

private:
    void check(const TowerScalar& o) const {
        if (ctx_ != o.ctx_)
            throw std::invalid_argument("tower scalar backend mismatch");
    }

    const TowerCtx* ctx_ = nullptr;
    std::vector<LambdaRat> c_;
};

inline std::string LambdaRat::str() const {
    if (is_zero()) return "0";
    auto poly_str = [](const Poly<Cyclo>& p) {
        std::string s;
        for (int i = 0; i <= p.degree(); ++i) {
            const Cyclo& c = p.coeff(i);
            if (c.is_zero()) continue;
            if (!s.empty()) s += " + ";
            std::string cs = c.str();
            if (cs.find('+') != std::string::npos) cs = "(" + cs + ")";
            if (i == 0)
                s += cs;
            else {
                if (cs != "1") s += cs + "*";
                s += "lambda";
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s.empty() ? std::string("0") : s;
    };
    std::string n = poly_str(num_);
    if (den_.degree() == 0) return n;
    return "(" + n + ")/(" + poly_str(den_) + ")";
}

inline std::string TowerScalar::str() const {
    if (is_zero()) return "0";
    std::string s;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        if (!s.empty()) s += " + ";
        std::string cs = c_[i].str();
        if (cs.find('+') != std::string::npos || cs.find('/') != std::string::npos)
            cs = "(" + cs + ")";
        if (i == 0)
            s += cs;
        else {
            if (cs != "1") s += cs + "*";
            s += "xi";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

}  // namespace hgc
