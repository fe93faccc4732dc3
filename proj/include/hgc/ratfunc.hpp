#pragma once

#include <stdexcept>
#include <string>

#include "hgc/poly.hpp"

namespace hgc {

/// Reduced fraction of univariate polynomials over a field K.
/// Denominator monic and coprime to the numerator, so the representation
/// is canonical.
template <class K>
class RatFunc {
public:
    RatFunc() = default;
    RatFunc(Poly<K> num, Poly<K> den) : num_(std::move(num)), den_(std::move(den)) {
        normalize();
    }
    explicit RatFunc(Poly<K> num) : num_(std::move(num)) {
        K one = num_.is_zero() ? K() : num_.leading().one();
        if (num_.is_zero())
            throw std::logic_error("RatFunc(poly) needs a unit hint for zero; use from_const");
        den_ = Poly<K>(one);
    }
    static RatFunc from_const(const K& c) {
        RatFunc r;
        r.num_ = Poly<K>(c);
        r.den_ = Poly<K>(c.one());
        return r;
    }
    static RatFunc from_poly(const K& unit_hint, Poly<K> p) {
        RatFunc r;
        r.num_ = std::move(p);
        r.den_ = Poly<K>(unit_hint.one());
        return r;
    }

    const Poly<K>& num() const { return num_; }
    const Poly<K>& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const {
        return num_.degree() == 0 && den_.degree() == 0 && num_.coeff(0).is_one();
    }

    RatFunc zero() const { return from_poly(den_.leading(), Poly<K>()); }
    RatFunc one() const { return from_const(den_.leading().one()); }

    RatFunc operator+(const RatFunc& o) const {
        return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    RatFunc operator-(const RatFunc& o) const {
        return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    RatFunc operator*(const RatFunc& o) const {
        return RatFunc(num_ * o.num_, den_ * o.den_);
    }
    RatFunc operator-() const {
        RatFunc r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    RatFunc inv() const {
        if (is_zero()) throw std::domain_error("division by zero in K(x)");
        return RatFunc(den_, num_);
    }
    RatFunc operator/(const RatFunc& o) const { return *this * o.inv(); }

    bool operator==(const RatFunc& o) const {
        return num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    int cmp(const RatFunc& o) const {
        int c = num_.cmp(o.num_);
        if (c != 0) return c;
        return den_.cmp(o.den_);
    }

    /// Evaluate at a point of (an extension of) K.  Throws on a pole.
    K eval(const K& x) const {
        K d = den_.eval(x);
        if (d.is_zero()) throw std::domain_error("evaluation at a pole");
        return num_.eval(x) * d.inv();
    }

    RatFunc derivative() const {
        Poly<K> n = num_.derivative() * den_ - num_ * den_.derivative();
        return RatFunc(std::move(n), den_ * den_);
    }

private:
    void normalize() {
        if (den_.is_zero()) throw std::domain_error("zero denominator in K(x)");
        if (num_.is_zero()) {
            den_ = Poly<K>(den_.leading().one());
            return;
        }
        if (num_.degree() > 0 && den_.degree() > 0) {
            Poly<K> g = Poly<K>::gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = num_ / g;
                den_ = den_ / g;
            }
        }
        K lc = den_.leading();
        if (!lc.is_one()) {
            K li = lc.inv();
            num_ = num_.scaled(li);
            den_ = den_.scaled(li);
        }
    }

    Poly<K> num_;
    Poly<K> den_;
};

}  // namespace hgc
