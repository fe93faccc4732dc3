#pragma once

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace hgc {

/// Dense univariate polynomial over a field K.  K must provide zero()/one()
/// (as instance methods, so a runtime context can be threaded through),
/// arithmetic operators, inv(), is_zero() and cmp().
///
/// The zero polynomial is represented by an empty coefficient vector, so a
/// context-carrying zero element is never needed; operations that must mint
/// constants derive them from some operand coefficient.
template <class K>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
    explicit Poly(const K& constant) {
        if (!constant.is_zero()) c_.push_back(constant);
    }

    static Poly monomial(const K& coeff, int deg) {
        if (coeff.is_zero()) return Poly();
        std::vector<K> c(static_cast<size_t>(deg) + 1, coeff.zero());
        c.back() = coeff;
        return Poly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for 0

    const K& leading() const {
        assert(!c_.empty());
        return c_.back();
    }

    const K& coeff(int i) const {
        static const K* dummy = nullptr;
        (void)dummy;
        assert(i >= 0);
        if (i >= static_cast<int>(c_.size())) {
            // caller must not ask for coefficients of the zero polynomial
            assert(!c_.empty());
            zero_cache_ = c_.front().zero();
            return zero_cache_;
        }
        return c_[static_cast<size_t>(i)];
    }

    const std::vector<K>& coeffs() const { return c_; }

    Poly operator+(const Poly& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        std::vector<K> r(std::max(c_.size(), o.c_.size()), c_.front().zero());
        for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
        for (size_t i = 0; i < o.c_.size(); ++i) r[i] = r[i] + o.c_[i];
        return Poly(std::move(r));
    }

    Poly operator-() const {
        std::vector<K> r = c_;
        for (auto& x : r) x = -x;
        return Poly(std::move(r));
    }

    Poly operator-(const Poly& o) const { return *this + (-o); }

    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly();
        std::vector<K> r(c_.size() + o.c_.size() - 1, c_.front().zero());
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (size_t j = 0; j < o.c_.size(); ++j)
                r[i + j] = r[i + j] + c_[i] * o.c_[j];
        }
        return Poly(std::move(r));
    }

    Poly scaled(const K& s) const {
        if (s.is_zero()) return Poly();
        std::vector<K> r = c_;
        for (auto& x : r) x = x * s;
        return Poly(std::move(r));
    }

    /// Euclidean division; divisor must be nonzero.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw std::domain_error("poly division by zero");
        if (a.degree() < b.degree()) return {Poly(), a};
        K binv = b.leading().inv();
        std::vector<K> rem = a.c_;
        std::vector<K> quo(static_cast<size_t>(a.degree() - b.degree()) + 1,
                           binv.zero());
        for (int i = a.degree(); i >= b.degree(); --i) {
            K q = rem[static_cast<size_t>(i)] * binv;
            if (q.is_zero()) continue;
            quo[static_cast<size_t>(i - b.degree())] = q;
            for (int j = 0; j <= b.degree(); ++j) {
                size_t k = static_cast<size_t>(i - b.degree() + j);
                rem[k] = rem[k] - q * b.c_[static_cast<size_t>(j)];
            }
        }
        rem.resize(static_cast<size_t>(std::max(b.degree(), 0)),
                   binv.zero());
        return {Poly(std::move(quo)), Poly(std::move(rem))};
    }

    Poly operator/(const Poly& o) const { return divmod(*this, o).first; }
    Poly operator%(const Poly& o) const { return divmod(*this, o).second; }

    Poly monic() const {
        if (is_zero()) return *this;
        return scaled(leading().inv());
    }

    /// Monic gcd by the Euclidean algorithm.
    static Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    /// Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic.
    static std::tuple<Poly, Poly, Poly> ext_gcd(const Poly& a, const Poly& b) {
        Poly r0 = a, r1 = b;
        Poly one_p, zero_p;
        K k1 = (!a.is_zero() ? a.leading() : b.leading()).one();
        one_p = Poly(k1);
        Poly s0 = one_p, s1 = zero_p, t0 = zero_p, t1 = one_p;
        while (!r1.is_zero()) {
            auto [q, r] = divmod(r0, r1);
            Poly s2 = s0 - q * s1;
            Poly t2 = t0 - q * t1;
            r0 = std::move(r1); r1 = std::move(r);
            s0 = std::move(s1); s1 = std::move(s2);
            t0 = std::move(t1); t1 = std::move(t2);
        }
        if (r0.is_zero()) return {r0, s0, t0};
        K lc = r0.leading().inv();
        return {r0.scaled(lc), s0.scaled(lc), t0.scaled(lc)};
    }

    K eval(const K& x) const {
        if (is_zero()) return x.zero();
        K acc = c_.back();
        for (int i = degree() - 1; i >= 0; --i)
            acc = acc * x + c_[static_cast<size_t>(i)];
        return acc;
    }

    Poly derivative() const {
        if (degree() <= 0) return Poly();
        std::vector<K> r;
        r.reserve(c_.size() - 1);
        for (int i = 1; i <= degree(); ++i) {
            K f = c_.front().zero();
            K one = c_.front().one();
            for (int k = 0; k < i; ++k) f = f + one;
            r.push_back(c_[static_cast<size_t>(i)] * f);
        }
        return Poly(std::move(r));
    }

    bool operator==(const Poly& o) const {
        if (c_.size() != o.c_.size()) return false;
        for (size_t i = 0; i < c_.size(); ++i)
            if (!(c_[i] == o.c_[i])) return false;
        return true;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    int cmp(const Poly& o) const {
        if (c_.size() != o.c_.size()) return c_.size() < o.c_.size() ? -1 : 1;
        for (size_t i = 0; i < c_.size(); ++i) {
            int c = c_[i].cmp(o.c_[i]);
            if (c != 0) return c;
        }
        return 0;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<K> c_;
    mutable K zero_cache_;
};

}  // namespace hgc
