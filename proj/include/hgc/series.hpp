#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hgc {

/// Truncated Laurent series sum_{k >= lo} c_k t^k with coefficients known for
/// all exponents k < prec.  The zero-to-precision series has an empty
/// coefficient vector and lo == prec.  Every series carries a sample scalar
/// used to mint ring constants (the scalar types are context-dependent).
template <class S>
class LSeries {
public:
    LSeries(const S& sample, int prec)
        : zr_(sample.zero()), lo_(prec), prec_(prec) {}
    LSeries(const S& sample, int lo, std::vector<S> coeffs, int prec)
        : zr_(sample.zero()), lo_(lo), c_(std::move(coeffs)), prec_(prec) {
        normalize();
    }

    static LSeries constant(const S& value, int prec) {
        return LSeries(value, 0, {value}, prec);
    }
    /// The monomial t^k.
    static LSeries t_pow(const S& sample, int k, int prec) {
        return LSeries(sample, k, {sample.one()}, prec);
    }

    int lo() const { return lo_; }
    int prec() const { return prec_; }
    bool is_zero() const { return c_.empty(); }

    /// Valuation, or nullopt when the series vanishes to known precision.
    std::optional<int> val() const {
        if (c_.empty()) return std::nullopt;
        return lo_;
    }

    const S& coeff(int k) const {
        if (k >= prec_)
            throw std::out_of_range("series coefficient beyond precision");
        if (k < lo_ || k >= lo_ + static_cast<int>(c_.size())) return zr_;
        return c_[static_cast<size_t>(k - lo_)];
    }

    LSeries truncated(int new_prec) const {
        if (new_prec >= prec_) return *this;
        std::vector<S> c;
        for (int k = lo_; k < new_prec && k < lo_ + static_cast<int>(c_.size()); ++k)
            c.push_back(c_[static_cast<size_t>(k - lo_)]);
        return LSeries(zr_, lo_, std::move(c), new_prec);
    }

    LSeries operator+(const LSeries& o) const {
        int p = std::min(prec_, o.prec_);
        int l = std::min(lo_, o.lo_);
        if (l >= p) return LSeries(zr_, p);
        std::vector<S> c(static_cast<size_t>(p - l), zr_);
        auto acc = [&](const LSeries& f, bool sub) {
            for (int k = f.lo_; k < p && k < f.lo_ + static_cast<int>(f.c_.size()); ++k) {
                S& slot = c[static_cast<size_t>(k - l)];
                const S& v = f.c_[static_cast<size_t>(k - f.lo_)];
                slot = sub ? slot - v : slot + v;
            }
        };
        acc(*this, false);
        acc(o, false);
        return LSeries(zr_, l, std::move(c), p);
    }
    LSeries operator-() const {
        std::vector<S> c = c_;
        for (auto& x : c) x = -x;
        return LSeries(zr_, lo_, std::move(c), prec_);
    }
    LSeries operator-(const LSeries& o) const { return *this + (-o); }

    LSeries operator*(const LSeries& o) const {
        if (c_.empty() || o.c_.empty()) {
            // 0 * f: the product is known wherever either factor forces it
            int p = std::min(prec_ + (o.c_.empty() ? 0 : o.lo_),
                             o.prec_ + (c_.empty() ? 0 : lo_));
            if (c_.empty() && o.c_.empty()) p = prec_ + o.prec_;
            return LSeries(zr_, p);
        }
        int p = std::min(prec_ + o.lo_, o.prec_ + lo_);
        int l = lo_ + o.lo_;
        if (l >= p) return LSeries(zr_, p);
        std::vector<S> c(static_cast<size_t>(p - l), zr_);
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (size_t j = 0; j < o.c_.size(); ++j) {
                size_t k = i + j;
                if (static_cast<int>(k) >= p - l) break;
                c[k] = c[k] + c_[i] * o.c_[j];
            }
        }
        return LSeries(zr_, l, std::move(c), p);
    }

    LSeries scaled(const S& a) const {
        std::vector<S> c = c_;
        for (auto& x : c) x = x * a;
        return LSeries(zr_, lo_, std::move(c), prec_);
    }

    /// Multiplicative inverse; the leading coefficient must be a unit and the
    /// series must not vanish to precision.
    LSeries inv() const {
        if (c_.empty())
            throw std::domain_error("inverse of series vanishing to precision");
        int m = prec_ - lo_;  // relative precision is preserved
        S a0i = c_.front().inv();
        std::vector<S> u(static_cast<size_t>(m), zr_);
        u[0] = a0i;
        for (int n = 1; n < m; ++n) {
            S s = zr_;
            for (int k = 1; k <= n && k < static_cast<int>(c_.size()); ++k)
                s = s + c_[static_cast<size_t>(k)] * u[static_cast<size_t>(n - k)];
            u[static_cast<size_t>(n)] = -(a0i * s);
        }
        return LSeries(zr_, -lo_, std::move(u), -lo_ + m);
    }

    LSeries pow(long k) const {
        if (k < 0) return inv().pow(-k);
        if (c_.empty()) {
            if (k == 0) return LSeries(zr_, 0, {zr_.one()}, prec_);
            return LSeries(zr_, prec_);
        }
        // work at fixed relative precision, then shift the exponent window
        LSeries r(zr_, 0, {zr_.one()}, prec_ - lo_);
        LSeries b = LSeries(zr_, 0, std::vector<S>(c_), prec_ - lo_);
        int shift = lo_ * static_cast<int>(k);
        while (k > 0) {
            if (k & 1) r = r * b;
            k >>= 1;
            if (k) b = b * b;
        }
        return LSeries(zr_, r.lo_ + shift, std::move(r.c_), r.prec_ + shift);
    }

    /// Formal d/dt.
    LSeries derivative() const {
        std::vector<S> c;
        int l = lo_ - 1;
        for (int k = lo_; k < lo_ + static_cast<int>(c_.size()); ++k) {
            if (k == 0) {
                if (!c.empty()) c.push_back(zr_);
                else ++l;
                continue;
            }
            S f = zr_;
            S one = zr_.one();
            int a = k >= 0 ? k : -k;
            for (int i = 0; i < a; ++i) f = f + one;
            if (k < 0) f = -f;
            c.push_back(c_[static_cast<size_t>(k - lo_)] * f);
        }
        return LSeries(zr_, l, std::move(c), prec_ - 1);
    }

    std::string str() const {
        std::string s;
        for (int k = lo_; k < lo_ + static_cast<int>(c_.size()); ++k) {
            const S& a = c_[static_cast<size_t>(k - lo_)];
            if (a.is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += "(" + a.str() + ")*t^" + std::to_string(k);
        }
        if (s.empty()) s = "0";
        return s + " + O(t^" + std::to_string(prec_) + ")";
    }

private:
    void normalize() {
        while (!c_.empty() && c_.front().is_zero()) {
            c_.erase(c_.begin());
            ++lo_;
        }
        if (lo_ + static_cast<int>(c_.size()) > prec_)
            c_.resize(static_cast<size_t>(std::max(prec_ - lo_, 0)));
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
        if (c_.empty()) lo_ = prec_;
    }

    S zr_;
    int lo_;
    std::vector<S> c_;
    int prec_;
};

}  // namespace hgc
