#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace hgc {

/// Arbitrary-precision rational, thin wrapper over mpq_class with the
/// field-element interface the generic polynomial layers expect.
class Rat {
public:
    Rat() : v_(0) {}
    explicit Rat(long n) : v_(n) {}
    Rat(long n, long d) : v_(n, d) { v_.canonicalize(); }
    explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    static Rat from_int(long n) { return Rat(n); }

    Rat zero() const { return Rat(0); }
    Rat one() const { return Rat(1); }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Rat operator+(const Rat& o) const { return Rat(mpq_class(v_ + o.v_)); }
    Rat operator-(const Rat& o) const { return Rat(mpq_class(v_ - o.v_)); }
    Rat operator*(const Rat& o) const { return Rat(mpq_class(v_ * o.v_)); }
    Rat operator/(const Rat& o) const { return Rat(mpq_class(v_ / o.v_)); }
    Rat operator-() const { return Rat(mpq_class(-v_)); }

    Rat inv() const { return Rat(mpq_class(1 / v_)); }

    bool operator==(const Rat& o) const { return v_ == o.v_; }
    bool operator!=(const Rat& o) const { return v_ != o.v_; }

    int cmp(const Rat& o) const { return ::cmp(v_, o.v_); }

    const mpq_class& raw() const { return v_; }

    std::string str() const { return v_.get_str(); }

private:
    mpq_class v_;
};

}  // namespace hgc
