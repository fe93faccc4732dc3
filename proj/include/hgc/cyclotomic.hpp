#pragma once

#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "hgc/poly.hpp"
#include "hgc/rational.hpp"

namespace hgc {

/// Shared data for arithmetic in Q(zeta_N): the cyclotomic polynomial
/// Phi_N and its degree phi(N).  For prime N this is 1 + X + ... + X^{N-1};
/// for composite N the true Phi_N is computed by dividing X^N - 1 by the
/// Phi_d of the proper divisors.
struct CycloCtx {
    int N = 0;
    Poly<Rat> phi;  // monic, degree phi(N)
    int deg = 0;

    explicit CycloCtx(int n) : N(n) {
        if (n < 1) throw std::invalid_argument("N must be >= 1");
        std::map<int, Poly<Rat>> cache;
        phi = cyclotomic(n, cache);
        deg = phi.degree();
    }

    static Poly<Rat> cyclotomic(int n, std::map<int, Poly<Rat>>& cache) {
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
        // X^n - 1
        std::vector<Rat> xn(static_cast<size_t>(n) + 1, Rat(0));
        xn[0] = Rat(-1);
        xn[static_cast<size_t>(n)] = Rat(1);
        Poly<Rat> p{std::vector<Rat>(xn)};
        for (int d = 1; d < n; ++d) {
            if (n % d == 0) p = p / cyclotomic(d, cache);
        }
        cache[n] = p;
        return p;
    }
};

/// Element of Q(zeta_N), stored as a residue modulo Phi_N.
class Cyclo {
public:
    Cyclo() = default;
    Cyclo(const CycloCtx* ctx, Poly<Rat> rep) : ctx_(ctx), rep_(std::move(rep)) {
        reduce();
    }
    static Cyclo from_rat(const CycloCtx* ctx, const Rat& r) {
        return Cyclo(ctx, Poly<Rat>(r));
    }
    static Cyclo integer(const CycloCtx* ctx, long n) {
        return from_rat(ctx, Rat(n));
    }
    /// zeta_N^k
    static Cyclo zeta_pow(const CycloCtx* ctx, long k) {
        long n = ctx->N;
        long r = ((k % n) + n) % n;
        Cyclo z(ctx, Poly<Rat>::monomial(Rat(1), static_cast<int>(r)));
        return z;
    }

    const CycloCtx* ctx() const { return ctx_; }
    const Poly<Rat>& rep() const { return rep_; }

    Cyclo zero() const { return Cyclo(ctx_, Poly<Rat>()); }
    Cyclo one() const { return Cyclo(ctx_, Poly<Rat>(Rat(1))); }

    bool is_zero() const { return rep_.is_zero(); }
    bool is_one() const { return rep_.degree() == 0 && rep_.coeff(0).is_one(); }

    Cyclo operator+(const Cyclo& o) const { return Cyclo(ctx_, rep_ + o.rep_); }
    Cyclo operator-(const Cyclo& o) const { return Cyclo(ctx_, rep_ - o.rep_); }
    Cyclo operator*(const Cyclo& o) const { return Cyclo(ctx_, rep_ * o.rep_); }
    Cyclo operator-() const { return Cyclo(ctx_, -rep_); }

    Cyclo inv() const {
        if (is_zero()) throw std::domain_error("division by zero in Q(zeta)");
        if (rep_.degree() == 0) return from_rat(ctx_, rep_.coeff(0).inv());
        auto [g, s, t] = Poly<Rat>::ext_gcd(rep_, ctx_->phi);
        if (g.degree() != 0)
            throw std::logic_error("Phi_N not coprime to nonzero residue");
        (void)t;
        return Cyclo(ctx_, s.scaled(g.coeff(0).inv()));
    }

    Cyclo operator/(const Cyclo& o) const { return *this * o.inv(); }

    bool operator==(const Cyclo& o) const { return rep_ == o.rep_; }
    bool operator!=(const Cyclo& o) const { return !(*this == o); }

    int cmp(const Cyclo& o) const { return rep_.cmp(o.rep_); }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (int i = 0; i <= rep_.degree(); ++i) {
            const Rat& c = rep_.coeff(i);
            if (c.is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += c.str();
            if (i >= 1) s += "*zeta" + (i > 1 ? "^" + std::to_string(i) : "");
        }
        return s;
    }

private:
    void reduce() {
        if (rep_.degree() >= ctx_->deg) rep_ = rep_ % ctx_->phi;
    }

    const CycloCtx* ctx_ = nullptr;
    Poly<Rat> rep_;
};

}  // namespace hgc
