#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

#include "hgc/tower.hpp"

namespace hgc {

/// Thrown when a lambda-layer denominator vanishes at the chosen lambda_0;
/// the caller is expected to retry with a fresh specialization.
struct SpecializationPole : std::runtime_error {
    SpecializationPole() : std::runtime_error("denominator vanishes at lambda_0") {}
};

/// Specialization data: prime q = 1 (mod 2N) and concrete values for
/// zeta_N, lambda and xi in F_q satisfying the tower relations exactly.
struct FFCtx {
    int N = 0;
    uint64_t q = 0;
    uint64_t zeta0 = 0;    // primitive N-th root of unity
    uint64_t lambda0 = 0;  // not 0 or 1
    uint64_t xi0 = 0;      // xi0^{2N} * (1 - lambda0) = 1

    static uint64_t pow_mod(uint64_t b, uint64_t e, uint64_t q) {
        uint64_t r = 1 % q;
        b %= q;
        while (e) {
            if (e & 1) r = (__uint128_t)r * b % q;
            b = (__uint128_t)b * b % q;
            e >>= 1;
        }
        return r;
    }
    static uint64_t inv_mod(uint64_t a, uint64_t q) {
        if (a == 0) throw std::domain_error("division by zero in F_q");
        return pow_mod(a, q - 2, q);
    }
    static bool is_prime(uint64_t n) {
        if (n < 2) return false;
        for (uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    void validate() const {
        if (!is_prime(q)) throw std::invalid_argument("q is not prime");
        if ((q - 1) % static_cast<uint64_t>(2 * N) != 0)
            throw std::invalid_argument("q != 1 (mod 2N)");
        if (lambda0 == 0 || lambda0 == 1)
            throw std::invalid_argument("lambda_0 in {0,1}");
        if (pow_mod(zeta0, static_cast<uint64_t>(N), q) != 1)
            throw std::invalid_argument("zeta_0^N != 1");
        // primitivity
        for (int d = 1; d < N; ++d)
            if (N % d == 0 && pow_mod(zeta0, static_cast<uint64_t>(d), q) == 1)
                throw std::invalid_argument("zeta_0 not a primitive N-th root");
        uint64_t lhs = (__uint128_t)pow_mod(xi0, static_cast<uint64_t>(2 * N), q) *
                       ((q + 1 - lambda0) % q) % q;
        if (lhs != 1) throw std::invalid_argument("xi_0^{2N}(1-lambda_0) != 1");
    }

    /// Deterministic random search for a valid specialization at the given
    /// prime (or the smallest admissible prime above 2N if q == 0).
    static FFCtx search(int N, uint64_t q, uint64_t seed) {
        if (q == 0) {
            q = static_cast<uint64_t>(4 * N) + 1;
            while (!is_prime(q) || (q - 1) % static_cast<uint64_t>(2 * N) != 0) ++q;
        }
        if (!is_prime(q) || (q - 1) % static_cast<uint64_t>(2 * N) != 0)
            throw std::invalid_argument("q must be a prime = 1 (mod 2N)");
        // with q = 2N+1 every 2N-th power is 1, forcing lambda = 0
        if (q - 1 == static_cast<uint64_t>(2 * N))
            throw std::invalid_argument("q too small: x^{2N}=1 for all x, lambda would be 0");
        // find a generator of F_q^*
        uint64_t g = 2;
        auto is_gen = [&](uint64_t cand) {
            uint64_t m = q - 1;
            for (uint64_t d = 2; d * d <= m; ++d) {
                if (m % d == 0) {
                    if (pow_mod(cand, m / d, q) == 1) return false;
                    if (pow_mod(cand, d, q) == 1) return false;
                }
            }
            return pow_mod(cand, m, q) == 1;
        };
        while (!is_gen(g)) ++g;
        FFCtx c;
        c.N = N;
        c.q = q;
        c.zeta0 = pow_mod(g, (q - 1) / static_cast<uint64_t>(N), q);
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<uint64_t> dist(1, q - 1);
        for (int tries = 0; tries < 4096; ++tries) {
            // choose xi first, then lambda is forced: 1-lambda = xi^{-2N}
            uint64_t xi = dist(rng);
            uint64_t t = pow_mod(xi, static_cast<uint64_t>(2 * N), q);
            uint64_t one_minus_lambda = inv_mod(t, q);
            uint64_t lambda = (q + 1 - one_minus_lambda) % q;
            if (lambda == 0 || lambda == 1) continue;
            c.lambda0 = lambda;
            c.xi0 = xi;
            c.validate();
            return c;
        }
        throw std::runtime_error("no valid finite-field specialization found");
    }
};

/// Element of F_q tied to an FFCtx.  Implements the same scalar interface
/// as TowerScalar so the curve layers can be instantiated with either.
class FFScalar {
public:
    FFScalar() = default;
    FFScalar(const FFCtx* ctx, uint64_t v) : ctx_(ctx), v_(v % ctx->q) {}

    static FFScalar integer(const FFCtx* ctx, long n) {
        long q = static_cast<long>(ctx->q);
        long r = ((n % q) + q) % q;
        return FFScalar(ctx, static_cast<uint64_t>(r));
    }
    static FFScalar zeta_pow(const FFCtx* ctx, long k) {
        long n = ctx->N;
        long r = ((k % n) + n) % n;
        return FFScalar(ctx, FFCtx::pow_mod(ctx->zeta0, static_cast<uint64_t>(r), ctx->q));
    }
    static FFScalar lambda(const FFCtx* ctx) { return FFScalar(ctx, ctx->lambda0); }
    static FFScalar xi_pow(const FFCtx* ctx, long k) {
        uint64_t q = ctx->q;
        uint64_t x = ctx->xi0;
        if (k < 0) {
            x = FFCtx::inv_mod(x, q);
            k = -k;
        }
        return FFScalar(ctx, FFCtx::pow_mod(x, static_cast<uint64_t>(k), q));
    }
    static FFScalar xi(const FFCtx* ctx) { return xi_pow(ctx, 1); }
    static FFScalar rho(const FFCtx* ctx) { return xi_pow(ctx, -2); }
    static FFScalar rho_inv(const FFCtx* ctx) { return xi_pow(ctx, 2); }

    const FFCtx* ctx() const { return ctx_; }
    uint64_t value() const { return v_; }

    FFScalar zero() const { return FFScalar(ctx_, 0); }
    FFScalar one() const { return FFScalar(ctx_, 1); }
    FFScalar from_int(long n) const { return integer(ctx_, n); }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    FFScalar operator+(const FFScalar& o) const {
        check(o);
        return FFScalar(ctx_, v_ + o.v_ >= ctx_->q ? v_ + o.v_ - ctx_->q : v_ + o.v_);
    }
    FFScalar operator-(const FFScalar& o) const {
        check(o);
        return FFScalar(ctx_, v_ >= o.v_ ? v_ - o.v_ : v_ + ctx_->q - o.v_);
    }
    FFScalar operator-() const { return FFScalar(ctx_, v_ == 0 ? 0 : ctx_->q - v_); }
    FFScalar operator*(const FFScalar& o) const {
        check(o);
        return FFScalar(ctx_, (__uint128_t)v_ * o.v_ % ctx_->q);
    }
    FFScalar inv() const { return FFScalar(ctx_, FFCtx::inv_mod(v_, ctx_->q)); }
    FFScalar operator/(const FFScalar& o) const { return *this * o.inv(); }

    FFScalar pow(long k) const {
        FFScalar b = *this;
        if (k < 0) {
            b = inv();
            k = -k;
        }
        return FFScalar(ctx_, FFCtx::pow_mod(b.v_, static_cast<uint64_t>(k), ctx_->q));
    }

    bool operator==(const FFScalar& o) const { return v_ == o.v_; }
    bool operator!=(const FFScalar& o) const { return v_ != o.v_; }
    int cmp(const FFScalar& o) const { return v_ < o.v_ ? -1 : (v_ > o.v_ ? 1 : 0); }

    std::string str() const { return std::to_string(v_); }

private:
    void check(const FFScalar& o) const {
        if (ctx_ != o.ctx_)
            throw std::invalid_argument("finite-field backend mismatch");
    }

    const FFCtx* ctx_ = nullptr;
    uint64_t v_ = 0;
};

/// Ring homomorphism K0 -> F_q determined by an FFCtx.
inline FFScalar specialize(const Rat& r, const FFCtx& spec) {
    const mpq_class& v = r.raw();
    mpz_class num = v.get_num(), den = v.get_den();
    mpz_class q(static_cast<unsigned long>(spec.q));
    mpz_class nr = num % q;
    if (nr < 0) nr += q;
    mpz_class dr = den % q;
    if (dr == 0) throw SpecializationPole();
    uint64_t nu = nr.get_ui();
    uint64_t du = dr.get_ui();
    return FFScalar(&spec, (__uint128_t)nu * FFCtx::inv_mod(du, spec.q) % spec.q);
}

inline FFScalar specialize(const Cyclo& c, const FFCtx& spec) {
    FFScalar z = FFScalar::zeta_pow(&spec, 1);
    FFScalar acc = z.zero();
    for (int i = c.rep().degree(); i >= 0; --i)
        acc = acc * z + specialize(c.rep().coeff(i), spec);
    return acc;
}

inline FFScalar specialize(const LambdaRat& r, const FFCtx& spec) {
    FFScalar l = FFScalar::lambda(&spec);
    auto eval = [&](const Poly<Cyclo>& p) {
        FFScalar acc = l.zero();
        for (int i = p.degree(); i >= 0; --i)
            acc = acc * l + specialize(p.coeff(i), spec);
        return acc;
    };
    FFScalar den = eval(r.den());
    if (den.is_zero()) throw SpecializationPole();
    return eval(r.num()) / den;
}

inline FFScalar specialize(const TowerScalar& a, const FFCtx& spec) {
    // components are in the basis of powers of the internal generator,
    // whose image is xi0 regardless of the context's xi sign
    FFScalar x = FFScalar::xi_pow(&spec, 1);
    FFScalar acc = x.zero();
    const auto& c = a.comps();
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
        acc = acc * x + specialize(c[static_cast<size_t>(i)], spec);
    return acc;
}

}  // namespace hgc
