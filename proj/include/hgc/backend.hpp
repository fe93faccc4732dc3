#pragma once

#include <memory>

#include "hgc/finite_field.hpp"
#include "hgc/tower.hpp"

namespace hgc {

/// Exact backend over K0 = Q(zeta_N)(lambda)(xi).  lambda stays symbolic;
/// no relation is ever imposed on it.
class SymbolicBackend {
public:
    using Scalar = TowerScalar;

    explicit SymbolicBackend(int n, int xi_sign = 1)
        : ctx_(std::make_shared<TowerCtx>(n, xi_sign)) {}

    int N() const { return ctx_->N; }
    const TowerCtx* ctx() const { return ctx_.get(); }

    Scalar integer(long n) const { return TowerScalar::integer(ctx_.get(), n); }
    Scalar zeta_pow(long k) const { return TowerScalar::zeta_pow(ctx_.get(), k); }
    Scalar lambda() const { return TowerScalar::lambda(ctx_.get()); }
    Scalar xi_pow(long k) const { return TowerScalar::xi_pow(ctx_.get(), k); }
    Scalar xi() const { return xi_pow(1); }
    Scalar rho() const { return xi_pow(-2); }
    Scalar rho_inv() const { return xi_pow(2); }

private:
    std::shared_ptr<TowerCtx> ctx_;
};

/// Fast randomized backend: everything specialized into a prime field.
class FiniteBackend {
public:
    using Scalar = FFScalar;

    explicit FiniteBackend(FFCtx spec) : ctx_(std::make_shared<FFCtx>(spec)) {
        ctx_->validate();
    }
    static FiniteBackend search(int n, uint64_t q, uint64_t seed) {
        return FiniteBackend(FFCtx::search(n, q, seed));
    }

    int N() const { return ctx_->N; }
    const FFCtx* ctx() const { return ctx_.get(); }

    Scalar integer(long n) const { return FFScalar::integer(ctx_.get(), n); }
    Scalar zeta_pow(long k) const { return FFScalar::zeta_pow(ctx_.get(), k); }
    Scalar lambda() const { return FFScalar::lambda(ctx_.get()); }
    Scalar xi_pow(long k) const { return FFScalar::xi_pow(ctx_.get(), k); }
    Scalar xi() const { return xi_pow(1); }
    Scalar rho() const { return xi_pow(-2); }
    Scalar rho_inv() const { return xi_pow(2); }

private:
    std::shared_ptr<FFCtx> ctx_;
};

}  // namespace hgc
