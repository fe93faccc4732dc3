#pragma once

#include <cstdint>
#include <optional>

#include "hgc/divisor.hpp"

namespace hgc {

/// Character (a, b) of the group action, g^{r,s} acting by zeta^{ar+bs}.
struct Character {
    int a = 0, b = 0;

    Character reduced(int n) const { return {((a % n) + n) % n, ((b % n) + n) % n}; }
    Character operator+(const Character& o) const { return {a + o.a, b + o.b}; }
    bool trivial_on(int n, const std::vector<std::pair<int, int>>& gens) const {
        for (auto [r, s] : gens)
            if ((static_cast<long>(a) * r + static_cast<long>(b) * s) % n != 0) return false;
        return true;
    }
    auto operator<=>(const Character&) const = default;
};

/// A differential form f * dx on the curve, with dy-representation converted
/// through dy = y' dx.
template <class B>
class DifferentialForm {
public:
    using CF = CurveFun<B>;
    using S = typename B::Scalar;

    DifferentialForm() = default;
    static DifferentialForm from_dx(const CF& f) { return DifferentialForm(f); }
    static DifferentialForm from_dy(const Curve<B>& cv, const CF& g) {
        return DifferentialForm(g * cv.y_prime());
    }

    const CF& dx_coeff() const { return f_; }
    CF dy_coeff(const Curve<B>& cv) const { return f_ / cv.y_prime(); }

    DifferentialForm operator+(const DifferentialForm& o) const {
        return DifferentialForm(f_ + o.f_);
    }
    DifferentialForm operator-(const DifferentialForm& o) const {
        return DifferentialForm(f_ - o.f_);
    }
    DifferentialForm scaled(const CF& c) const { return DifferentialForm(c * f_); }
    bool operator==(const DifferentialForm& o) const { return f_ == o.f_; }

    /// Pullback along sigma: f dx |-> (f o sigma) d(x o sigma).
    DifferentialForm pullback(const Curve<B>& cv, const Automorphism& s) const {
        CF xs = cv.apply(s, cv.x());
        return DifferentialForm(cv.apply(s, f_) * cv.derivative(xs));
    }

    /// Annotate the dx-coefficient as k * x^ma * y^mb * (1-y^N)^me / (1-x^N);
    /// the eigenform constructors set this so cusp expansions can be built
    /// straight from the cached local parametrizations of x and y instead of
    /// a general rational-function expansion.  Arithmetic drops it.
    DifferentialForm with_shape(S k, long ma, long mb, int me) const {
        DifferentialForm r = *this;
        r.shaped_ = true;
        r.k_ = std::move(k);
        r.ma_ = ma;
        r.mb_ = mb;
        r.me_ = me;
        return r;
    }
    bool has_shape() const { return shaped_; }
    const S& shape_k() const { return *k_; }
    long shape_ma() const { return ma_; }
    long shape_mb() const { return mb_; }
    int shape_me() const { return me_; }

private:
    explicit DifferentialForm(CF f) : f_(std::move(f)) {}
    CF f_;
    bool shaped_ = false;
    std::optional<S> k_;
    long ma_ = 0, mb_ = 0;
    int me_ = 0;
};

template <class B>
struct FormCheck {
    bool pass = false;
    std::vector<std::pair<std::string, long>> ord_table;  // cusp -> ord of the form
    std::string detail;
};

/// The eigenforms omega^{a,b}, eta^{a,b} and the wedge-invariant counts.
template <class B>
class Forms {
public:
    using S = typename B::Scalar;
    using CF = CurveFun<B>;
    using DF = DifferentialForm<B>;

    explicit Forms(DivisorEngine<B>& eng)
        : eng_(&eng), cv_(&eng.curve()), b_(&eng.curve().backend()) {}

    /// omega^{a,b} = N x^a y^b / (1-x^N) dx/x; verifies the alternative
    /// dy-expression -N x^a y^b/(1-y^N) dy/y agrees.
    DF omega(int a, int bb) const {
        require_ab(a, bb);
        int n = b_->N();
        CF nn = cv_->constant(b_->integer(n));
        CF w1 = nn * cv_->monomial(a - 1, bb) / (cv_->one() - cv_->x().pow(n));
        DF form = DF::from_dx(w1);
        CF w2 = -nn * cv_->monomial(a, bb - 1) / (cv_->one() - cv_->y().pow(n));
        if (form != DF::from_dy(*cv_, w2))
            throw std::logic_error("omega dx/dy expressions disagree");
        return form.with_shape(b_->integer(n), a - 1, bb, 0);
    }

    /// eta^{a,b} = -(b/(N lambda)) (1-y^N) omega^{a,b}; verifies the two
    /// alternative displays -(b/lambda) x^a y^b (1-y^N)/(1-x^N) dx/x and
    /// (b/lambda) x^a y^b dy/y.
    DF eta(int a, int bb) const {
        require_ab(a, bb);
        int n = b_->N();
        CF bl = cv_->constant(b_->integer(bb) / (b_->integer(n) * b_->lambda()));
        CF omyn = cv_->one() - cv_->y().pow(n);
        DF form = omega(a, bb).scaled(-bl * omyn);
        CF e2 = -cv_->constant(b_->integer(bb) / b_->lambda()) * cv_->monomial(a - 1, bb) *
                omyn / (cv_->one() - cv_->x().pow(n));
        if (form != DF::from_dx(e2))
            throw std::logic_error("eta dx expressions disagree");
        CF e3 = cv_->constant(b_->integer(bb) / b_->lambda()) * cv_->monomial(a, bb - 1);
        if (form != DF::from_dy(*cv_, e3))
            throw std::logic_error("eta dy expressions disagree");
        return form.with_shape(-(b_->integer(bb) / b_->lambda()), a - 1, bb, 1);
    }

    /// Local expansion of the form (coefficient times dx/dt) at a cusp.  For
    /// the annotated eigenforms the series is assembled from the cached
    /// parametrizations of x and y; otherwise the general expander runs.
    LSeries<S> form_series(const DF& w, const Point<B>& pt, int prec) {
        auto& ex = eng_->expander();
        const auto& par = ex.parametrization(pt, prec);
        if (w.has_shape()) {
            int n = b_->N();
            LSeries<S> one = LSeries<S>::constant(b_->integer(1), par.x.prec());
            LSeries<S> s = par.x.pow(w.shape_ma()) * par.y.pow(w.shape_mb());
            if (w.shape_me()) s = s * (one - par.y.pow(n));
            s = s * (one - par.x.pow(n)).inv();
            return s.scaled(w.shape_k()) * par.x.derivative();
        }
        return ex.expand(w.dx_coeff(), pt, prec) * par.x.derivative();
    }

    /// ord of the form at a cusp: ord(f(t) x'(t)) in the local parameter.
    long ord_at(const DF& w, const Point<B>& pt) {
        for (int prec = 4 * b_->N();; prec *= 2) {
            LSeries<S> s = form_series(w, pt, prec);
            if (auto v = s.val()) return *v;
            if (prec > 16 * b_->N())
                throw std::runtime_error("form expansion vanished to precision at " + pt.str());
        }
    }

    S residue_at(const DF& w, const Point<B>& pt) {
        LSeries<S> s = form_series(w, pt, 4 * b_->N());
        return s.prec() >= 0 && s.lo() <= -1 ? s.coeff(-1) : b_->integer(0);
    }

    /// Holomorphy at all 4N cusps (cusps are the only possible poles of the
    /// eigenforms: their coefficients factor through x, y, 1-x^N, 1-y^N).
    FormCheck<B> holomorphy_check(const DF& w) {
        FormCheck<B> out;
        out.pass = true;
        for (const auto& c : eng_->all_cusps()) {
            long o = ord_at(w, c);
            out.ord_table.emplace_back(c.str(), o);
            if (o < 0) out.pass = false;
        }
        out.detail = out.pass ? "holomorphic at all cusps" : "pole at a cusp";
        return out;
    }

    /// Second-kind check: all cusp residues vanish; pole orders recorded.
    /// One series expansion per cusp serves both the ord and the residue.
    FormCheck<B> second_kind_check(const DF& w) {
        FormCheck<B> out;
        out.pass = true;
        for (const auto& c : eng_->all_cusps()) {
            LSeries<S> s = form_series(w, c, 4 * b_->N());
            auto v = s.val();
            if (!v) throw std::runtime_error("form expansion vanished to precision at " + c.str());
            out.ord_table.emplace_back(c.str(), *v);
            if (*v <= -1 && !s.coeff(-1).is_zero()) out.pass = false;
        }
        out.detail = out.pass ? "all residues vanish" : "nonzero residue";
        return out;
    }

    // -----------------------------------------------------------------
    // dim (wedge^3 H^1_dR)^H for a subgroup H given by generators (r,s):
    // count 3-element subsets of the 2(N-1)^2 eigen-basis labels whose
    // character sum is trivial on H.  Each character carries exactly two
    // basis vectors (omega and eta), so a character contributes at most
    // 2 slots per subset automatically.
    // -----------------------------------------------------------------
    struct WedgeCount {
        long dimension = 0;
        long basis_vectors = 0;
    };

    WedgeCount wedge_invariant_dim(const std::vector<std::pair<int, int>>& gens) const {
        int n = b_->N();
        struct V {
            Character chi;
            int flavor;  // 0 omega, 1 eta
        };
        std::vector<V> basis;
        for (int a = 1; a < n; ++a)
            for (int bb = 1; bb < n; ++bb) {
                basis.push_back({{a, bb}, 0});
                basis.push_back({{a, bb}, 1});
            }
        WedgeCount out;
        out.basis_vectors = static_cast<long>(basis.size());
        size_t m = basis.size();
        for (size_t i = 0; i < m; ++i)
            for (size_t j = i + 1; j < m; ++j)
                for (size_t k = j + 1; k < m; ++k)
                    if ((basis[i].chi + basis[j].chi + basis[k].chi).trivial_on(n, gens))
                        ++out.dimension;
        return out;
    }

    /// Independent counting route: ordered triples of distinct vectors with
    /// trivial character sum, divided by 3! = 6.
    long wedge_invariant_dim_ordered(const std::vector<std::pair<int, int>>& gens) const {
        int n = b_->N();
        std::vector<Character> chars;
        for (int a = 1; a < n; ++a)
            for (int bb = 1; bb < n; ++bb) {
                chars.push_back({a, bb});
                chars.push_back({a, bb});
            }
        long ordered = 0;
        size_t m = chars.size();
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j)
                for (size_t k = 0; k < m; ++k) {
                    if (i == j || j == k || i == k) continue;
                    if ((chars[i] + chars[j] + chars[k]).trivial_on(n, gens)) ++ordered;
                }
        if (ordered % 6 != 0) throw std::logic_error("ordered triple count not divisible by 6");
        return ordered / 6;
    }

    static std::vector<std::pair<int, int>> full_group_gens() { return {{1, 0}, {0, 1}}; }

private:
    void require_ab(int a, int bb) const {
        if (a < 1 || a > b_->N() - 1 || bb < 1 || bb > b_->N() - 1)
            throw std::invalid_argument("need 1 <= a, b <= N-1");
    }

    DivisorEngine<B>* eng_;
    const Curve<B>* cv_;
    const B* b_;
};

}  // namespace hgc
