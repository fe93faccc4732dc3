#pragma once

#include <algorithm>
#include <chrono>
#include <future>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "hgc/certificate.hpp"
#include "hgc/cycles.hpp"
#include "hgc/forms.hpp"
#include "hgc/quotients.hpp"
#include "hgc/search.hpp"

namespace hgc {

inline bool is_small_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::string idx2(int i) {
    std::string s = std::to_string(i);
    return s.size() < 2 ? "0" + s : s;
}

inline const std::vector<std::string>& all_suite_names() {
    static const std::vector<std::string> v = {
        "cusps",      "lemma",  "canonical",     "pi-z",        "nontrivial",
        "invariants", "genus",  "quotient-maps", "section-4-3"};
    return v;
}

/// Whether a suite is meaningful at this N; inapplicable suites are skipped
/// by "all" and reported UNSUPPORTED when requested by name.
inline bool suite_applicable(const std::string& s, int n) {
    if (s == "pi-z" || s == "nontrivial") return n % 2 == 1 && n >= 3;
    if (s == "section-4-3") return n % 2 == 1 && is_small_prime(n);
    return true;
}

/// Everything a suite needs, built once per task from a backend.
template <class B>
struct SuiteRig {
    B b;
    Curve<B> cv;
    DivisorEngine<B> eng;
    DivisorSearch<B> srch;
    Cycles<B> cyc;
    Forms<B> forms;
    Quotients<B> quo;

    explicit SuiteRig(B bk)
        : b(std::move(bk)), cv(b), eng(cv), srch(eng), cyc(eng), forms(eng), quo(cv) {}
};

template <class B>
class Suites {
public:
    using S = typename B::Scalar;
    using Pt = Point<B>;
    using FF = FactoredFunction<B>;
    using Rec = CertRecord;

    /// Options narrowing a suite run (CLI filters).
    struct Options {
        std::optional<int> d_cap;           // lemma: restrict d <= d_cap
        std::optional<int> family;          // lemma: one cusp family
        std::optional<std::pair<int, int>> ab;  // nontrivial: one (a,b)
        std::optional<int> l_only;          // nontrivial: one l
    };

    static std::vector<Rec> run(SuiteRig<B>& rig, const std::string& suite,
                                const Options& opt = {}) {
        std::vector<Rec> out;
        if (!suite_applicable(suite, rig.b.N())) {
            Rec r;
            r.id = suite + "/unsupported";
            r.suite = suite;
            r.statement = "suite not applicable at N = " + std::to_string(rig.b.N());
            r.verdict = "UNSUPPORTED";
            out.push_back(std::move(r));
            return out;
        }
        if (suite == "cusps") cusps(rig, out);
        else if (suite == "lemma") lemma(rig, out, opt);
        else if (suite == "canonical") canonical(rig, out);
        else if (suite == "pi-z") pi_z(rig, out);
        else if (suite == "nontrivial") nontrivial(rig, out, opt);
        else if (suite == "invariants") invariants(rig, out);
        else if (suite == "genus") genus(rig, out);
        else if (suite == "quotient-maps") quotient_maps(rig, out);
        else if (suite == "section-4-3") section_4_3(rig, out);
        else throw std::invalid_argument("unknown suite: " + suite);
        return out;
    }

    // --- suite: cusps ----------------------------------------------------
    // The four fiber-divisor displays, the degree-N cusp differences they
    // imply, and the N^2 identity for [b_i] - [a_j].
    static void cusps(SuiteRig<B>& rig, std::vector<Rec>& out) {
        auto& eng = rig.eng;
        int n = rig.b.N();
        S one = rig.b.integer(1);
        auto zeta = [&](int i) { return rig.b.zeta_pow(i); };
        auto rzeta = [&](int i) { return rig.b.rho_inv() * rig.b.zeta_pow(i); };

        auto record = [&](std::string id, std::string stmt, const FF& f,
                          const Divisor<B>& claimed) {
            auto chk = eng.verify_divisor_identity(f, claimed);
            Rec r;
            r.id = "cusps/" + std::move(id);
            r.suite = "cusps";
            r.statement = std::move(stmt);
            r.verdict = chk.pass ? "PASS" : "FAIL";
            r.witness = f.str();
            if (!chk.pass) r.detail["difference"] = chk.difference.str();
            out.push_back(std::move(r));
        };

        for (int i = 0; i < n; ++i) {
            {
                FF f(one);
                f.mul_x_minus(zeta(i), 1);
                Divisor<B> d = Divisor<B>::single(eng.cusp(1, i), n) - eng.sum_c1();
                record("display-x-unit-" + idx2(i),
                       "div(x - zeta^" + std::to_string(i) + ") = N[b_i] - sum[c1]", f, d);
            }
            {
                FF f(one);
                f.mul_x_minus(rzeta(i), 1);
                Divisor<B> d = Divisor<B>::single(eng.cusp(3, i), n) - eng.sum_c1();
                record("display-x-rho-" + idx2(i),
                       "div(x - rho^-1 zeta^" + std::to_string(i) + ") = N[c2_i] - sum[c1]",
                       f, d);
            }
            {
                FF f(one);
                f.mul_y_minus(zeta(i), 1);
                Divisor<B> d = Divisor<B>::single(eng.cusp(0, i), n) - eng.sum_c2();
                record("display-y-unit-" + idx2(i),
                       "div(y - zeta^" + std::to_string(i) + ") = N[a_i] - sum[c2]", f, d);
            }
            {
                FF f(one);
                f.mul_y_minus(rzeta(i), 1);
                Divisor<B> d = Divisor<B>::single(eng.cusp(2, i), n) - eng.sum_c2();
                record("display-y-rho-" + idx2(i),
                       "div(y - rho^-1 zeta^" + std::to_string(i) + ") = N[c1_i] - sum[c2]",
                       f, d);
            }
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                {
                    FF f(one);
                    f.mul_x_minus(zeta(i), 1).mul_x_minus(rzeta(j), -1);
                    Divisor<B> d =
                        (Divisor<B>::single(eng.cusp(1, i)) - Divisor<B>::single(eng.cusp(3, j)))
                            .scaled(n);
                    record("order-n-x-" + idx2(i) + "-" + idx2(j),
                           "N([b_i] - [c2_j]) is principal", f, d);
                }
                {
                    FF f(one);
                    f.mul_y_minus(zeta(i), 1).mul_y_minus(rzeta(j), -1);
                    Divisor<B> d =
                        (Divisor<B>::single(eng.cusp(0, i)) - Divisor<B>::single(eng.cusp(2, j)))
                            .scaled(n);
                    record("order-n-y-" + idx2(i) + "-" + idx2(j),
                           "N([a_i] - [c1_j]) is principal", f, d);
                }
                {
                    // (x - zeta^i)^N (y^N - rho^-N) / (y - zeta^j)^N, with
                    // y^N - rho^-N expanded as prod_k (y - rho^-1 zeta^k).
                    FF f(one);
                    f.mul_x_minus(zeta(i), n).mul_y_minus(zeta(j), -n);
                    for (int k = 0; k < n; ++k) f.mul_y_minus(rzeta(k), 1);
                    Divisor<B> d =
                        (Divisor<B>::single(eng.cusp(1, i)) - Divisor<B>::single(eng.cusp(0, j)))
                            .scaled(static_cast<long>(n) * n);
                    record("order-n2-" + idx2(i) + "-" + idx2(j),
                           "N^2([b_i] - [a_j]) is principal", f, d);
                }
            }
    }

    // --- suite: lemma ----------------------------------------------------
    // L(d * sum of one cusp family) has the monomial basis of dimension d+1,
    // cross-checked against an independent linear-algebra kernel oracle.
    static void lemma(SuiteRig<B>& rig, std::vector<Rec>& out, const Options& opt) {
        int n = rig.b.N();
        static const char* fam_names[4] = {"a", "b", "c1", "c2"};
        int dmax = n - 1;
        if (opt.d_cap) dmax = std::min(dmax, *opt.d_cap);
        for (int fam = 0; fam < 4; ++fam) {
            if (opt.family && fam != *opt.family) continue;
            for (int d = 0; d <= dmax; ++d) {
                auto ls = rig.srch.lspace_basis(d, fam);
                bool lem = rig.srch.lspace_matches_lemma(d, fam, ls);
                int kd = rig.srch.lspace_kernel_dim(d, fam);
                Rec r;
                r.id = "lemma/d" + idx2(d) + "-" + fam_names[fam];
                r.suite = "lemma";
                r.statement = "dim L(" + std::to_string(d) + " * sum[" + fam_names[fam] +
                              "]) = " + std::to_string(d + 1) + " with monomial basis";
                r.inputs = {{"d", d}, {"family", fam_names[fam]}};
                r.verdict = (lem && ls.dimension == d + 1 && kd == d + 1) ? "PASS" : "FAIL";
                std::string w;
                for (const auto& nm : ls.basis_names) w += (w.empty() ? "" : ", ") + nm;
                r.witness = w;
                r.detail = {{"dimension", ls.dimension}, {"kernel_oracle_dim", kd}};
                out.push_back(std::move(r));
            }
        }
    }

    // --- suite: canonical ------------------------------------------------
    static void canonical(SuiteRig<B>& rig, std::vector<Rec>& out) {
        int n = rig.b.N();
        auto cert = rig.srch.canonical_divisor();
        Rec r;
        r.id = "canonical/div-dx";
        r.suite = "canonical";
        r.statement = "div(dx) = (N-1)sum([b]+[c2]) - 2sum[c1], degree 2(N-1)^2 - 2";
        r.verdict =
            (cert.pass && cert.degree == 2L * (n - 1) * (n - 1) - 2) ? "PASS" : "FAIL";
        r.witness = cert.computed.str();
        r.detail = {{"degree", cert.degree},
                    {"genus", (static_cast<long>(n) - 1) * (n - 1)}};
        out.push_back(std::move(r));
    }

    // --- suite: pi-z -----------------------------------------------------
    static void pi_z(SuiteRig<B>& rig, std::vector<Rec>& out) {
        int n = rig.b.N();
        static const char* fam_names[4] = {"a", "b", "c1", "c2"};
        for (int fam = 0; fam < 4; ++fam)
            for (int i = 0; i < n; ++i) {
                Pt e = rig.eng.cusp(fam, i);
                auto c = rig.cyc.pi_z_certificate(e);
                Rec r;
                r.id = std::string("pi-z/") + fam_names[fam] + idx2(i);
                r.suite = "pi-z";
                r.statement = "Pi_Z(GKS cycle at " + e.str() + ") = [P]+[Q]-2[alpha(e)]";
                r.verdict = c.pass ? "PASS" : "FAIL";
                r.witness = c.total.str();
                nlohmann::json bd = nlohmann::json::object();
                for (const auto& [nm, dv] : c.breakdown) bd[nm] = dv.str();
                r.detail = {{"breakdown", bd}, {"expected", c.expected.str()}};
                out.push_back(std::move(r));
            }
    }

    // --- suite: nontrivial -----------------------------------------------
    static void nontrivial(SuiteRig<B>& rig, std::vector<Rec>& out, const Options& opt) {
        int p = rig.b.N();
        Pt base = rig.eng.cusp(2, 0);
        for (int a = 1; a < p; ++a)
            for (int bb = 1; bb < p; ++bb) {
                if (std::gcd(a, p) != 1 || std::gcd(bb, p) != 1) continue;
                if (opt.ab && std::pair<int, int>{a, bb} != *opt.ab) continue;
                for (int l = 1; l <= (p - 1) / 2; ++l) {
                    if (opt.l_only && l != *opt.l_only) continue;
                    auto c = rig.srch.nontriviality_certificate(a, bb, l, base);
                    Rec r;
                    r.id = "nontrivial/a" + idx2(a) + "-b" + idx2(bb) + "-l" + idx2(l);
                    r.suite = "nontrivial";
                    r.statement = "no function certifies triviality of the degree-0 class "
                                  "(full-rank vanishing system)";
                    r.inputs = {{"a", a}, {"b", bb}, {"l", l}, {"base", base.str()}};
                    r.verdict = c.pass ? "PASS" : "FAIL";
                    r.detail = {{"rows", c.rows}, {"cols", c.cols}, {"rank", c.rank}};
                    out.push_back(std::move(r));
                }
            }
    }

    // --- suite: invariants -----------------------------------------------
    static void invariants(SuiteRig<B>& rig, std::vector<Rec>& out) {
        int n = rig.b.N();
        bool all_hol = true;
        for (int a = 1; a < n; ++a)
            for (int bb = 1; bb < n; ++bb) {
                auto w = rig.forms.omega(a, bb);
                auto hc = rig.forms.holomorphy_check(w);
                all_hol = all_hol && hc.pass;
                Rec r;
                r.id = "invariants/omega-" + idx2(a) + "-" + idx2(bb);
                r.suite = "invariants";
                r.statement = "omega^{a,b} is holomorphic";
                r.inputs = {{"a", a}, {"b", bb}};
                r.verdict = hc.pass ? "PASS" : "FAIL";
                out.push_back(std::move(r));

                auto e = rig.forms.eta(a, bb);
                auto sc = rig.forms.second_kind_check(e);
                Rec r2;
                r2.id = "invariants/eta-" + idx2(a) + "-" + idx2(bb);
                r2.suite = "invariants";
                r2.statement = "eta^{a,b} is of the second kind (all residues vanish)";
                r2.inputs = {{"a", a}, {"b", bb}};
                r2.verdict = sc.pass ? "PASS" : "FAIL";
                out.push_back(std::move(r2));
            }
        {
            Rec r;
            r.id = "invariants/holomorphic-count";
            r.suite = "invariants";
            r.statement = "the (N-1)^2 eigenforms omega^{a,b} exhaust the genus";
            r.verdict = all_hol ? "PASS" : "FAIL";
            r.detail = {{"count", (static_cast<long>(n) - 1) * (n - 1)}};
            out.push_back(std::move(r));
        }
        {
            auto wc = rig.forms.wedge_invariant_dim(Forms<B>::full_group_gens());
            long ordered = rig.forms.wedge_invariant_dim_ordered(Forms<B>::full_group_gens());
            bool ok = wc.dimension == ordered;
            if (n == 2 || n == 3) ok = ok && wc.dimension == 0;
            Rec r;
            r.id = "invariants/wedge-dim";
            r.suite = "invariants";
            r.statement = "dim (wedge^3 H^1_dR)^G by two independent counting routes" +
                          std::string(n <= 3 ? "; equals 0" : "");
            r.verdict = ok ? "PASS" : "FAIL";
            r.detail = {{"dimension", wc.dimension}, {"ordered_route", ordered}};
            out.push_back(std::move(r));
        }
    }

    // --- suite: genus ----------------------------------------------------
    static void genus(SuiteRig<B>& rig, std::vector<Rec>& out) {
        int n = rig.b.N();
        for (int a = 1; a < n; ++a)
            for (int bb = 1; bb < n; ++bb) {
                Rec r;
                r.id = "genus/table-" + idx2(a) + "-" + idx2(bb);
                r.suite = "genus";
                r.statement = "genus of the superelliptic quotient C^{a,b}";
                r.inputs = {{"a", a}, {"b", bb}};
                auto m = SuperellipticModel::quotient(n, a, bb);
                try {
                    long g = cyclic_cover_genus(m);
                    r.detail["genus"] = g;
                    bool ok = true;
                    if (std::gcd(n, a) == 1) {
                        bool hyp = hyperelliptic_classification(n, a, bb);
                        r.detail["hyperelliptic"] = hyp;
                        // genus 2 forces hyperelliptic; the criterion must agree
                        if (g == 2 && !hyp) ok = false;
                    }
                    r.verdict = ok ? "PASS" : "FAIL";
                } catch (const std::invalid_argument&) {
                    r.detail["genus"] = "disconnected";
                    r.verdict = "PASS";
                }
                out.push_back(std::move(r));
            }
        {
            // (a,b) ~ (aj,bj) for j coprime to N, and (a,b) ~ (b,a).
            bool ok = true;
            for (int a = 1; a < n && ok; ++a)
                for (int bb = 1; bb < n && ok; ++bb) {
                    long g;
                    try {
                        g = cyclic_cover_genus(SuperellipticModel::quotient(n, a, bb));
                    } catch (const std::invalid_argument&) {
                        continue;
                    }
                    try {
                        if (cyclic_cover_genus(SuperellipticModel::quotient(n, bb, a)) != g)
                            ok = false;
                    } catch (const std::invalid_argument&) {
                        ok = false;
                    }
                    for (int j = 1; j < n && ok; ++j) {
                        if (std::gcd(j, n) != 1) continue;
                        int aj = (a * j) % n, bj = (bb * j) % n;
                        if (aj == 0 || bj == 0) continue;
                        try {
                            if (cyclic_cover_genus(SuperellipticModel::quotient(n, aj, bj)) != g)
                                ok = false;
                        } catch (const std::invalid_argument&) {
                            ok = false;
                        }
                    }
                }
            Rec r;
            r.id = "genus/isomorphism-invariance";
            r.suite = "genus";
            r.statement = "genus is invariant under (a,b)->(aj,bj) and (a,b)->(b,a)";
            r.verdict = ok ? "PASS" : "FAIL";
            out.push_back(std::move(r));
        }
        if (n % 2 == 0) {
            static const char* names[3] = {"i", "ii", "iii"};
            for (int which = 1; which <= 3; ++which) {
                long g = rig.quo.involution_quotient_genus(which);
                long expected = which <= 2 ? static_cast<long>(n / 2 - 1) * (n - 1)
                                           : (static_cast<long>(n - 1) * (n - 1) + 1) / 2;
                Rec r;
                r.id = std::string("genus/involution-") + names[which - 1];
                r.suite = "genus";
                r.statement = "genus of the quotient by the displayed involution";
                r.verdict = g == expected ? "PASS" : "FAIL";
                r.detail = {{"genus", g}, {"expected", expected}};
                out.push_back(std::move(r));
            }
        }
        {
            // Branch-locus stabilizer: contains the identity and the three
            // displayed involutions for every lambda; exactly those when
            // lambda is generic (the symbolic backend).
            auto st = branch_stabilizer<S>(rig.b.lambda());
            auto disp = displayed_involutions<S>(rig.b.lambda());
            bool ok = true;
            for (const auto& m : disp) ok = ok && stabilizer_contains(st, m);
            Rec r;
            r.id = "genus/branch-stabilizer";
            r.suite = "genus";
            r.statement =
                "the Moebius stabilizer of {0,1,1/lambda,inf} contains the three "
                "displayed involutions";
            r.verdict = ok ? "PASS" : "FAIL";
            r.detail = {{"size", st.size()}};
            out.push_back(std::move(r));
        }
    }

    // --- suite: quotient-maps --------------------------------------------
    static void quotient_maps(SuiteRig<B>& rig, std::vector<Rec>& out) {
        int n = rig.b.N();
        for (int a = 1; a < n; ++a)
            for (int bb = 1; bb < n; ++bb) {
                auto c = rig.quo.verify_quotient_map(a, bb);
                Rec r;
                r.id = "quotient-maps/map-" + idx2(a) + "-" + idx2(bb);
                r.suite = "quotient-maps";
                r.statement = "v^N = (-u)^a (1-u)^{N-a} (1-lambda u)^{N-b} under the "
                              "quotient substitution";
                r.inputs = {{"a", a}, {"b", bb}};
                r.verdict = c.pass ? "PASS" : "FAIL";
                if (!c.pass) r.detail["detail"] = c.detail;
                out.push_back(std::move(r));
            }
        for (int flavor = 0; flavor < 2; ++flavor) {
            auto c = rig.quo.verify_hyperelliptic_isomorphism(flavor == 1);
            Rec r;
            r.id = std::string("quotient-maps/hyperelliptic-") +
                   (flavor == 1 ? "c1nm1" : "c11");
            r.suite = "quotient-maps";
            r.statement = std::string("the explicit (z,w) substitution carries ") +
                          (flavor == 1 ? "C^{1,N-1}" : "C^{1,1}") +
                          " to its hyperelliptic model";
            r.verdict = c.pass ? "PASS" : "FAIL";
            if (!c.pass) r.detail["detail"] = c.detail;
            out.push_back(std::move(r));
        }
    }

    // --- suite: section-4-3 ----------------------------------------------
    // The two displayed witnesses for p * (phi^{a,b})^* (phi^{a,b})_*
    // ([P]+[Q]-2[c1_0]) are checked verbatim; a failure is recorded as
    // PAPER-DISCREPANCY (excluded from the failure gate) and a corrected
    // witness with the exact divisor is then searched for and re-verified.
    static void section_4_3(SuiteRig<B>& rig, std::vector<Rec>& out) {
        int p = rig.b.N();
        S one = rig.b.integer(1);
        Divisor<B> base = Divisor<B>::single(Pt::fixed_p(rig.b)) +
                          Divisor<B>::single(Pt::fixed_q(rig.b)) -
                          Divisor<B>::single(rig.eng.cusp(2, 0)).scaled(2);
        for (int flavor = 0; flavor < 2; ++flavor) {
            int a = 1, bb = flavor == 0 ? 1 : p - 1;
            std::string tag = flavor == 0 ? "1-1" : "1-pm1";
            Divisor<B> target = rig.cyc.phi_pull_push(base, a, bb).scaled(p);

            FF f(one);
            if (flavor == 0)
                f.mul_xy_minus(-rig.b.rho_inv(), 1);  // xy + rho^-1
            else
                f.mul_x_minus_cy(rig.b.rho_inv(), 1);  // x - rho^-1 y
            for (int i = 0; i < p; ++i)
                f.mul_x_minus(-rig.b.zeta_pow(i), 1);  // 1 + x^p
            auto chk = rig.eng.verify_divisor_identity(f, target);

            Rec r;
            r.id = "section-4-3/displayed-" + tag;
            r.suite = "section-4-3";
            r.statement = "the displayed witness has divisor p * (phi^{a,b})^* "
                          "(phi^{a,b})_* ([P]+[Q]-2[c1_0])";
            r.inputs = {{"a", a}, {"b", bb}};
            r.witness = f.str();
            r.verdict = chk.pass ? "PASS" : "PAPER-DISCREPANCY";
            if (!chk.pass) {
                r.detail["difference"] = chk.difference.str();
                r.detail["claimed"] = target.str();
                r.detail["computed"] = chk.computed.str();
            }
            out.push_back(std::move(r));

            if (!chk.pass) {
                auto w = rig.srch.witness_search(target);
                Rec c;
                c.id = "section-4-3/corrected-" + tag;
                c.suite = "section-4-3";
                c.statement = "a corrected witness with the exact divisor exists "
                              "(found and re-verified)";
                c.inputs = {{"a", a}, {"b", bb}};
                if (w) {
                    c.verdict = "PASS";
                    c.witness = w->str();
                } else {
                    c.verdict = "FAIL";
                    c.detail["target"] = target.str();
                }
                out.push_back(std::move(c));
            }
        }
    }
};

/// Run a list of suites, one worker per suite (each with its own rig, so no
/// engine caches are shared), and collect a bundle deterministically ordered
/// by certificate id.
template <class B, class MakeBackend>
CertificateBundle run_suites(MakeBackend make_backend, const std::vector<std::string>& suites,
                             typename Suites<B>::Options opt = {}) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::future<std::vector<CertRecord>>> tasks;
    for (const auto& s : suites)
        tasks.push_back(std::async(std::launch::async, [make_backend, s, opt] {
            SuiteRig<B> rig(make_backend());
            return Suites<B>::run(rig, s, opt);
        }));
    CertificateBundle bundle;
    for (auto& t : tasks)
        for (auto& r : t.get()) bundle.records.push_back(std::move(r));
    bundle.sort_records();
    bundle.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return bundle;
}

/// Applicable subset of every suite at this N (used by "--suite all").
inline std::vector<std::string> applicable_suites(int n) {
    std::vector<std::string> v;
    for (const auto& s : all_suite_names())
        if (suite_applicable(s, n)) v.push_back(s);
    return v;
}

}  // namespace hgc
