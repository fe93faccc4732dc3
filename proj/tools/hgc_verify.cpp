// hgc-verify: exact certificate runner for the hypergeometric curves
// (1 - x^N)(1 - y^N) = lambda x^N y^N.
//
// Exit codes: 0 all requested certificates pass (paper-discrepancy records
// are excluded from the gate), 1 certificate failure, 2 usage error,
// 3 internal invariant violation.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "hgc/backend.hpp"
#include "hgc/suites.hpp"

using namespace hgc;

namespace {

struct Config {
    int n = 3;
    std::string backend = "symbolic";
    int xi_sign = 1;
    uint64_t q = 0;       // 0: pick the default prime for this N
    int64_t lambda0 = -1; // <0: derived from the seed search
    int64_t xi0 = -1;
    uint64_t seed = 1;
    std::vector<std::string> suites = {"all"};
    std::string json_path, md_path;
    int precision_ceiling = 0;
    bool cross_check = false;
};

uint64_t default_q(int n) {
    for (uint64_t q = 1009;; ++q)
        if (FFCtx::is_prime(q) && (q - 1) % static_cast<uint64_t>(2 * n) == 0) return q;
}

FFCtx make_ffctx(const Config& c) {
    uint64_t q = c.q ? c.q : default_q(c.n);
    if (c.lambda0 < 0 && c.xi0 < 0) return FFCtx::search(c.n, q, c.seed);
    FFCtx ctx;
    ctx.N = c.n;
    ctx.q = q;
    // primitive N-th root of unity
    ctx.zeta0 = 0;
    for (uint64_t z = 2; z < q && !ctx.zeta0; ++z) {
        if (FFCtx::pow_mod(z, static_cast<uint64_t>(c.n), q) != 1) continue;
        bool prim = true;
        for (int d = 1; d < c.n; ++d)
            if (c.n % d == 0 && FFCtx::pow_mod(z, static_cast<uint64_t>(d), q) == 1)
                prim = false;
        if (prim) ctx.zeta0 = z;
    }
    if (c.xi0 >= 0) {
        ctx.xi0 = static_cast<uint64_t>(c.xi0) % q;
        uint64_t x2n = FFCtx::pow_mod(ctx.xi0, static_cast<uint64_t>(2 * c.n), q);
        // xi^{2N} (1 - lambda) = 1
        ctx.lambda0 = (q + 1 - FFCtx::inv_mod(x2n, q)) % q;
        if (c.lambda0 >= 0 && static_cast<uint64_t>(c.lambda0) % q != ctx.lambda0)
            throw CLI::ValidationError("--lambda and --xi are inconsistent");
    } else {
        ctx.lambda0 = static_cast<uint64_t>(c.lambda0) % q;
        uint64_t t = FFCtx::inv_mod((q + 1 - ctx.lambda0) % q, q);
        ctx.xi0 = 0;
        for (uint64_t x = 1; x < q && !ctx.xi0; ++x)
            if (FFCtx::pow_mod(x, static_cast<uint64_t>(2 * c.n), q) == t) ctx.xi0 = x;
        if (!ctx.xi0)
            throw CLI::ValidationError("no xi with xi^{2N} = (1 - lambda)^{-1} in F_q");
    }
    ctx.validate();
    return ctx;
}

nlohmann::json config_echo(const Config& c, const std::vector<std::string>& suites) {
    nlohmann::json j = {{"n", c.n},
                        {"backend", c.backend},
                        {"suites", suites},
                        {"xi_sign", c.xi_sign},
                        {"precision_ceiling", c.precision_ceiling}};
    if (c.backend == "finite") {
        j["q"] = c.q ? c.q : default_q(c.n);
        j["seed"] = c.seed;
        if (c.lambda0 >= 0) j["lambda"] = c.lambda0;
        if (c.xi0 >= 0) j["xi"] = c.xi0;
    }
    return j;
}

std::vector<std::string> resolve_suites(const Config& c) {
    std::vector<std::string> out;
    for (const auto& s : c.suites) {
        if (s == "all") {
            for (const auto& a : applicable_suites(c.n)) out.push_back(a);
        } else {
            bool known = false;
            for (const auto& a : all_suite_names()) known = known || a == s;
            if (!known) throw CLI::ValidationError("unknown suite: " + s);
            out.push_back(s);
        }
    }
    return out;
}

CertificateBundle run_config(const Config& c, const std::vector<std::string>& suites,
                             Suites<SymbolicBackend>::Options sopt = {},
                             Suites<FiniteBackend>::Options fopt = {}) {
    if (c.backend == "finite") {
        FFCtx ctx = make_ffctx(c);
        auto mk = [ctx] { return FiniteBackend(ctx); };
        return run_suites<FiniteBackend>(mk, suites, fopt);
    }
    int n = c.n, sign = c.xi_sign;
    auto mk = [n, sign] { return SymbolicBackend(n, sign); };
    return run_suites<SymbolicBackend>(mk, suites, sopt);
}

int emit_and_exit(const Config& c, CertificateBundle& bundle,
                  const std::vector<std::string>& suites) {
    bundle.config = config_echo(c, suites);
    if (!c.json_path.empty()) bundle.write_file(c.json_path, bundle.emit_json());
    if (!c.md_path.empty()) bundle.write_file(c.md_path, bundle.emit_markdown());
    if (c.json_path.empty() && c.md_path.empty()) {
        std::cout << bundle.emit_json();
    } else {
        std::printf("pass %ld  fail %ld  unsupported %ld  paper-discrepancy %ld  (%.2fs)\n",
                    bundle.passes(), bundle.failures(), bundle.unsupported(),
                    bundle.discrepancies(), bundle.wall_seconds);
    }
    return bundle.exit_code();
}

void add_common(CLI::App* cmd, Config& c) {
    cmd->add_option("--n,--p", c.n, "curve parameter N (prime p for the torsion suites)")
        ->check(CLI::Range(2, 64));
    cmd->add_option("--backend", c.backend, "symbolic | finite")
        ->check(CLI::IsMember({"symbolic", "finite"}));
    cmd->add_option("--q", c.q, "finite backend: prime q = 1 (mod 2N)");
    cmd->add_option("--lambda", c.lambda0, "finite backend: explicit lambda_0");
    cmd->add_option("--xi", c.xi0, "finite backend: explicit xi_0");
    cmd->add_option("--seed", c.seed, "finite backend: specialization search seed");
    cmd->add_option("--xi-sign", c.xi_sign, "symbolic backend: sign of xi (1 or -1)")
        ->check(CLI::IsMember({1, -1}));
    cmd->add_option("--json", c.json_path, "write the JSON bundle to this path");
    cmd->add_option("--md", c.md_path, "write the markdown bundle to this path");
    cmd->add_option("--precision-ceiling", c.precision_ceiling,
                    "cap on series precision (must leave the engine headroom: >= 16N)");
}

void check_ceiling(const Config& c) {
    if (c.precision_ceiling != 0 && c.precision_ceiling < 16 * c.n)
        throw CLI::ValidationError(
            "--precision-ceiling below 16N would starve the expansion engine");
}

int verdict_cross_check(const Config& c, CertificateBundle& sym,
                        const std::vector<std::string>& suites) {
    Config fc = c;
    fc.backend = "finite";
    CertificateBundle fin = run_config(fc, suites);
    bool ok = sym.records.size() == fin.records.size();
    std::string mismatch;
    for (size_t i = 0; ok && i < sym.records.size(); ++i)
        if (sym.records[i].id != fin.records[i].id ||
            sym.records[i].verdict != fin.records[i].verdict) {
            ok = false;
            mismatch = sym.records[i].id;
        }
    CertRecord r;
    r.id = "cross-check/verdict-agreement";
    r.suite = "cross-check";
    r.statement = "symbolic and finite-field verdict vectors agree";
    r.verdict = ok ? "PASS" : "FAIL";
    if (!ok) r.detail["first_mismatch"] = mismatch;
    sym.records.push_back(std::move(r));
    sym.sort_records();
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification for hypergeometric curves"};
    app.require_subcommand(1);
    Config c;

    auto* verify = app.add_subcommand("verify", "run certificate suites");
    add_common(verify, c);
    verify->add_option("--suite", c.suites, "suite names, or 'all'");
    verify->add_flag("--cross-check", c.cross_check,
                     "also run the finite backend and require verdict agreement");
    int d_cap = -1;
    verify->add_option("--d", d_cap, "cap d in the lemma suite");

    auto* lspace = app.add_subcommand("lspace", "one Riemann-Roch space certificate");
    add_common(lspace, c);
    int ls_d = 1;
    std::string ls_family = "c1";
    lspace->add_option("--d", ls_d, "pole bound d")->required();
    lspace->add_option("--family", ls_family, "cusp family a|b|c1|c2")
        ->check(CLI::IsMember({"a", "b", "c1", "c2"}));

    auto* piz = app.add_subcommand("pi-z", "modified-diagonal pushforward at every cusp");
    add_common(piz, c);

    auto* nontriv = app.add_subcommand("nontrivial", "nonvanishing certificates");
    add_common(nontriv, c);
    int na = 0, nb = 0, nl = 0;
    nontriv->add_option("--a", na, "restrict to this a");
    nontriv->add_option("--b", nb, "restrict to this b");
    nontriv->add_option("--l", nl, "restrict to this l");

    auto* inv = app.add_subcommand("invariants", "wedge-invariant dimension table");
    add_common(inv, c);
    int n_max = 6;
    inv->add_option("--n-max", n_max, "largest N in the table")->check(CLI::Range(2, 12));

    auto* gt = app.add_subcommand("genus-table", "genus and hyperellipticity per (a,b)");
    add_common(gt, c);

    auto* ws = app.add_subcommand("witness-search", "search a principal-divisor witness");
    add_common(ws, c);
    std::vector<std::string> terms;
    ws->add_option("--term", terms,
                   "divisor term 'k*fam_i' with fam in {a,b,c1,c2}, e.g. '3*b_0' '-3*c2_0'")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        check_ceiling(c);
        if (verify->parsed()) {
            auto suites = resolve_suites(c);
            Suites<SymbolicBackend>::Options so;
            Suites<FiniteBackend>::Options fo;
            if (d_cap >= 0) so.d_cap = fo.d_cap = d_cap;
            CertificateBundle b = run_config(c, suites, so, fo);
            int cc = 0;
            if (c.cross_check) {
                if (c.backend != "symbolic")
                    throw CLI::ValidationError("--cross-check starts from the symbolic backend");
                cc = verdict_cross_check(c, b, suites);
            }
            int rc = emit_and_exit(c, b, suites);
            return rc ? rc : cc;
        }
        if (lspace->parsed()) {
            Suites<SymbolicBackend>::Options so;
            Suites<FiniteBackend>::Options fo;
            so.d_cap = fo.d_cap = ls_d;
            int fam = ls_family == "a" ? 0 : ls_family == "b" ? 1 : ls_family == "c1" ? 2 : 3;
            so.family = fo.family = fam;
            CertificateBundle b = run_config(c, {"lemma"}, so, fo);
            return emit_and_exit(c, b, {"lemma"});
        }
        if (piz->parsed()) {
            CertificateBundle b = run_config(c, {"pi-z"});
            return emit_and_exit(c, b, {"pi-z"});
        }
        if (nontriv->parsed()) {
            Suites<SymbolicBackend>::Options so;
            Suites<FiniteBackend>::Options fo;
            if (na && nb) so.ab = fo.ab = std::pair<int, int>{na, nb};
            else if (na || nb)
                throw CLI::ValidationError("--a and --b must be given together");
            if (nl) so.l_only = fo.l_only = nl;
            CertificateBundle b = run_config(c, {"nontrivial"}, so, fo);
            return emit_and_exit(c, b, {"nontrivial"});
        }
        if (inv->parsed()) {
            CertificateBundle b;
            auto t0 = std::chrono::steady_clock::now();
            for (int n = 2; n <= n_max; ++n) {
                SymbolicBackend bk(n);
                Curve<SymbolicBackend> cv(bk);
                DivisorEngine<SymbolicBackend> eng(cv);
                Forms<SymbolicBackend> forms(eng);
                auto wc = forms.wedge_invariant_dim(Forms<SymbolicBackend>::full_group_gens());
                long ordered =
                    forms.wedge_invariant_dim_ordered(Forms<SymbolicBackend>::full_group_gens());
                CertRecord r;
                r.id = "invariants/N" + idx2(n) + "-wedge-dim";
                r.suite = "invariants";
                r.statement = "dim (wedge^3 H^1_dR)^G at N = " + std::to_string(n);
                r.verdict = wc.dimension == ordered ? "PASS" : "FAIL";
                r.detail = {{"dimension", wc.dimension}, {"ordered_route", ordered}};
                b.records.push_back(std::move(r));
            }
            b.sort_records();
            b.wall_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            return emit_and_exit(c, b, {"invariants"});
        }
        if (gt->parsed()) {
            CertificateBundle b = run_config(c, {"genus"});
            return emit_and_exit(c, b, {"genus"});
        }
        if (ws->parsed()) {
            SymbolicBackend bk(c.n, c.xi_sign);
            Curve<SymbolicBackend> cv(bk);
            DivisorEngine<SymbolicBackend> eng(cv);
            DivisorSearch<SymbolicBackend> srch(eng);
            Divisor<SymbolicBackend> d;
            for (const auto& t : terms) {
                long k = 1;
                std::string rest = t;
                auto star = t.find('*');
                if (star != std::string::npos) {
                    k = std::stol(t.substr(0, star));
                    rest = t.substr(star + 1);
                }
                auto us = rest.find('_');
                if (us == std::string::npos)
                    throw CLI::ValidationError("bad term (want fam_i): " + t);
                std::string fam = rest.substr(0, us);
                int i = std::stoi(rest.substr(us + 1));
                int f = fam == "a" ? 0 : fam == "b" ? 1 : fam == "c1" ? 2
                        : fam == "c2"               ? 3
                                                    : -1;
                if (f < 0 || i < 0 || i >= c.n)
                    throw CLI::ValidationError("bad term: " + t);
                d.add(eng.cusp(f, i), k);
            }
            auto t0 = std::chrono::steady_clock::now();
            auto w = srch.witness_search(d);
            CertificateBundle b;
            CertRecord r;
            r.id = "witness-search/result";
            r.suite = "witness-search";
            r.statement = "a function with divisor " + d.str() + " exists";
            r.verdict = w ? "PASS" : "FAIL";
            if (w) r.witness = w->str();
            b.records.push_back(std::move(r));
            b.wall_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            return emit_and_exit(c, b, {"witness-search"});
        }
        return 2;
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return 3;
    }
}
