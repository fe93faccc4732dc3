#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hgc/quotients.hpp"
#include "hgc/rational.hpp"

using namespace hgc;
using SB = SymbolicBackend;

TEST_CASE("cyclic cover genus by Riemann-Hurwitz") {
    // C^{1,1} for N=3: exponents (1,2,2), infinity exponent 1 -> genus 2
    auto m = SuperellipticModel::quotient(3, 1, 1);
    CHECK(m.e0 == 1);
    CHECK(m.e1 == 2);
    CHECK(m.el == 2);
    CHECK(m.e_inf() == 1);
    CHECK(cyclic_cover_genus(m) == 2);
    // the (a, 2m-a, m) quotient of the N=2m, b=m case has genus 0
    CHECK(cyclic_cover_genus(SuperellipticModel::reduce(2, 1, 3, 2)) == 0);
    // disconnected cover refused
    CHECK_THROWS_AS(cyclic_cover_genus(SuperellipticModel::reduce(4, 2, 2, 2)),
                    std::invalid_argument);
}

TEST_CASE("genus is invariant under the quotient-curve isomorphisms") {
    for (int n = 2; n <= 7; ++n)
        for (int a = 1; a < n; ++a)
            for (int b = 1; b < n; ++b) {
                SuperellipticModel m = SuperellipticModel::quotient(n, a, b);
                long g;
                try {
                    g = cyclic_cover_genus(m);
                } catch (const std::invalid_argument&) {
                    continue;  // disconnected model
                }
                // (a,b) -> (aj, bj), j coprime to N
                for (int j = 1; j < n; ++j) {
                    if (std::gcd(j, n) != 1) continue;
                    int aj = (a * j) % n, bj = (b * j) % n;
                    if (aj == 0 || bj == 0) continue;
                    CHECK(cyclic_cover_genus(SuperellipticModel::quotient(n, aj, bj)) == g);
                }
                // (a,b) -> (b,a)
                CHECK(cyclic_cover_genus(SuperellipticModel::quotient(n, b, a)) == g);
            }
}

TEST_CASE("hyperelliptic classification criterion") {
    CHECK(hyperelliptic_classification(5, 1, 4));   // a + b = N
    CHECK(hyperelliptic_classification(5, 2, 2));   // a = b
    CHECK(hyperelliptic_classification(4, 1, 2));   // N = 2m, b = m
    CHECK_FALSE(hyperelliptic_classification(5, 1, 2));
    CHECK_THROWS_AS(hyperelliptic_classification(4, 2, 1), std::invalid_argument);
    // genus-2 quotients are hyperelliptic, so the criterion must accept them
    for (int n = 2; n <= 6; ++n)
        for (int a = 1; a < n; ++a)
            for (int b = 1; b < n; ++b) {
                if (std::gcd(n, a) != 1) continue;
                long g;
                try {
                    g = cyclic_cover_genus(SuperellipticModel::quotient(n, a, b));
                } catch (const std::invalid_argument&) {
                    continue;
                }
                if (g <= 2 && g >= 1 && g != 1)  // genus 2 forces hyperelliptic
                    CHECK(hyperelliptic_classification(n, a, b));
            }
}

TEST_CASE("quotient map relation in the function field") {
    for (int n : {3, 4}) {
        SB b(n);
        Curve<SB> cv(b);
        Quotients<SB> q(cv);
        for (int a = 1; a < n; ++a)
            for (int bb = 1; bb < n; ++bb) CHECK(q.verify_quotient_map(a, bb).pass);
    }
    // negative control: wrong exponent in the target relation
    SB b(3);
    Curve<SB> cv(b);
    Quotients<SB> q(cv);
    auto uu = q.u(), vv = q.v(1, 1);
    auto lamu = cv.constant(b.lambda()) * uu;
    auto wrong = (-uu).pow(1) * (cv.one() - uu).pow(1) * (cv.one() - lamu).pow(2);
    CHECK(vv.pow(3) != wrong);
}

TEST_CASE("hyperelliptic isomorphisms for C^{1,1} and C^{1,N-1}") {
    for (int n : {3, 5}) {
        SB b(n);
        Curve<SB> cv(b);
        Quotients<SB> q(cv);
        CHECK(q.verify_hyperelliptic_isomorphism(false).pass);
        CHECK(q.verify_hyperelliptic_isomorphism(true).pass);
        // perturbed constant must fail
        CHECK_FALSE(q.verify_hyperelliptic_isomorphism(false, 1).pass);
        CHECK_FALSE(q.verify_hyperelliptic_isomorphism(true, 1).pass);
    }
}

TEST_CASE("involution quotient genus for even N") {
    {
        SB b(4);
        Curve<SB> cv(b);
        Quotients<SB> q(cv);
        CHECK(q.involution_quotient_genus(1) == 3);  // (N/2-1)(N-1)
        CHECK(q.involution_quotient_genus(2) == 3);
        CHECK(q.involution_quotient_genus(3) == 5);  // ((N-1)^2+1)/2, derived
    }
    {
        SB b(6);
        Curve<SB> cv(b);
        Quotients<SB> q(cv);
        CHECK(q.involution_quotient_genus(1) == 10);
    }
    {
        SB b(2);
        Curve<SB> cv(b);
        Quotients<SB> q(cv);
        CHECK(q.involution_quotient_genus(1) == 0);
    }
    SB b(3);
    Curve<SB> cv(b);
    CHECK_THROWS_AS(Quotients<SB>(cv).involution_quotient_genus(1), std::invalid_argument);
}

TEST_CASE("branch stabilizer for generic lambda") {
    SB b(3);
    auto lam = b.lambda();
    auto st = branch_stabilizer(lam);
    CHECK(st.size() == 4);
    int idc = 0;
    for (const auto& m : st)
        if (m.is_identity()) ++idc;
    CHECK(idc == 1);
    // the three displayed involutions are exactly the nonidentity elements
    for (const auto& m : displayed_involutions(lam)) {
        CHECK(stabilizer_contains(st, m));
        CHECK(m.compose(m).is_identity());
    }
    // closure under composition
    for (const auto& m1 : st)
        for (const auto& m2 : st) CHECK(stabilizer_contains(st, m1.compose(m2)));
}

TEST_CASE("branch stabilizer for the special rational lambdas") {
    auto run = [](Rat lam, std::vector<Moebius<Rat>> extra) {
        auto st = branch_stabilizer(lam);
        CHECK(st.size() == 8);
        for (const auto& m : displayed_involutions(lam)) CHECK(stabilizer_contains(st, m));
        for (const auto& m : extra) CHECK(stabilizer_contains(st, m));
        for (const auto& m1 : st)
            for (const auto& m2 : st) CHECK(stabilizer_contains(st, m1.compose(m2)));
    };
    Rat z(0), o(1);
    {  // lambda = -1: u -> 1/u, u -> lambda u, (1-lambda u)/(1-u), lambda(1-u)/(1-lambda u)
        Rat lam(-1);
        run(lam, {{z, o, o, z},
                  {lam, z, z, o},
                  {z - lam, o, z - o, o},
                  {z - lam, lam, z - lam, o}});
    }
    {  // lambda = 1/2: (1-lambda u)/(1-lambda), u/(u-1), 1/(1-lambda u), (1-u)/((lambda-1)u)
        Rat lam(1, 2);
        run(lam, {{z - lam, o, z, o - lam},
                  {o, z, o, z - o},
                  {z, o, z - lam, o},
                  {z - o, o, lam - o, z}});
    }
    {  // lambda = 2: 1-u, (1-lambda)u/(1-lambda u), (lambda-1)/(lambda(1-u)), (lambda u-1)/(lambda u)
        Rat lam(2);
        run(lam, {{z - o, o, z, o},
                  {o - lam, z, z - lam, o},
                  {z, lam - o, z - lam, lam},
                  {lam, z - o, lam, z}});
    }
}

TEST_CASE("branch stabilizer for lambda = zeta_6") {
    CycloCtx ctx(6);
    Cyclo lam = Cyclo::zeta_pow(&ctx, 1);
    Cyclo z = lam.zero(), o = lam.one();
    auto st = branch_stabilizer(lam);
    CHECK(st.size() == 12);
    for (const auto& m : displayed_involutions(lam)) CHECK(stabilizer_contains(st, m));
    // the eight extra maps of the zeta_6 case
    std::vector<Moebius<Cyclo>> extra = {
        {z - lam, o, z, o},           // 1 - lambda u
        {o, z - o, o, z},             // (u-1)/u
        {z, o - lam, z - lam, o},     // (1-lambda)/(1-lambda u)
        {lam - o, z, z - o, o},       // (lambda-1)u/(1-u)
        {z - lam, lam, z, lam - o},   // lambda(1-u)/(lambda-1)
        {z, o, z - o, o},             // 1/(1-u)
        {z - lam, o, o - lam, z},     // (1-lambda u)/((1-lambda)u)
        {lam, z, lam, z - o},         // lambda u/(lambda u - 1)
    };
    for (const auto& m : extra) CHECK(stabilizer_contains(st, m));
    for (const auto& m1 : st)
        for (const auto& m2 : st) CHECK(stabilizer_contains(st, m1.compose(m2)));
}
