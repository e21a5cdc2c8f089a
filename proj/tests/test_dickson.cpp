#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "esp/dickson.hpp"

using namespace esp;

namespace {

RingPtr xring(int p, int m, bool with_X) {
    std::vector<std::string> vars;
    for (int i = 1; i <= m; ++i) vars.push_back("x" + std::to_string(i));
    if (with_X) vars.push_back("X");
    return PolyRing::make(p, vars);
}

std::vector<FpPoly> var_gens(const RingPtr& ring, int count) {
    std::vector<FpPoly> out;
    for (int i = 0; i < count; ++i)
        out.push_back(FpPoly::variable(ring, static_cast<std::size_t>(i)));
    return out;
}

}  // namespace

TEST_CASE("mui polynomial examples") {
    RingPtr r1 = xring(3, 1, true);
    FpPoly X = FpPoly::variable(r1, "X");
    // X(X-x)(X+x) over F_3
    CHECK(mui_poly(var_gens(r1, 1), X) == FpPoly::parse(r1, "X^3 + 2*x1^2*X"));

    // empty span: product over the single zero vector
    CHECK(mui_poly({}, X) == X);

    // two generators: degree 9, support only at X^{1,3,9}
    RingPtr r2 = xring(3, 2, true);
    FpPoly X2 = FpPoly::variable(r2, "X");
    FpPoly m2 = mui_poly(var_gens(r2, 2), X2);
    CHECK(m2.degree() == 9);
    for (const auto& t : m2.terms()) {
        int e = t.mono.back();
        CHECK((e == 1 || e == 3 || e == 9));
    }
    CHECK(m2.coefficient_of(2, 9) == FpPoly::constant(r2, 1));
}

TEST_CASE("mui is linear in its argument and kills the span") {
    std::mt19937_64 rng(3);
    for (int p : {3, 5}) {
        RingPtr r = xring(p, 3, false);
        std::vector<FpPoly> gens = var_gens(r, 2);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<int> ca(3), cb(3);
            for (auto& c : ca) c = static_cast<int>(rng() % static_cast<unsigned>(p));
            for (auto& c : cb) c = static_cast<int>(rng() % static_cast<unsigned>(p));
            FpPoly a = FpPoly::linear_form(r, ca);
            FpPoly b = FpPoly::linear_form(r, cb);
            CHECK(mui_poly(gens, a + b) == mui_poly(gens, a) + mui_poly(gens, b));
        }
        // root property: Mui_U(u) = 0 for u in the span
        PrimeField F(p);
        for (int c1 = 0; c1 < p; ++c1)
            for (int c2 = 0; c2 < p; ++c2) {
                FpPoly u = FpPoly::linear_form(r, {c1, c2, 0});
                CHECK(mui_poly(gens, u).is_zero());
            }
    }
}

TEST_CASE("direct product and recursion agree on the overlap") {
    for (int p : {3, 5}) {
        for (int m = 0; m <= 3; ++m) {
            RingPtr r = xring(p, 3, true);
            FpPoly X = FpPoly::variable(r, "X");
            std::vector<FpPoly> gens = var_gens(r, m);
            CHECK(mui_poly_direct(gens, X) == mui_poly_recursive(gens, X));
        }
    }
    // non-coordinate generators too
    RingPtr r = xring(5, 3, true);
    std::vector<FpPoly> gens = {FpPoly::parse(r, "x1 + 2*x2"),
                                FpPoly::parse(r, "x2 + 4*x3")};
    FpPoly X = FpPoly::variable(r, "X");
    CHECK(mui_poly_direct(gens, X) == mui_poly_recursive(gens, X));
}

TEST_CASE("mui context overload") {
    RingPtr r = xring(3, 1, true);
    MuiContext ctx{r, var_gens(r, 1), FpPoly::variable(r, "X")};
    CHECK(mui_poly(ctx) == mui_poly(ctx.generators, ctx.arg));
}

TEST_CASE("dependent generators are rejected") {
    RingPtr r = xring(3, 2, false);
    std::vector<FpPoly> dep = {FpPoly::parse(r, "x1"), FpPoly::parse(r, "2*x1")};
    CHECK_THROWS_WITH_AS(mui_poly(dep, FpPoly::parse(r, "x2")),
                         "generators not independent", std::invalid_argument);
}

TEST_CASE("dickson invariants") {
    RingPtr r1 = xring(3, 1, false);
    CHECK(dickson_invariant(r1, var_gens(r1, 1), 0) == FpPoly::parse(r1, "x1^2"));
    CHECK(dickson_invariant(r1, var_gens(r1, 1), 1) == FpPoly::constant(r1, 1));
    CHECK(dickson_invariant(r1, var_gens(r1, 1), -1).is_zero());
    CHECK_THROWS_AS(dickson_invariant(r1, var_gens(r1, 1), 2), std::invalid_argument);

    // degree p^m - p^r
    for (int p : {3, 5}) {
        RingPtr r2 = xring(p, 2, false);
        for (int r = 0; r < 2; ++r) {
            FpPoly d = dickson_invariant(r2, var_gens(r2, 2), r);
            CHECK(d.is_homogeneous());
            CHECK(d.degree() == p * p - (r == 0 ? 1 : p));
        }
    }
}

TEST_CASE("Q_{2,1} equals the quotient of the two-variable zeta analogues") {
    // oracle: divide x y^9 - x^9 y by x y^3 - x^3 y
    RingPtr r = xring(3, 2, false);
    FpPoly num = FpPoly::parse(r, "x1*x2^9 + 2*x1^9*x2");
    FpPoly den = FpPoly::parse(r, "x1*x2^3 + 2*x1^3*x2");
    auto q = divide_exact(num, den);
    REQUIRE(q.has_value());
    CHECK(*q == dickson_invariant(r, var_gens(r, 2), 1));
}

TEST_CASE("Dickson invariants are invariant under basis change of the span") {
    std::mt19937_64 rng(19);
    for (int p : {3, 5}) {
        RingPtr r = xring(p, 2, false);
        std::vector<FpPoly> gens = var_gens(r, 2);
        for (int trial = 0; trial < 8; ++trial) {
            // random invertible 2x2 change of the generator set
            GfMat M(p, 2, 2);
            do {
                for (std::size_t i = 0; i < 2; ++i)
                    for (std::size_t j = 0; j < 2; ++j)
                        M.set(i, j, static_cast<int>(rng() % static_cast<unsigned>(p)));
            } while (!inverse(M).has_value());
            std::vector<FpPoly> moved = {
                gens[0].scaled(M.at(0, 0)) + gens[1].scaled(M.at(0, 1)),
                gens[0].scaled(M.at(1, 0)) + gens[1].scaled(M.at(1, 1))};
            for (int rr = 0; rr <= 2; ++rr)
                CHECK(dickson_invariant(r, moved, rr) ==
                      dickson_invariant(r, gens, rr));
        }
    }
}

TEST_CASE("mui_rel examples") {
    RingPtr r = xring(3, 2, false);
    // empty subspace: Mui_0(v) = v
    CHECK(mui_rel({}, FpPoly::parse(r, "x1")) == FpPoly::parse(r, "x1^2"));

    // U = <x>, v = y: (y^3 - x^2 y)^2
    FpPoly expected =
        (FpPoly::parse(r, "x2^3") - FpPoly::parse(r, "x1^2*x2")) *
        (FpPoly::parse(r, "x2^3") - FpPoly::parse(r, "x1^2*x2"));
    std::vector<FpPoly> U = {FpPoly::parse(r, "x1")};
    CHECK(mui_rel(U, FpPoly::parse(r, "x2")) == expected);

    // coset-scalar independence
    CHECK(mui_rel(U, FpPoly::parse(r, "x2")) ==
          mui_rel(U, FpPoly::parse(r, "x2 + x1")));
    CHECK(mui_rel(U, FpPoly::parse(r, "x2")) == mui_rel(U, FpPoly::parse(r, "2*x2")));

    CHECK_THROWS_WITH_AS(mui_rel(U, FpPoly::parse(r, "2*x1")),
                         "argument lies in subspace", std::invalid_argument);
}

TEST_CASE("zeta invariants") {
    SpacePtr E1 = SymplecticSpace::make(3, 1);
    CHECK(zeta(*E1, 1).str() == "a1*b1^3 + 2*a1^3*b1");
    CHECK_THROWS_AS(zeta(*E1, 0), std::invalid_argument);

    // restriction to the coordinate Lagrangian <A_1,...,A_n> kills it
    SpacePtr E2 = SymplecticSpace::make(3, 2);
    for (int i = 1; i <= 3; ++i) {
        FpPoly zi = zeta(*E2, i);
        CHECK(zi.is_homogeneous());
        int q = 1;
        for (int k = 0; k < i; ++k) q *= 3;
        CHECK(zi.degree() == q + 1);
        std::map<std::string, FpPoly> kill_b = {
            {"a1", FpPoly::parse(E2->dual_ring(), "a1")},
            {"a2", FpPoly::parse(E2->dual_ring(), "a2")},
            {"b1", FpPoly(E2->dual_ring())},
            {"b2", FpPoly(E2->dual_ring())}};
        CHECK(zi.substitute(E2->dual_ring(), kill_b).is_zero());
    }

    // zeta_2 = zeta_1 * Q_{2,1}(alpha_1, beta_1) at n=1
    RingPtr dual = E1->dual_ring();
    auto q21 = divide_exact(zeta(*E1, 2), zeta(*E1, 1));
    REQUIRE(q21.has_value());
    std::vector<FpPoly> ab = {FpPoly::parse(dual, "a1"), FpPoly::parse(dual, "b1")};
    CHECK(*q21 == dickson_invariant(dual, ab, 1));
}

TEST_CASE("zeta is fixed by every transvection generator") {
    for (int p : {3, 5}) {
        for (int n : {1, 2}) {
            SpacePtr E = SymplecticSpace::make(p, n);
            for (int i = 1; i <= n + 1; ++i) {
                FpPoly zi = zeta(*E, i);
                for (const auto& M : E->transvections())
                    CHECK(E->pullback(zi, M) == zi);
            }
        }
    }
}

TEST_CASE("dickson relation verifier") {
    // p=3, m=2, U=0: the cross-terms cancel mod 3
    VerificationReport rep =
        verify_dickson_relation(3, 2, Subspace(3, 2));
    CHECK(rep.pass);

    // s=1: the sum over the single hyperplane U is Mui_U itself
    Subspace U = Subspace::span(3, 2, {{1, 0}});
    CHECK(verify_dickson_relation(3, 2, U).pass);

    // p=3, m=3, U a line
    Subspace line = Subspace::span(3, 3, {{1, 0, 0}});
    CHECK(verify_dickson_relation(3, 3, line).pass);

    CHECK_THROWS_AS(verify_dickson_relation(3, 2, Subspace::full(3, 2)),
                    std::invalid_argument);
}

TEST_CASE("muirel sum verifier") {
    // p=3: sum of the squares of the four spanning forms vanishes
    CHECK(verify_muirel_sum(Subspace::full(3, 2), Subspace(3, 2)).pass);
    // p=5: sum of fourth powers over the six lines
    CHECK(verify_muirel_sum(Subspace::full(5, 2), Subspace(5, 2)).pass);
    // p=3, V = F_3^3, U a line
    CHECK(verify_muirel_sum(Subspace::full(3, 3), Subspace::span(3, 3, {{0, 1, 0}}))
              .pass);
    CHECK_THROWS_AS(
        verify_muirel_sum(Subspace::full(3, 3),
                          Subspace::span(3, 3, {{1, 0, 0}, {0, 1, 0}})),
        std::invalid_argument);
}

TEST_CASE("muirel sum oracle: explicit expansion at p=3") {
    // e1^2 + e2^2 + (e1+e2)^2 + (e1+2 e2)^2 = 3 e1^2 + 6 e2^2 + 6 e1 e2 = 0
    RingPtr r = xring(3, 2, false);
    FpPoly total(r);
    for (const auto& v : projective_points(3, 2)) {
        FpPoly f = FpPoly::linear_form(r, v);
        total = total + f * f;
    }
    CHECK(total.is_zero());
}

TEST_CASE("dickson induction verifier") {
    Subspace V2 = Subspace::full(3, 2);
    Subspace U1 = Subspace::span(3, 2, {{1, 0}});
    VerificationReport rep = verify_dickson_induction(V2, U1);
    CHECK(rep.pass);

    Subspace V5 = Subspace::full(5, 2);
    Subspace U5 = Subspace::span(5, 2, {{1, 0}});
    CHECK(verify_dickson_induction(V5, U5).pass);

    CHECK(verify_dickson_induction_all(3, 2).pass);
    CHECK(verify_dickson_induction_all(3, 3).pass);

    CHECK_THROWS_AS(verify_dickson_induction(V2, Subspace(3, 2)),
                    std::invalid_argument);
}

TEST_CASE("r=0 induction step is the D_{-1} convention") {
    // D_0(V) = D_0(U) MuiRel(U,V) since D_{-1}(U) = 0
    RingPtr r = xring(3, 2, false);
    Subspace V = Subspace::full(3, 2);
    Subspace U = Subspace::span(3, 2, {{1, 0}});
    std::vector<FpPoly> vf = subspace_forms(r, V);
    std::vector<FpPoly> uf = subspace_forms(r, U);
    FpPoly rel = mui_rel(uf, FpPoly::parse(r, "x2"));
    CHECK(dickson_invariant(r, vf, 0) == dickson_invariant(r, uf, 0) * rel);
}
