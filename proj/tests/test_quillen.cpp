#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "esp/quillen.hpp"

using namespace esp;

namespace {

FpPoly random_homogeneous(const RingPtr& ring, std::mt19937_64& rng, int d) {
    std::vector<Mono> basis = monomials_of_degree(ring->nvars(), d);
    std::vector<Term> ts;
    for (const auto& m : basis) {
        int c = static_cast<int>(rng() % static_cast<unsigned>(ring->p()));
        if (c) ts.push_back(Term{m, c});
    }
    return FpPoly::from_terms(ring, std::move(ts));
}

}  // namespace

TEST_CASE("kappa classes") {
    SpacePtr E1 = SymplecticSpace::make(3, 1);
    // r = n: the unit class
    QuillenClass unit = class_kappa(E1, 1);
    CHECK(unit.degree() == 0);
    for (const auto& c : unit.components())
        CHECK(c == FpPoly::constant(E1->component_ring(), 1));

    // n=1, p=3, r=0: x^2 everywhere
    QuillenClass k0 = class_kappa(E1, 0);
    CHECK(k0.degree() == 2);
    for (const auto& c : k0.components())
        CHECK(c == FpPoly::parse(E1->component_ring(), "x1^2"));
    CHECK_FALSE(k0.is_zero());

    // n=2, p=3, r=1: the same Dickson polynomial at every Lagrangian
    SpacePtr E2 = SymplecticSpace::make(3, 2);
    QuillenClass k1 = class_kappa(E2, 1);
    CHECK(k1.degree() == 6);
    const RingPtr& ring = E2->component_ring();
    std::vector<FpPoly> gens = {FpPoly::variable(ring, std::size_t(0)),
                                FpPoly::variable(ring, std::size_t(1))};
    FpPoly q21 = dickson_invariant(ring, gens, 1);
    for (const auto& c : k1.components()) CHECK(c == q21);

    CHECK_THROWS_AS(class_kappa(E1, 2), std::invalid_argument);
    CHECK_THROWS_AS(class_kappa(E1, -1), std::invalid_argument);
}

TEST_CASE("top zeta class") {
    SpacePtr E = SymplecticSpace::make(3, 1);
    QuillenClass top = class_zeta_top(E);
    const RingPtr& ring = E->component_ring();
    CHECK(top.degree() == 3);
    for (const auto& c : top.components()) {
        CHECK(c == FpPoly::parse(ring, "z^3 + 2*x1^2*z"));
        // monic in z with top term z^{p^n}
        CHECK(c.coeff(Mono{0, 3}) == 1);
        CHECK(c.degree_in(E->z_index()) == 3);
    }

    // shift invariance: z -> z + x1 fixes the component
    std::vector<FpPoly> shift = {FpPoly::parse(ring, "x1"),
                                 FpPoly::parse(ring, "z + x1")};
    for (const auto& c : top.components())
        CHECK(c.substitute(ring, shift) == c);
    CHECK_FALSE(top.z_free());
}

TEST_CASE("inflation") {
    SpacePtr E = SymplecticSpace::make(3, 2);
    const RingPtr& dual = E->dual_ring();

    // zeta_i inflates to the zero class
    for (int i = 1; i <= 3; ++i) {
        QuillenClass c = inflate(E, zeta(*E, i));
        CHECK(c.is_zero());
    }

    // alpha_1^k: component is the k-th power of the image of alpha_1
    QuillenClass a1c = inflate(E, FpPoly::parse(dual, "a1^3"));
    for (std::size_t i = 0; i < E->lagrangians().size(); ++i) {
        const Lagrangian& L = E->lagrangians()[i];
        FpPoly img = L.restrict_poly(FpPoly::parse(dual, "a1"));
        CHECK(a1c.component(i) == img * img * img);
    }

    // unit
    QuillenClass one = inflate(E, FpPoly::constant(dual, 1));
    for (const auto& c : one.components())
        CHECK(c == FpPoly::constant(E->component_ring(), 1));

    CHECK_THROWS_AS(inflate(E, FpPoly::parse(dual, "a1 + a1^2")),
                    std::invalid_argument);
}

TEST_CASE("inflate is a ring homomorphism on random homogeneous pairs") {
    std::mt19937_64 rng(61);
    SpacePtr E = SymplecticSpace::make(3, 1);
    for (int trial = 0; trial < 20; ++trial) {
        FpPoly f = random_homogeneous(E->dual_ring(), rng, 2 + trial % 3);
        FpPoly g = random_homogeneous(E->dual_ring(), rng, 1 + trial % 2);
        CHECK(inflate(E, f * g) == inflate(E, f) * inflate(E, g));
        CHECK(inflate(E, f + f) == inflate(E, f) + inflate(E, f));
    }
}

TEST_CASE("chi classes at n=1") {
    SpacePtr E = SymplecticSpace::make(3, 1);
    const RingPtr& ring = E->component_ring();
    QuillenClass chi = class_chi(E, 0, {0, 1});  // phi = beta_1
    CHECK(chi.degree() == 2);

    Subspace a1 = Subspace::span(3, 2, {{1, 0}});
    for (std::size_t i = 0; i < E->lagrangians().size(); ++i) {
        if (E->lagrangians()[i].space == a1)
            CHECK(chi.component(i) == FpPoly::parse(ring, "2*x1^2"));  // -x^2
        else
            CHECK(chi.component(i).is_zero());
    }

    // scaling: the class depends on phi only through its kernel
    CHECK(class_chi(E, 0, {0, 2}) == chi);
    CHECK_THROWS_AS(class_chi(E, 0, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(class_chi(E, 1, {0, 1}), std::invalid_argument);
}

TEST_CASE("chi support counts at n=2") {
    SpacePtr E = SymplecticSpace::make(3, 2);
    QuillenClass chi = class_chi(E, 1, {0, 0, 0, 1});  // phi = beta_2
    std::size_t support = 0;
    std::size_t inside = 0;
    for (std::size_t i = 0; i < E->lagrangians().size(); ++i) {
        if (!chi.component(i).is_zero()) ++support;
        // oracle: count Lagrangians inside ker(beta_2) by enumeration
        std::vector<int> w = E->restrict_form({0, 0, 0, 1}, E->lagrangians()[i]);
        if (std::all_of(w.begin(), w.end(), [](int x) { return x == 0; })) ++inside;
    }
    CHECK(inside == 4);  // p + 1
    CHECK(support == inside);
    CHECK(chi.degree() == 6);

    for (int lambda = 2; lambda <= 2; ++lambda)
        CHECK(class_chi(E, 1, {0, 0, 0, lambda}) == chi);
}

TEST_CASE("class ring operations") {
    SpacePtr E = SymplecticSpace::make(3, 1);
    QuillenClass chi = class_chi(E, 0, {0, 1});
    // c + (-1) c = 0
    CHECK((chi + chi.scaled(-1)).is_zero());
    CHECK((chi - chi).is_zero());

    // pth_power(inflate f) = inflate(f^p)
    FpPoly f = FpPoly::parse(E->dual_ring(), "a1^2 + a1*b1");
    CHECK(inflate(E, f).pth_power() == inflate(E, f.pow(3)));

    // pth power of the n=1 chi: -x^6 at <A_1>
    QuillenClass chi_p = chi.pth_power();
    Subspace a1 = Subspace::span(3, 2, {{1, 0}});
    for (std::size_t i = 0; i < E->lagrangians().size(); ++i)
        if (E->lagrangians()[i].space == a1)
            CHECK(chi_p.component(i) ==
                  FpPoly::parse(E->component_ring(), "2*x1^6"));

    // degree mismatch on add
    CHECK_THROWS_AS(chi + class_kappa(E, 1), std::invalid_argument);

    // scalar multiple of the zero test
    CHECK(chi.scaled(0).is_zero());
}

TEST_CASE("kappa is equivariant under transvection transport") {
    for (int p : {3, 5}) {
        SpacePtr E = SymplecticSpace::make(p, 1);
        QuillenClass k0 = class_kappa(E, 0);
        for (const auto& M : E->transvections())
            CHECK(transport(k0, M) == k0);
    }
    SpacePtr E2 = SymplecticSpace::make(3, 2);
    QuillenClass k1 = class_kappa(E2, 1);
    // a couple of generators suffice as a spot check at n=2
    for (std::size_t g = 0; g < 5; ++g)
        CHECK(transport(k1, E2->transvections()[g * 7]) == k1);
}

TEST_CASE("inflation preimage") {
    SpacePtr E = SymplecticSpace::make(3, 1);
    const RingPtr& dual = E->dual_ring();

    // solvable by construction
    FpPoly g = FpPoly::parse(dual, "a1^2 + b1^2");
    auto back = inflation_preimage(inflate(E, g));
    REQUIRE(back.has_value());
    CHECK(inflate(E, *back) == inflate(E, g));

    // negative control: the unpowered chi has no preimage in degree 2
    QuillenClass chi = class_chi(E, 0, {0, 1});
    CHECK_FALSE(inflation_preimage(chi).has_value());

    // brute-force oracle over the 27 homogeneous quadratics on E*
    bool any = false;
    for (int c1 = 0; c1 < 3 && !any; ++c1)
        for (int c2 = 0; c2 < 3 && !any; ++c2)
            for (int c3 = 0; c3 < 3 && !any; ++c3) {
                FpPoly f = FpPoly::monomial(dual, {2, 0}, c1) +
                           FpPoly::monomial(dual, {1, 1}, c2) +
                           FpPoly::monomial(dual, {0, 2}, c3);
                if (f.is_zero()) continue;
                if (inflate(E, f) == chi) any = true;
            }
    CHECK_FALSE(any);

    // the p-th power does have one
    auto pre = inflation_preimage(chi.pth_power());
    REQUIRE(pre.has_value());
    CHECK(inflate(E, *pre) == chi.pth_power());

    // InflationQuery wrapper
    CHECK(inflation_preimage(InflationQuery{chi, chi.degree()}) ==
          inflation_preimage(chi));

    // z-dependent classes are rejected
    CHECK_THROWS_AS(inflation_preimage(class_zeta_top(E)), std::invalid_argument);
}

TEST_CASE("ideal decomposition") {
    SpacePtr E = SymplecticSpace::make(3, 1);
    const RingPtr& dual = E->dual_ring();
    FpPoly z1 = zeta(*E, 1);
    FpPoly z2 = zeta(*E, 2);

    // t = zeta_1 * a1: the quotient is unique here
    FpPoly a1 = FpPoly::parse(dual, "a1");
    auto d1 = ideal_decompose(z1 * a1, {z1});
    REQUIRE(d1.has_value());
    CHECK(d1->coefficients[0] == a1);
    CHECK(d1->kernel_dim == 0);

    // zeta_2 / zeta_1 is the Dickson invariant (division oracle)
    auto d2 = ideal_decompose(z2, {z1});
    REQUIRE(d2.has_value());
    CHECK(d2->coefficients[0] == *divide_exact(z2, z1));

    // degree of the generator exceeds the target
    CHECK_FALSE(ideal_decompose(a1, {z1}).has_value());

    // re-expansion property on random targets built inside the ideal
    std::mt19937_64 rng(71);
    SpacePtr E2 = SymplecticSpace::make(3, 2);
    FpPoly w1 = zeta(*E2, 1);
    FpPoly w2 = zeta(*E2, 2);
    for (int trial = 0; trial < 5; ++trial) {
        FpPoly c1 = random_homogeneous(E2->dual_ring(), rng, 8);
        FpPoly c2 = random_homogeneous(E2->dual_ring(), rng, 2);
        FpPoly t = c1 * w1 + c2 * w2;
        if (t.is_zero()) continue;
        auto dec = ideal_decompose(t, {w1, w2});
        REQUIRE(dec.has_value());
        FpPoly sum = dec->coefficients[0] * w1 + dec->coefficients[1] * w2;
        CHECK(sum == t);
        if (dec->alternative) {
            FpPoly alt =
                (*dec->alternative)[0] * w1 + (*dec->alternative)[1] * w2;
            CHECK(alt == t);
        }
    }
}

TEST_CASE("class grading is enforced") {
    SpacePtr E = SymplecticSpace::make(3, 1);
    std::vector<FpPoly> comps(E->lagrangians().size(),
                              FpPoly::parse(E->component_ring(), "x1"));
    CHECK_THROWS_AS(QuillenClass(E, 2, comps), std::logic_error);
    CHECK_NOTHROW(QuillenClass(E, 1, comps));
    CHECK(QuillenClass::zero_class(E, 5).is_zero());
}

TEST_CASE("class serialization lists RREF/polynomial pairs") {
    SpacePtr E = SymplecticSpace::make(3, 1);
    std::string s = class_kappa(E, 0).str();
    CHECK(s.find("[[1,0]] : x1^2") != std::string::npos);
    CHECK(s.find("[[0,1]] : x1^2") != std::string::npos);
}
