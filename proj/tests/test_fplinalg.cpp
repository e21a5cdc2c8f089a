#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "esp/fplinalg.hpp"

using namespace esp;

namespace {

GfMat random_matrix(std::mt19937_64& rng, int p, std::size_t rows, std::size_t cols) {
    GfMat m(p, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m.set(r, c, static_cast<int>(rng() % static_cast<unsigned>(p)));
    return m;
}

Subspace random_subspace(std::mt19937_64& rng, int p, std::size_t ambient,
                         std::size_t k) {
    while (true) {
        std::vector<std::vector<int>> rows;
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<int> v(ambient);
            for (auto& x : v) x = static_cast<int>(rng() % static_cast<unsigned>(p));
            rows.push_back(std::move(v));
        }
        Subspace s = Subspace::span(p, ambient, rows);
        if (s.dim() == k) return s;
    }
}

}  // namespace

TEST_CASE("solve_linear basic cases") {
    // identity system
    GfMat id = GfMat::identity(3, 2);
    auto s1 = solve_linear(id, {1, 2});
    REQUIRE(s1.has_value());
    CHECK(s1->particular == std::vector<int>{1, 2});
    CHECK(s1->kernel.empty());

    // x + y = 0 mod 3: kernel line through (1,2)
    GfMat a = GfMat::from_rows(3, {{1, 1}}, 2);
    auto s2 = solve_linear(a, {0});
    REQUIRE(s2.has_value());
    REQUIRE(s2->kernel.size() == 1);
    // the kernel line through (1,2); the basis vector is some scalar multiple
    CHECK(Subspace::span(3, 2, s2->kernel) == Subspace::span(3, 2, {{1, 2}}));

    // inconsistent
    GfMat b = GfMat::from_rows(3, {{1, 0}, {1, 0}}, 2);
    CHECK_FALSE(solve_linear(b, {1, 2}).has_value());
}

TEST_CASE("solutions re-verify by multiplication, always") {
    std::mt19937_64 rng(5);
    for (int p : {3, 5, 7}) {
        for (int trial = 0; trial < 60; ++trial) {
            std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
            GfMat A = random_matrix(rng, p, rows, cols);
            std::vector<int> b(rows);
            for (auto& x : b) x = static_cast<int>(rng() % static_cast<unsigned>(p));
            auto sol = solve_linear(A, b);
            if (sol) {
                CHECK(A.apply(sol->particular) == b);
                for (const auto& k : sol->kernel)
                    CHECK(A.apply(k) == std::vector<int>(rows, 0));
            } else {
                // rank certificate of inconsistency
                GfMat aug(p, rows, cols + 1);
                for (std::size_t r = 0; r < rows; ++r) {
                    for (std::size_t c = 0; c < cols; ++c) aug.set(r, c, A.at(r, c));
                    aug.set(r, cols, b[r]);
                }
                CHECK(rank_of(aug) == rank_of(A) + 1);
            }
        }
    }
}

TEST_CASE("solve_many agrees with solve_linear") {
    std::mt19937_64 rng(9);
    GfMat A = random_matrix(rng, 5, 6, 4);
    std::vector<std::vector<int>> rhs;
    for (int k = 0; k < 5; ++k) {
        std::vector<int> b(6);
        for (auto& x : b) x = static_cast<int>(rng() % 5u);
        rhs.push_back(std::move(b));
    }
    std::vector<std::vector<int>> kernel;
    auto many = solve_many(A, rhs, &kernel);
    for (std::size_t k = 0; k < rhs.size(); ++k) {
        auto single = solve_linear(A, rhs[k]);
        CHECK(many[k].has_value() == single.has_value());
        if (many[k]) CHECK(A.apply(*many[k]) == rhs[k]);
    }
    CHECK(kernel == kernel_basis(A));
}

TEST_CASE("matrix inverse") {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 30; ++trial) {
        GfMat A = random_matrix(rng, 5, 3, 3);
        auto inv = inverse(A);
        if (inv) {
            GfMat prod = A.mul(*inv);
            CHECK(prod.str() == GfMat::identity(5, 3).str());
        } else {
            CHECK(rank_of(A) < 3);
        }
    }
}

TEST_CASE("subspace canonical form") {
    // two spanning sets of the same plane give identical bases
    Subspace s1 = Subspace::span(3, 3, {{1, 1, 0}, {0, 1, 1}});
    Subspace s2 = Subspace::span(3, 3, {{1, 2, 1}, {2, 1, 2}, {1, 1, 0}});
    CHECK(s1 == s2);
    CHECK(s1.dim() == 2);
    CHECK(s1.contains({2, 2, 0}));
    CHECK_FALSE(s1.contains({1, 0, 0}));
    CHECK(Subspace::full(3, 3).contains(s1));
}

TEST_CASE("coordinates_of round-trips") {
    std::mt19937_64 rng(21);
    Subspace s = random_subspace(rng, 5, 4, 2);
    for (const auto& v : s.elements()) {
        std::vector<int> coords = s.coordinates_of(v);
        PrimeField F(5);
        std::vector<int> rebuilt(4, 0);
        for (std::size_t k = 0; k < coords.size(); ++k)
            for (std::size_t t = 0; t < 4; ++t)
                rebuilt[t] = F.add(rebuilt[t], F.mul(coords[k], s.basis()[k][t]));
        CHECK(rebuilt == v);
    }
    CHECK_THROWS_AS(s.coordinates_of({1, 0, 0, 0}), std::invalid_argument);
}

TEST_CASE("hyperplanes containing a subspace") {
    // the four lines of F_3^2
    Subspace V2 = Subspace::full(3, 2);
    Subspace zero2(3, 2);
    auto lines = hyperplanes_containing(V2, zero2);
    CHECK(lines.size() == 4);
    for (const auto& w : lines) {
        CHECK(w.dim() == 1);
        CHECK(V2.contains(w));
    }

    // codimension 1: the only hyperplane containing U is U itself
    Subspace U = Subspace::span(3, 2, {{1, 0}});
    auto only = hyperplanes_containing(V2, U);
    REQUIRE(only.size() == 1);
    CHECK(only[0] == U);

    CHECK_THROWS_AS(hyperplanes_containing(V2, V2), std::invalid_argument);
}

TEST_CASE("13 planes of F_3^3 via brute-force oracle") {
    Subspace V = Subspace::full(3, 3);
    Subspace zero(3, 3);
    auto planes = hyperplanes_containing(V, zero);
    CHECK(planes.size() == 13);  // (27-1)/2

    // oracle: independent enumeration of all rank-2 RREF matrices
    std::set<std::string> expected;
    for (const auto& s : all_subspaces(3, 3, 2)) expected.insert(s.str());
    std::set<std::string> got;
    for (const auto& s : planes) got.insert(s.str());
    CHECK(got == expected);
}

TEST_CASE("hyperplane count matches the closed form on random pairs") {
    std::mt19937_64 rng(33);
    for (int p : {3, 5}) {
        for (int trial = 0; trial < 20; ++trial) {
            std::size_t m = 2 + rng() % 3;  // ambient 2..4
            std::size_t dv = 1 + rng() % m;
            Subspace V = random_subspace(rng, p, m, dv);
            std::size_t du = rng() % V.dim();
            std::vector<std::vector<int>> rows(V.basis().begin(),
                                               V.basis().begin() + du);
            Subspace U = Subspace::span(p, m, rows);
            std::size_t s = V.dim() - U.dim();
            std::size_t expected = 0, q = 1;
            for (std::size_t i = 0; i < s; ++i) {
                expected += q;
                q *= static_cast<std::size_t>(p);
            }
            auto hyps = hyperplanes_containing(V, U);
            CHECK(hyps.size() == expected);
            for (const auto& W : hyps) {
                CHECK(W.dim() == V.dim() - 1);
                CHECK(W.contains(U));
                CHECK(V.contains(W));
            }
        }
    }
}

TEST_CASE("projective points") {
    CHECK(projective_points(3, 1).size() == 1);
    CHECK(projective_points(3, 2).size() == 4);
    CHECK(projective_points(5, 3).size() == 31);  // (125-1)/4

    // brute enumeration oracle: normalize every nonzero vector
    std::set<std::vector<int>> reps;
    PrimeField F(5);
    for (const auto& v : all_vectors(5, 3)) {
        if (std::all_of(v.begin(), v.end(), [](int x) { return x == 0; })) continue;
        std::size_t nz = 0;
        while (v[nz] == 0) ++nz;
        std::vector<int> canon(v.size());
        int s = F.inv(v[nz]);
        for (std::size_t i = 0; i < v.size(); ++i) canon[i] = F.mul(v[i], s);
        reps.insert(canon);
    }
    auto pts = projective_points(5, 3);
    CHECK(std::set<std::vector<int>>(pts.begin(), pts.end()) == reps);

    CHECK_THROWS_AS(projective_points(3, 0), std::invalid_argument);
}

TEST_CASE("annihilator") {
    Subspace zero(3, 4);
    CHECK(annihilator(zero) == Subspace::full(3, 4));
    CHECK(annihilator(Subspace::full(3, 4)).dim() == 0);

    Subspace U = Subspace::span(3, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}});
    Subspace ann = annihilator(U);
    CHECK(ann == Subspace::span(3, 4, {{0, 0, 1, 0}, {0, 0, 0, 1}}));
}

TEST_CASE("annihilator is an inclusion-reversing involution") {
    std::mt19937_64 rng(41);
    for (int p : {3, 5}) {
        for (int trial = 0; trial < 25; ++trial) {
            std::size_t m = 2 + rng() % 3;
            Subspace U = random_subspace(rng, p, m, rng() % (m + 1));
            Subspace V = random_subspace(rng, p, m, rng() % (m + 1));
            CHECK(annihilator(annihilator(U)) == U);
            CHECK(annihilator(U).dim() == m - U.dim());
            if (U.contains(V)) CHECK(annihilator(V).contains(annihilator(U)));
        }
    }
}

TEST_CASE("all_subspaces counts match Gaussian binomials") {
    CHECK(all_subspaces(3, 4, 2).size() == 130);
    CHECK(all_subspaces(3, 3, 1).size() == 13);
    CHECK(all_subspaces(5, 3, 2).size() == 31);
    CHECK(all_subspaces(3, 3, 0).size() == 1);
    CHECK(all_subspaces(3, 3, 3).size() == 1);
    // deterministic lexicographic order, all distinct
    auto subs = all_subspaces(3, 4, 2);
    for (std::size_t i = 1; i < subs.size(); ++i)
        CHECK(subs[i - 1].lex_less(subs[i]));
}

TEST_CASE("intersect and sum") {
    Subspace a = Subspace::span(3, 3, {{1, 0, 0}, {0, 1, 0}});
    Subspace b = Subspace::span(3, 3, {{0, 1, 0}, {0, 0, 1}});
    CHECK(a.intersect(b) == Subspace::span(3, 3, {{0, 1, 0}}));
    CHECK(a.sum(b) == Subspace::full(3, 3));
}

TEST_CASE("subspace forms") {
    RingPtr ring = PolyRing::make(3, {"x1", "x2", "x3"});
    Subspace U = Subspace::span(3, 3, {{1, 0, 2}});
    auto forms = subspace_forms(ring, U);
    REQUIRE(forms.size() == 1);
    CHECK(forms[0] == FpPoly::parse(ring, "x1 + 2*x3"));
    CHECK(LinearForm{{1, 0, 2}}.to_poly(ring) == forms[0]);
}
