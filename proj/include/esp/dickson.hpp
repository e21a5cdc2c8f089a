#pragma once

#include <vector>

#include "esp/fplinalg.hpp"
#include "esp/fppoly.hpp"
#include "esp/report.hpp"
#include "esp/symplectic.hpp"

namespace esp {

// Product of (arg - phi) over the F_p-span of a set of independent linear
// forms, evaluated at a degree<=1 argument.
struct MuiContext {
    RingPtr ring;
    std::vector<FpPoly> generators;
    FpPoly arg;
};

// direct product over all p^m span elements
FpPoly mui_poly_direct(const std::vector<FpPoly>& gens, const FpPoly& arg);
// hyperplane recursion M_{U+<g>}(X) = M_U(X)^p - M_U(X) M_U(g)^(p-1)
FpPoly mui_poly_recursive(const std::vector<FpPoly>& gens, const FpPoly& arg);
// production entry point: direct for m <= 3, recursion beyond; the two are
// checked against each other by verify_dickson_induction and in tests
FpPoly mui_poly(const std::vector<FpPoly>& gens, const FpPoly& arg);
FpPoly mui_poly(const MuiContext& ctx);

// Coefficient Q_{m,r} of the Mui polynomial: degree p^m - p^r, with the
// conventions Q_{m,m} = 1 and Q_{m,r} = 0 for r < 0.
FpPoly dickson_invariant(const RingPtr& ring, const std::vector<FpPoly>& gens,
                         int r);

// Mui_U(v)^(p-1); v must lie outside the span of the generators.
FpPoly mui_rel(const std::vector<FpPoly>& gens, const FpPoly& v);

// Carlisle-Kropholler invariant sum_j (a_j b_j^{p^i} - a_j^{p^i} b_j).
FpPoly zeta(const SymplecticSpace& E, int i);

// Hyperplane-sum relation for Mui and Dickson invariants over all W with
// U <= W < F_p^m.
VerificationReport verify_dickson_relation(int p, int m, const Subspace& U);
// sum over the p+1 intermediate hyperplanes of a codimension-2 inclusion
VerificationReport verify_muirel_sum(const Subspace& V, const Subspace& U);
// Mui/Dickson recursion for one hyperplane U < V
VerificationReport verify_dickson_induction(const Subspace& V, const Subspace& U);
// same, over every hyperplane of F_p^m with the direct product hoisted
VerificationReport verify_dickson_induction_all(int p, int m);

}  // namespace esp
