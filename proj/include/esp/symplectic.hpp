#pragma once

#include <memory>
#include <vector>

#include "esp/fplinalg.hpp"
#include "esp/fppoly.hpp"

namespace esp {

class SymplecticSpace;
using SpacePtr = std::shared_ptr<const SymplecticSpace>;

// A maximal isotropic subspace together with the restriction map
// S(E*) -> S(I*): the dual-basis variable of E* indexed t goes to
// sum_k basis[k][t] * x_k, where basis is the canonical RREF basis of I.
struct Lagrangian {
    Subspace space;
    std::vector<FpPoly> var_images;  // one per E*-variable, z-free

    FpPoly restrict_poly(const FpPoly& f) const;
};

// E = F_p^{2n} with the standard symplectic form on the basis
// A_1..A_n, B_1..B_n (coordinates 0..n-1 and n..2n-1).  The dual ring
// S(E*) has variables a1..an, b1..bn; per-Lagrangian restrictions land in
// S(I*)[z] on variables x1..xn, z.
class SymplecticSpace {
public:
    static SpacePtr make(int p, int n);

    int p() const { return field_.p(); }
    int n() const { return n_; }
    std::size_t dim() const { return 2 * static_cast<std::size_t>(n_); }
    const PrimeField& field() const { return field_; }
    const RingPtr& dual_ring() const { return dual_ring_; }
    const RingPtr& component_ring() const { return comp_ring_; }
    std::size_t z_index() const { return static_cast<std::size_t>(n_); }
    const GfMat& gram() const { return gram_; }

    int form(const std::vector<int>& u, const std::vector<int>& v) const;
    Subspace perp(const Subspace& U) const;
    // (ker phi)^perp, a line inside ker phi; phi must be nonzero
    Subspace radical_line(const std::vector<int>& phi) const;

    const std::vector<Lagrangian>& lagrangians() const { return lagrangians_; }
    const std::vector<GfMat>& transvections() const { return transvections_; }

    // coefficients of phi restricted to I, in I's canonical coordinates
    std::vector<int> restrict_form(const std::vector<int>& phi,
                                   const Lagrangian& I) const;
    // action of a linear map M on S(E*): variable_i -> sum_j M[i][j] var_j
    FpPoly pullback(const FpPoly& f, const GfMat& M) const;
    // index of a Lagrangian in the enumeration; -1 when absent
    int lagrangian_index(const Subspace& s) const;

private:
    SymplecticSpace(int p, int n);
    PrimeField field_;
    int n_;
    GfMat gram_;
    RingPtr dual_ring_;
    RingPtr comp_ring_;
    std::vector<Lagrangian> lagrangians_;
    std::vector<GfMat> transvections_;
};

struct PhiData {
    std::vector<int> phi;
    Subspace radical;  // L_phi = (ker phi)^perp
};

PhiData make_phi_data(const SymplecticSpace& E, std::vector<int> phi);

std::size_t lagrangian_count(int p, int n);  // prod_{i=1..n} (p^i + 1)

// exhaustive filter; the production enumeration for n <= 2
std::vector<Subspace> lagrangian_subspaces_by_filter(int p, int n);
// isotropic flag extension; the production enumeration for n >= 3
std::vector<Subspace> lagrangian_subspaces_by_extension(int p, int n);

}  // namespace esp
