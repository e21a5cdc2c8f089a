#pragma once

#include <optional>
#include <vector>

#include "esp/dickson.hpp"
#include "esp/fplinalg.hpp"
#include "esp/fppoly.hpp"
#include "esp/symplectic.hpp"

namespace esp {

// A cohomology class modulo nilradical, represented by its family of
// restrictions to the maximal isotropic subspaces: one polynomial in
// S(I*)[z] per Lagrangian, in enumeration order.  Zero as a class means
// nilpotent (Quillen's criterion).
class QuillenClass {
public:
    QuillenClass(SpacePtr E, int degree, std::vector<FpPoly> components);
    static QuillenClass zero_class(SpacePtr E, int degree);

    const SpacePtr& space() const { return E_; }
    int degree() const { return degree_; }
    const std::vector<FpPoly>& components() const { return comps_; }
    const FpPoly& component(std::size_t i) const { return comps_.at(i); }

    bool is_zero() const;
    bool z_free() const;

    QuillenClass operator+(const QuillenClass& o) const;
    QuillenClass operator-(const QuillenClass& o) const;
    QuillenClass operator*(const QuillenClass& o) const;
    QuillenClass scaled(int c) const;
    QuillenClass pth_power() const;
    bool operator==(const QuillenClass& o) const;

    // "(RREF matrix) : polynomial" per Lagrangian, enumeration order
    std::string str() const;

private:
    SpacePtr E_;
    int degree_;
    std::vector<FpPoly> comps_;
};

// Restriction family of the Chern class kappa_{n,r}: D_r(I*) at every I.
QuillenClass class_kappa(const SpacePtr& E, int r);
// Restriction family of the top Chern class: Mui_{I*}(z) at every I.
QuillenClass class_zeta_top(const SpacePtr& E);
// Family of restrictions of a homogeneous f in S(E*).
QuillenClass inflate(const SpacePtr& E, const FpPoly& f);
// Transfer-class model: component -D_r(I_phi*) MuiRel(I_phi*, I*) at the
// Lagrangians inside ker phi, zero elsewhere.
QuillenClass class_chi(const SpacePtr& E, int r, const std::vector<int>& phi);

struct InflationQuery {
    QuillenClass target;
    int degree;
};

// Some homogeneous f in S(E*) with inflate(f) = c, or nullopt.
std::optional<FpPoly> inflation_preimage(const QuillenClass& c);
std::optional<FpPoly> inflation_preimage(const InflationQuery& q);

struct IdealDecomposition {
    std::vector<FpPoly> coefficients;       // one per generator
    std::size_t kernel_dim = 0;
    // a second solution (shifted along the solver kernel) when one exists
    std::optional<std::vector<FpPoly>> alternative;
};

// Homogeneous f_i with t = sum f_i g_i, found degreewise by linear algebra;
// the result re-expands to t exactly.
std::optional<IdealDecomposition> ideal_decompose(const FpPoly& t,
                                                  const std::vector<FpPoly>& gens);

// ---- graded linear-algebra glue shared by the solvers ----

std::vector<int> poly_coeff_vector(const FpPoly& f, const std::vector<Mono>& basis);
FpPoly poly_from_coeff_vector(const RingPtr& ring, const std::vector<int>& coeffs,
                              const std::vector<Mono>& basis);

// Matrix of the joint restriction map in one degree: columns are indexed by
// the degree-d monomials of S(E*), rows by (Lagrangian, degree-d monomial of
// S(I*)) pairs; lagrangian_subset empty means all of them.
GfMat restriction_matrix(const SymplecticSpace& E, int degree,
                         const std::vector<std::size_t>& lagrangian_subset = {});
// stacked coefficient vectors of the components of c (z-free classes)
std::vector<int> class_coeff_vector(const QuillenClass& c,
                                    const std::vector<std::size_t>& lagrangian_subset = {});

// transport of a class along a symplectic matrix: permutes Lagrangians and
// rewrites components through the induced coordinate change
QuillenClass transport(const QuillenClass& c, const GfMat& M);

}  // namespace esp
