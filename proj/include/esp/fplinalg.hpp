#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "esp/fppoly.hpp"

namespace esp {

// Dense matrix over F_p.  Entries are int32 so eliminations can defer the
// mod-p reduction of the hot inner loop; reduced() brings everything back to
// least residues.
class GfMat {
public:
    GfMat(int p, std::size_t rows, std::size_t cols);
    static GfMat identity(int p, std::size_t n);
    static GfMat from_rows(int p, const std::vector<std::vector<int>>& rows,
                           std::size_t cols);

    int p() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    int at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, int v);
    std::vector<int> row(std::size_t r) const;

    std::vector<int> apply(const std::vector<int>& x) const;  // A x
    GfMat mul(const GfMat& other) const;
    GfMat transpose() const;

    // In-place reduction to reduced row echelon form; pivots are searched in
    // the first `pivot_limit` columns only (everything by default).  Returns
    // the pivot columns in order.
    std::vector<std::size_t> rref(std::size_t pivot_limit = SIZE_MAX);

    void reduce_all();
    std::string str() const;

private:
    int p_;
    std::size_t rows_, cols_;
    std::vector<int32_t> a_;
    int32_t* ptr(std::size_t r) { return a_.data() + r * cols_; }
    const int32_t* ptr(std::size_t r) const { return a_.data() + r * cols_; }
};

std::size_t rank_of(GfMat m);

struct LinearSystemSolution {
    std::vector<int> particular;
    std::vector<std::vector<int>> kernel;  // basis of the homogeneous kernel
};

// Solve A x = b; nullopt means inconsistent.
std::optional<LinearSystemSolution> solve_linear(const GfMat& A,
                                                 const std::vector<int>& b);

// One elimination shared by many right-hand sides.  kernel_out, when given,
// receives a basis of ker A.
std::vector<std::optional<std::vector<int>>> solve_many(
    const GfMat& A, const std::vector<std::vector<int>>& rhs,
    std::vector<std::vector<int>>* kernel_out = nullptr);

std::vector<std::vector<int>> kernel_basis(const GfMat& A);

// inverse of a square matrix, or nullopt when singular
std::optional<GfMat> inverse(const GfMat& A);

// F_p-subspace of F_p^ambient in canonical form: the basis matrix is the
// reduced row echelon form, so equal subspaces compare equal componentwise.
class Subspace {
public:
    Subspace(int p, std::size_t ambient);  // zero subspace
    static Subspace span(int p, std::size_t ambient,
                         const std::vector<std::vector<int>>& vectors);
    static Subspace full(int p, std::size_t ambient);

    int p() const { return p_; }
    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<std::vector<int>>& basis() const { return basis_; }

    bool contains(const std::vector<int>& v) const;
    bool contains(const Subspace& other) const;
    bool operator==(const Subspace& other) const;
    bool operator!=(const Subspace& other) const { return !(*this == other); }
    bool lex_less(const Subspace& other) const;

    // coefficients in the RREF basis; throws when v is outside
    std::vector<int> coordinates_of(const std::vector<int>& v) const;

    std::vector<std::vector<int>> elements() const;  // all p^dim vectors
    // one representative per line, scaled so the first nonzero ambient
    // coordinate is 1; deterministic order
    std::vector<std::vector<int>> projective_points() const;

    Subspace intersect(const Subspace& other) const;
    Subspace sum(const Subspace& other) const;

    std::string str() const;  // [[row],[row],...]

private:
    int p_;
    std::size_t ambient_;
    std::vector<std::vector<int>> basis_;
};

// all codimension-1 subspaces W of V with U <= W; requires U < V proper
std::vector<Subspace> hyperplanes_containing(const Subspace& V, const Subspace& U);

// {phi : phi(u) = 0 for all u in U}, in dual coordinates
Subspace annihilator(const Subspace& U);

std::vector<std::vector<int>> all_vectors(int p, std::size_t m);
std::vector<std::vector<int>> projective_points(int p, std::size_t m);
// all k-dimensional subspaces of F_p^ambient, sorted lexicographically by
// their RREF basis matrices
std::vector<Subspace> all_subspaces(int p, std::size_t ambient, std::size_t k);

struct LinearForm {
    std::vector<int> coeffs;
    FpPoly to_poly(const RingPtr& ring) const;
};

// RREF rows of U as degree-1 polynomials in `ring` (one per basis vector)
std::vector<FpPoly> subspace_forms(const RingPtr& ring, const Subspace& U);

}  // namespace esp
