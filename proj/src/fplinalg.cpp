#include "esp/fplinalg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace esp {

GfMat::GfMat(int p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {
    if (!is_odd_prime(p)) throw std::invalid_argument("bad modulus");
}

GfMat GfMat::identity(int p, std::size_t n) {
    GfMat m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

GfMat GfMat::from_rows(int p, const std::vector<std::vector<int>>& rows,
                       std::size_t cols) {
    GfMat m(p, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("ragged rows");
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
    }
    return m;
}

int GfMat::at(std::size_t r, std::size_t c) const {
    int32_t v = a_.at(r * cols_ + c);
    int32_t m = v % p_;
    return m < 0 ? m + p_ : m;
}

void GfMat::set(std::size_t r, std::size_t c, int v) {
    int m = v % p_;
    a_.at(r * cols_ + c) = m < 0 ? m + p_ : m;
}

std::vector<int> GfMat::row(std::size_t r) const {
    std::vector<int> out(cols_);
    for (std::size_t c = 0; c < cols_; ++c) out[c] = at(r, c);
    return out;
}

std::vector<int> GfMat::apply(const std::vector<int>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("dimension mismatch");
    std::vector<int> out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        long long acc = 0;
        const int32_t* row = ptr(r);
        for (std::size_t c = 0; c < cols_; ++c) acc += static_cast<long long>(row[c]) * x[c];
        out[r] = static_cast<int>(((acc % p_) + p_) % p_);
    }
    return out;
}

GfMat GfMat::mul(const GfMat& other) const {
    if (cols_ != other.rows_) throw std::invalid_argument("dimension mismatch");
    GfMat out(p_, rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            int v = at(i, k);
            if (v == 0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j)
                out.a_[i * out.cols_ + j] += v * other.at(k, j);
        }
    out.reduce_all();
    return out;
}

GfMat GfMat::transpose() const {
    GfMat out(p_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out.set(c, r, at(r, c));
    return out;
}

void GfMat::reduce_all() {
    for (auto& v : a_) {
        int32_t m = v % p_;
        v = m < 0 ? m + p_ : m;
    }
}

std::vector<std::size_t> GfMat::rref(std::size_t pivot_limit) {
    const std::size_t limit = std::min<std::size_t>(pivot_limit, cols_);
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    // inverse table for the tiny moduli in play
    std::vector<int> inv(p_, 0);
    PrimeField F(p_);
    for (int v = 1; v < p_; ++v) inv[v] = F.inv(v);

    for (std::size_t col = 0; col < limit && row < rows_; ++col) {
        std::size_t pr = rows_;
        for (std::size_t r = row; r < rows_; ++r) {
            int32_t v = ptr(r)[col] % p_;
            ptr(r)[col] = v < 0 ? v + p_ : v;
            if (ptr(r)[col] != 0) {
                pr = r;
                break;
            }
        }
        if (pr == rows_) continue;
        if (pr != row)
            std::swap_ranges(ptr(row), ptr(row) + cols_, ptr(pr));
        // normalize the pivot row to least residues with pivot 1
        int32_t* prow = ptr(row);
        for (std::size_t c = 0; c < cols_; ++c) {
            int32_t v = prow[c] % p_;
            prow[c] = v < 0 ? v + p_ : v;
        }
        int s = inv[prow[col]];
        if (s != 1)
            for (std::size_t c = 0; c < cols_; ++c) prow[c] = (prow[c] * s) % p_;
        for (std::size_t r = row + 1; r < rows_; ++r) {
            int32_t* rrow = ptr(r);
            int32_t v = rrow[col] % p_;
            if (v < 0) v += p_;
            if (v == 0) {
                rrow[col] = v;
                continue;
            }
            int32_t f = p_ - v;
            for (std::size_t c = col; c < cols_; ++c) rrow[c] += f * prow[c];
        }
        pivots.push_back(col);
        ++row;
    }
    reduce_all();
    // back-substitution: clear entries above every pivot
    for (std::size_t i = pivots.size(); i-- > 0;) {
        std::size_t col = pivots[i];
        const int32_t* prow = ptr(i);
        for (std::size_t r = 0; r < i; ++r) {
            int32_t* rrow = ptr(r);
            int32_t v = rrow[col];
            if (v == 0) continue;
            int32_t f = p_ - v;
            for (std::size_t c = col; c < cols_; ++c)
                rrow[c] = (rrow[c] + f * prow[c]) % p_;
        }
    }
    return pivots;
}

std::string GfMat::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t r = 0; r < rows_; ++r) {
        if (r) os << ",";
        os << "[";
        for (std::size_t c = 0; c < cols_; ++c) {
            if (c) os << ",";
            os << at(r, c);
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

std::size_t rank_of(GfMat m) { return m.rref().size(); }

namespace {

std::vector<std::vector<int>> kernel_from_rref(const GfMat& R,
                                               const std::vector<std::size_t>& pivots,
                                               std::size_t ncols) {
    const int p = R.p();
    std::vector<bool> is_pivot(ncols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<int>> out;
    for (std::size_t free_col = 0; free_col < ncols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<int> v(ncols, 0);
        v[free_col] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            int val = R.at(i, free_col);
            v[pivots[i]] = (p - val) % p;
        }
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace

std::vector<std::optional<std::vector<int>>> solve_many(
    const GfMat& A, const std::vector<std::vector<int>>& rhs,
    std::vector<std::vector<int>>* kernel_out) {
    const std::size_t n = A.cols();
    GfMat aug(A.p(), A.rows(), n + rhs.size());
    for (std::size_t r = 0; r < A.rows(); ++r)
        for (std::size_t c = 0; c < n; ++c) aug.set(r, c, A.at(r, c));
    for (std::size_t k = 0; k < rhs.size(); ++k) {
        if (rhs[k].size() != A.rows())
            throw std::invalid_argument("rhs size mismatch");
        for (std::size_t r = 0; r < A.rows(); ++r) aug.set(r, n + k, rhs[k][r]);
    }
    std::vector<std::size_t> pivots = aug.rref(n);

    std::vector<std::optional<std::vector<int>>> results(rhs.size());
    for (std::size_t k = 0; k < rhs.size(); ++k) {
        bool consistent = true;
        for (std::size_t r = pivots.size(); r < A.rows() && consistent; ++r)
            if (aug.at(r, n + k) != 0) consistent = false;
        if (!consistent) continue;
        std::vector<int> x(n, 0);
        for (std::size_t i = 0; i < pivots.size(); ++i)
            x[pivots[i]] = aug.at(i, n + k);
        // every returned solution re-verifies by multiplication
        if (A.apply(x) != rhs[k])
            throw std::logic_error("solver produced an unverified solution");
        results[k] = std::move(x);
    }
    if (kernel_out) *kernel_out = kernel_from_rref(aug, pivots, n);
    return results;
}

std::optional<LinearSystemSolution> solve_linear(const GfMat& A,
                                                 const std::vector<int>& b) {
    std::vector<std::vector<int>> kernel;
    auto res = solve_many(A, {b}, &kernel);
    if (!res[0]) return std::nullopt;
    return LinearSystemSolution{std::move(*res[0]), std::move(kernel)};
}

std::vector<std::vector<int>> kernel_basis(const GfMat& A) {
    GfMat m = A;
    auto pivots = m.rref();
    return kernel_from_rref(m, pivots, A.cols());
}

std::optional<GfMat> inverse(const GfMat& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("not square");
    const std::size_t n = A.rows();
    GfMat aug(A.p(), n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug.set(r, c, A.at(r, c));
        aug.set(r, n + r, 1);
    }
    if (aug.rref(n).size() != n) return std::nullopt;
    GfMat inv(A.p(), n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv.set(r, c, aug.at(r, n + c));
    return inv;
}

// ---- Subspace ----

Subspace::Subspace(int p, std::size_t ambient) : p_(p), ambient_(ambient) {
    if (!is_odd_prime(p)) throw std::invalid_argument("bad modulus");
}

Subspace Subspace::span(int p, std::size_t ambient,
                        const std::vector<std::vector<int>>& vectors) {
    Subspace s(p, ambient);
    if (vectors.empty()) return s;
    GfMat m = GfMat::from_rows(p, vectors, ambient);
    std::size_t rank = m.rref().size();
    for (std::size_t r = 0; r < rank; ++r) s.basis_.push_back(m.row(r));
    return s;
}

Subspace Subspace::full(int p, std::size_t ambient) {
    std::vector<std::vector<int>> rows;
    for (std::size_t i = 0; i < ambient; ++i) {
        std::vector<int> e(ambient, 0);
        e[i] = 1;
        rows.push_back(std::move(e));
    }
    return span(p, ambient, rows);
}

bool Subspace::contains(const std::vector<int>& v) const {
    if (v.size() != ambient_) throw std::invalid_argument("dimension mismatch");
    PrimeField F(p_);
    std::vector<int> r = v;
    for (auto& x : r) x = F.reduce(x);
    for (const auto& row : basis_) {
        std::size_t pivot = 0;
        while (pivot < ambient_ && row[pivot] == 0) ++pivot;
        if (pivot == ambient_) continue;
        int c = r[pivot];
        if (c != 0)
            for (std::size_t i = 0; i < ambient_; ++i)
                r[i] = F.sub(r[i], F.mul(c, row[i]));
    }
    return std::all_of(r.begin(), r.end(), [](int x) { return x == 0; });
}

bool Subspace::contains(const Subspace& other) const {
    for (const auto& row : other.basis_)
        if (!contains(row)) return false;
    return true;
}

bool Subspace::operator==(const Subspace& other) const {
    return p_ == other.p_ && ambient_ == other.ambient_ && basis_ == other.basis_;
}

bool Subspace::lex_less(const Subspace& other) const {
    return basis_ < other.basis_;
}

std::vector<int> Subspace::coordinates_of(const std::vector<int>& v) const {
    // with an RREF basis the coefficient of row k is just v at its pivot
    std::vector<int> coords(dim(), 0);
    PrimeField F(p_);
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        std::size_t pivot = 0;
        while (pivot < ambient_ && basis_[k][pivot] == 0) ++pivot;
        coords[k] = F.reduce(v.at(pivot));
    }
    std::vector<int> check(ambient_, 0);
    for (std::size_t k = 0; k < basis_.size(); ++k)
        for (std::size_t i = 0; i < ambient_; ++i)
            check[i] = F.add(check[i], F.mul(coords[k], basis_[k][i]));
    for (std::size_t i = 0; i < ambient_; ++i)
        if (check[i] != F.reduce(v[i]))
            throw std::invalid_argument("vector outside subspace");
    return coords;
}

std::vector<std::vector<int>> Subspace::elements() const {
    PrimeField F(p_);
    std::vector<std::vector<int>> out;
    std::vector<int> coeffs(dim(), 0);
    while (true) {
        std::vector<int> v(ambient_, 0);
        for (std::size_t k = 0; k < dim(); ++k)
            if (coeffs[k] != 0)
                for (std::size_t i = 0; i < ambient_; ++i)
                    v[i] = F.add(v[i], F.mul(coeffs[k], basis_[k][i]));
        out.push_back(std::move(v));
        std::size_t j = dim();
        while (j > 0 && coeffs[j - 1] == p_ - 1) coeffs[--j] = 0;
        if (j == 0) break;
        ++coeffs[j - 1];
    }
    return out;
}

std::vector<std::vector<int>> Subspace::projective_points() const {
    PrimeField F(p_);
    std::vector<std::vector<int>> out;
    for (const auto& c : esp::projective_points(p_, dim())) {
        std::vector<int> v(ambient_, 0);
        for (std::size_t k = 0; k < dim(); ++k)
            if (c[k] != 0)
                for (std::size_t i = 0; i < ambient_; ++i)
                    v[i] = F.add(v[i], F.mul(c[k], basis_[k][i]));
        // rescale so the first nonzero ambient coordinate is 1
        std::size_t nz = 0;
        while (nz < ambient_ && v[nz] == 0) ++nz;
        int s = F.inv(v[nz]);
        if (s != 1)
            for (auto& x : v) x = F.mul(x, s);
        out.push_back(std::move(v));
    }
    return out;
}

Subspace Subspace::sum(const Subspace& other) const {
    if (p_ != other.p_ || ambient_ != other.ambient_)
        throw std::invalid_argument("ambient mismatch");
    std::vector<std::vector<int>> rows = basis_;
    rows.insert(rows.end(), other.basis_.begin(), other.basis_.end());
    return span(p_, ambient_, rows);
}

Subspace Subspace::intersect(const Subspace& other) const {
    if (p_ != other.p_ || ambient_ != other.ambient_)
        throw std::invalid_argument("ambient mismatch");
    if (dim() == 0 || other.dim() == 0) return Subspace(p_, ambient_);
    // intersection = annihilator of the sum of annihilators
    Subspace both = annihilator(*this).sum(annihilator(other));
    return annihilator(both);
}

std::string Subspace::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t r = 0; r < basis_.size(); ++r) {
        if (r) os << ",";
        os << "[";
        for (std::size_t c = 0; c < ambient_; ++c) {
            if (c) os << ",";
            os << basis_[r][c];
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

Subspace annihilator(const Subspace& U) {
    int p = U.p();
    std::size_t m = U.ambient_dim();
    if (U.dim() == 0) return Subspace::full(p, m);
    GfMat B = GfMat::from_rows(p, U.basis(), m);
    return Subspace::span(p, m, kernel_basis(B));
}

std::vector<Subspace> hyperplanes_containing(const Subspace& V, const Subspace& U) {
    if (!V.contains(U) || U == V)
        throw std::invalid_argument("need U a proper subspace of V");
    const int p = V.p();
    const std::size_t d = V.dim();
    // U in V-coordinates
    std::vector<std::vector<int>> ucoords;
    for (const auto& row : U.basis()) ucoords.push_back(V.coordinates_of(row));
    Subspace Uc = Subspace::span(p, d, ucoords);
    Subspace ann = annihilator(Uc);  // functionals on F_p^d vanishing on U
    std::vector<Subspace> out;
    PrimeField F(p);
    for (const auto& psi : ann.projective_points()) {
        GfMat m = GfMat::from_rows(p, {psi}, d);
        auto ker = kernel_basis(m);  // (d-1)-dim in V-coordinates
        std::vector<std::vector<int>> rows;
        for (const auto& k : ker) {
            std::vector<int> v(V.ambient_dim(), 0);
            for (std::size_t j = 0; j < d; ++j)
                if (k[j] != 0)
                    for (std::size_t i = 0; i < V.ambient_dim(); ++i)
                        v[i] = F.add(v[i], F.mul(k[j], V.basis()[j][i]));
            rows.push_back(std::move(v));
        }
        out.push_back(Subspace::span(p, V.ambient_dim(), rows));
    }
    std::sort(out.begin(), out.end(),
              [](const Subspace& a, const Subspace& b) { return a.lex_less(b); });
    return out;
}

std::vector<std::vector<int>> all_vectors(int p, std::size_t m) {
    std::vector<std::vector<int>> out;
    std::vector<int> v(m, 0);
    while (true) {
        out.push_back(v);
        std::size_t j = m;
        while (j > 0 && v[j - 1] == p - 1) v[--j] = 0;
        if (j == 0) break;
        ++v[j - 1];
    }
    return out;
}

std::vector<std::vector<int>> projective_points(int p, std::size_t m) {
    if (m == 0) throw std::invalid_argument("zero space has no projective points");
    std::vector<std::vector<int>> out;
    for (auto& v : all_vectors(p, m)) {
        std::size_t nz = 0;
        while (nz < m && v[nz] == 0) ++nz;
        if (nz < m && v[nz] == 1) out.push_back(std::move(v));
    }
    return out;
}

std::vector<Subspace> all_subspaces(int p, std::size_t ambient, std::size_t k) {
    if (k > ambient) throw std::invalid_argument("dimension exceeds ambient");
    std::vector<Subspace> out;
    if (k == 0) {
        out.emplace_back(p, ambient);
        return out;
    }
    // enumerate RREF matrices by pivot-column pattern
    std::vector<std::size_t> piv(k);
    std::iota(piv.begin(), piv.end(), 0);
    while (true) {
        // free positions: row r, column c with c > piv[r] and c not a pivot
        std::vector<std::pair<std::size_t, std::size_t>> free_pos;
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = piv[r] + 1; c < ambient; ++c)
                if (std::find(piv.begin(), piv.end(), c) == piv.end())
                    free_pos.emplace_back(r, c);
        std::vector<int> vals(free_pos.size(), 0);
        while (true) {
            std::vector<std::vector<int>> rows(k, std::vector<int>(ambient, 0));
            for (std::size_t r = 0; r < k; ++r) rows[r][piv[r]] = 1;
            for (std::size_t i = 0; i < free_pos.size(); ++i)
                rows[free_pos[i].first][free_pos[i].second] = vals[i];
            Subspace s(p, ambient);
            s = Subspace::span(p, ambient, rows);
            out.push_back(std::move(s));
            std::size_t j = vals.size();
            while (j > 0 && vals[j - 1] == p - 1) vals[--j] = 0;
            if (j == 0) break;
            ++vals[j - 1];
        }
        // next pivot combination
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (piv[i] + (k - i) < ambient) {
                ++piv[i];
                for (std::size_t j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
                break;
            }
            if (i == 0) {
                std::sort(out.begin(), out.end(),
                          [](const Subspace& a, const Subspace& b) {
                              return a.lex_less(b);
                          });
                return out;
            }
        }
    }
}

FpPoly LinearForm::to_poly(const RingPtr& ring) const {
    return FpPoly::linear_form(ring, coeffs);
}

std::vector<FpPoly> subspace_forms(const RingPtr& ring, const Subspace& U) {
    if (ring->nvars() != U.ambient_dim())
        throw std::invalid_argument("ring/subspace dimension mismatch");
    std::vector<FpPoly> out;
    for (const auto& row : U.basis())
        out.push_back(FpPoly::linear_form(ring, row));
    return out;
}

}  // namespace esp
