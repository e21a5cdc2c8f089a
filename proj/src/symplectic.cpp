#include "esp/symplectic.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace esp {

FpPoly Lagrangian::restrict_poly(const FpPoly& f) const {
    if (var_images.empty()) throw std::logic_error("uninitialized Lagrangian");
    return f.substitute(var_images.front().ring(), var_images);
}

SymplecticSpace::SymplecticSpace(int p, int n)
    : field_(p), n_(n), gram_(p, 2 * static_cast<std::size_t>(n), 2 * static_cast<std::size_t>(n)) {
    if (n < 1) throw std::invalid_argument("rank must be >= 1");
    for (int i = 0; i < n; ++i) {
        gram_.set(i, n + i, 1);
        gram_.set(n + i, i, p - 1);
    }
    std::vector<std::string> dual_vars;
    for (int i = 1; i <= n; ++i) dual_vars.push_back("a" + std::to_string(i));
    for (int i = 1; i <= n; ++i) dual_vars.push_back("b" + std::to_string(i));
    dual_ring_ = PolyRing::make(p, dual_vars);
    std::vector<std::string> comp_vars;
    for (int i = 1; i <= n; ++i) comp_vars.push_back("x" + std::to_string(i));
    comp_vars.push_back("z");
    comp_ring_ = PolyRing::make(p, comp_vars);
}

int SymplecticSpace::form(const std::vector<int>& u, const std::vector<int>& v) const {
    if (u.size() != dim() || v.size() != dim())
        throw std::invalid_argument("dimension mismatch");
    long long acc = 0;
    for (int i = 0; i < n_; ++i) {
        acc += static_cast<long long>(u[i]) * v[n_ + i];
        acc -= static_cast<long long>(u[n_ + i]) * v[i];
    }
    return field_.reduce(acc);
}

Subspace SymplecticSpace::perp(const Subspace& U) const {
    if (U.ambient_dim() != dim()) throw std::invalid_argument("ambient mismatch");
    if (U.dim() == 0) return Subspace::full(p(), dim());
    // U^perp = ker(B G)
    GfMat B = GfMat::from_rows(p(), U.basis(), dim());
    GfMat BG = B.mul(gram_);
    return Subspace::span(p(), dim(), kernel_basis(BG));
}

Subspace SymplecticSpace::radical_line(const std::vector<int>& phi) const {
    if (phi.size() != dim()) throw std::invalid_argument("dimension mismatch");
    if (std::all_of(phi.begin(), phi.end(),
                    [&](int c) { return field_.reduce(c) == 0; }))
        throw std::invalid_argument("phi must be nonzero");
    GfMat m = GfMat::from_rows(p(), {phi}, dim());
    Subspace ker = Subspace::span(p(), dim(), kernel_basis(m));
    return perp(ker);
}

std::vector<int> SymplecticSpace::restrict_form(const std::vector<int>& phi,
                                                const Lagrangian& I) const {
    std::vector<int> out(I.space.dim(), 0);
    for (std::size_t k = 0; k < I.space.dim(); ++k) {
        long long acc = 0;
        for (std::size_t t = 0; t < dim(); ++t)
            acc += static_cast<long long>(phi[t]) * I.space.basis()[k][t];
        out[k] = field_.reduce(acc);
    }
    return out;
}

FpPoly SymplecticSpace::pullback(const FpPoly& f, const GfMat& M) const {
    std::vector<FpPoly> images;
    for (std::size_t i = 0; i < dim(); ++i) {
        std::vector<int> row(dim());
        for (std::size_t j = 0; j < dim(); ++j) row[j] = M.at(i, j);
        images.push_back(FpPoly::linear_form(dual_ring_, row));
    }
    return f.substitute(dual_ring_, images);
}

int SymplecticSpace::lagrangian_index(const Subspace& s) const {
    for (std::size_t i = 0; i < lagrangians_.size(); ++i)
        if (lagrangians_[i].space == s) return static_cast<int>(i);
    return -1;
}

namespace {

// standard form on F_p^{2n} without a SymplecticSpace at hand
int std_form(int p, int n, const std::vector<int>& u, const std::vector<int>& v) {
    long long acc = 0;
    for (int i = 0; i < n; ++i) {
        acc += static_cast<long long>(u[i]) * v[n + i];
        acc -= static_cast<long long>(u[n + i]) * v[i];
    }
    long long r = acc % p;
    return static_cast<int>(r < 0 ? r + p : r);
}

bool is_isotropic(int p, int n, const Subspace& s) {
    const auto& b = s.basis();
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j)
            if (std_form(p, n, b[i], b[j]) != 0) return false;
    return true;
}

Subspace std_perp(int p, int n, const GfMat& gram, const Subspace& U) {
    if (U.dim() == 0) return Subspace::full(p, 2 * static_cast<std::size_t>(n));
    GfMat B = GfMat::from_rows(p, U.basis(), U.ambient_dim());
    GfMat BG = B.mul(gram);
    return Subspace::span(p, U.ambient_dim(), kernel_basis(BG));
}

void sort_spaces(std::vector<Subspace>& v) {
    std::sort(v.begin(), v.end(),
              [](const Subspace& a, const Subspace& b) { return a.lex_less(b); });
}

GfMat std_gram(int p, int n) {
    GfMat g(p, 2 * static_cast<std::size_t>(n), 2 * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        g.set(i, n + i, 1);
        g.set(n + i, i, p - 1);
    }
    return g;
}

}  // namespace

std::vector<Subspace> lagrangian_subspaces_by_filter(int p, int n) {
    std::vector<Subspace> out;
    for (auto& s : all_subspaces(p, 2 * static_cast<std::size_t>(n),
                                 static_cast<std::size_t>(n)))
        if (is_isotropic(p, n, s)) out.push_back(std::move(s));
    sort_spaces(out);
    return out;
}

std::vector<Subspace> lagrangian_subspaces_by_extension(int p, int n) {
    GfMat gram = std_gram(p, n);
    std::vector<Subspace> level = {Subspace(p, 2 * static_cast<std::size_t>(n))};
    for (int k = 0; k < n; ++k) {
        std::set<std::string> seen;
        std::vector<Subspace> next;
        for (const auto& s : level) {
            Subspace sp = std_perp(p, n, gram, s);
            for (const auto& v : sp.projective_points()) {
                if (s.contains(v)) continue;
                std::vector<std::vector<int>> rows = s.basis();
                rows.push_back(v);
                Subspace bigger = Subspace::span(p, s.ambient_dim(), rows);
                if (seen.insert(bigger.str()).second)
                    next.push_back(std::move(bigger));
            }
        }
        level = std::move(next);
    }
    sort_spaces(level);
    return level;
}

SpacePtr SymplecticSpace::make(int p, int n) {
    std::shared_ptr<SymplecticSpace> E(new SymplecticSpace(p, n));

    // exhaustive filter at n <= 2, isotropic flag extension beyond;
    // the two must agree where both run (checked in tests)
    std::vector<Subspace> spaces = (n <= 2)
                                       ? lagrangian_subspaces_by_filter(p, n)
                                       : lagrangian_subspaces_by_extension(p, n);

    for (auto& s : spaces) {
        Lagrangian L{std::move(s), {}};
        for (std::size_t t = 0; t < E->dim(); ++t) {
            std::vector<int> coeffs(E->comp_ring_->nvars(), 0);
            for (std::size_t k = 0; k < L.space.dim(); ++k)
                coeffs[k] = L.space.basis()[k][t];
            L.var_images.push_back(FpPoly::linear_form(E->comp_ring_, coeffs));
        }
        E->lagrangians_.push_back(std::move(L));
    }

    // transvection generators x -> x - (x,v)v, one per projective point
    for (const auto& v : projective_points(p, E->dim())) {
        GfMat M = GfMat::identity(p, E->dim());
        std::vector<int> w(E->dim());
        for (std::size_t i = 0; i < E->dim(); ++i) {
            long long acc = 0;
            for (std::size_t j = 0; j < E->dim(); ++j)
                acc += static_cast<long long>(E->gram_.at(i, j)) * v[j];
            w[i] = E->field_.reduce(acc);  // w = G v
        }
        // (x,v) = x^T G v = w^T x, so M = I - v w^T sends x to x - (x,v) v
        for (std::size_t i = 0; i < E->dim(); ++i)
            for (std::size_t j = 0; j < E->dim(); ++j)
                M.set(i, j, M.at(i, j) - v[i] * w[j]);
        // defining property, asserted per generator
        GfMat check = M.transpose().mul(E->gram_).mul(M);
        for (std::size_t i = 0; i < E->dim(); ++i)
            for (std::size_t j = 0; j < E->dim(); ++j)
                if (check.at(i, j) != E->gram_.at(i, j))
                    throw std::logic_error("transvection does not preserve the form");
        E->transvections_.push_back(std::move(M));
    }
    return E;
}

PhiData make_phi_data(const SymplecticSpace& E, std::vector<int> phi) {
    Subspace rad = E.radical_line(phi);
    return PhiData{std::move(phi), std::move(rad)};
}

std::size_t lagrangian_count(int p, int n) {
    std::size_t total = 1, q = 1;
    for (int i = 1; i <= n; ++i) {
        q *= static_cast<std::size_t>(p);
        total *= q + 1;
    }
    return total;
}

}  // namespace esp
