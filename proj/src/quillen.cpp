#include "esp/quillen.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace esp {

namespace {

void check_component_grading(int degree, const std::vector<FpPoly>& comps) {
    for (const auto& c : comps) {
        if (!c.is_homogeneous())
            throw std::logic_error("class component not homogeneous");
        if (!c.is_zero() && c.degree() != degree)
            throw std::logic_error("class component of wrong degree");
    }
}

// z-free monomial basis of S(I*) in the component ring
std::vector<Mono> component_basis(const SymplecticSpace& E, int degree) {
    std::vector<Mono> base = monomials_of_degree(static_cast<std::size_t>(E.n()), degree);
    for (auto& m : base) m.push_back(0);  // z exponent
    return base;
}

std::vector<std::size_t> all_indices(const SymplecticSpace& E) {
    std::vector<std::size_t> idx(E.lagrangians().size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return idx;
}

}  // namespace

QuillenClass::QuillenClass(SpacePtr E, int degree, std::vector<FpPoly> components)
    : E_(std::move(E)), degree_(degree), comps_(std::move(components)) {
    if (comps_.size() != E_->lagrangians().size())
        throw std::invalid_argument("one component per Lagrangian required");
    check_component_grading(degree_, comps_);
}

QuillenClass QuillenClass::zero_class(SpacePtr E, int degree) {
    std::vector<FpPoly> comps(E->lagrangians().size(),
                              FpPoly(E->component_ring()));
    return QuillenClass(std::move(E), degree, std::move(comps));
}

bool QuillenClass::is_zero() const {
    return std::all_of(comps_.begin(), comps_.end(),
                       [](const FpPoly& f) { return f.is_zero(); });
}

bool QuillenClass::z_free() const {
    const std::size_t zi = E_->z_index();
    return std::all_of(comps_.begin(), comps_.end(),
                       [&](const FpPoly& f) { return f.degree_in(zi) == 0; });
}

QuillenClass QuillenClass::operator+(const QuillenClass& o) const {
    if (E_->p() != o.E_->p() || E_->n() != o.E_->n())
        throw std::invalid_argument("space mismatch");
    if (degree_ != o.degree_)
        throw std::invalid_argument("degree mismatch in class addition");
    std::vector<FpPoly> comps;
    for (std::size_t i = 0; i < comps_.size(); ++i)
        comps.push_back(comps_[i] + o.comps_[i]);
    return QuillenClass(E_, degree_, std::move(comps));
}

QuillenClass QuillenClass::operator-(const QuillenClass& o) const {
    return *this + o.scaled(-1);
}

QuillenClass QuillenClass::operator*(const QuillenClass& o) const {
    if (E_->p() != o.E_->p() || E_->n() != o.E_->n())
        throw std::invalid_argument("space mismatch");
    std::vector<FpPoly> comps;
    for (std::size_t i = 0; i < comps_.size(); ++i)
        comps.push_back(comps_[i] * o.comps_[i]);
    return QuillenClass(E_, degree_ + o.degree_, std::move(comps));
}

QuillenClass QuillenClass::scaled(int c) const {
    std::vector<FpPoly> comps;
    for (const auto& f : comps_) comps.push_back(f.scaled(c));
    return QuillenClass(E_, degree_, std::move(comps));
}

QuillenClass QuillenClass::pth_power() const {
    std::vector<FpPoly> comps;
    for (const auto& f : comps_) comps.push_back(f.frobenius(1));
    return QuillenClass(E_, degree_ * E_->p(), std::move(comps));
}

bool QuillenClass::operator==(const QuillenClass& o) const {
    // componentwise polynomial equality; the formal degree is bookkeeping
    // (a zero class compares equal in any degree)
    if (E_->p() != o.E_->p() || E_->n() != o.E_->n()) return false;
    return comps_ == o.comps_;
}

std::string QuillenClass::str() const {
    std::ostringstream os;
    const auto& ls = E_->lagrangians();
    for (std::size_t i = 0; i < ls.size(); ++i) {
        if (i) os << "\n";
        os << ls[i].space.str() << " : " << comps_[i].str();
    }
    return os.str();
}

QuillenClass class_kappa(const SpacePtr& E, int r) {
    if (r < 0 || r > E->n()) throw std::invalid_argument("kappa index out of range");
    const RingPtr& ring = E->component_ring();
    std::vector<FpPoly> gens;
    for (int k = 0; k < E->n(); ++k)
        gens.push_back(FpPoly::variable(ring, static_cast<std::size_t>(k)));
    FpPoly d = dickson_invariant(ring, gens, r);
    // canonical coordinates make the component literally the same at every I
    std::vector<FpPoly> comps(E->lagrangians().size(), d);
    int degree = 1;
    for (int i = 0; i < E->n(); ++i) degree *= E->p();
    int pr = 1;
    for (int i = 0; i < r; ++i) pr *= E->p();
    return QuillenClass(E, degree - pr, std::move(comps));
}

QuillenClass class_zeta_top(const SpacePtr& E) {
    const RingPtr& ring = E->component_ring();
    std::vector<FpPoly> gens;
    for (int k = 0; k < E->n(); ++k)
        gens.push_back(FpPoly::variable(ring, static_cast<std::size_t>(k)));
    FpPoly mui = mui_poly(gens, FpPoly::variable(ring, E->z_index()));
    std::vector<FpPoly> comps(E->lagrangians().size(), mui);
    int degree = 1;
    for (int i = 0; i < E->n(); ++i) degree *= E->p();
    return QuillenClass(E, degree, std::move(comps));
}

QuillenClass inflate(const SpacePtr& E, const FpPoly& f) {
    if (!f.ring()->same(*E->dual_ring()))
        throw std::invalid_argument("polynomial not in S(E*)");
    if (!f.is_homogeneous())
        throw std::invalid_argument("inflation requires a homogeneous polynomial");
    std::vector<FpPoly> comps;
    for (const auto& I : E->lagrangians()) comps.push_back(I.restrict_poly(f));
    return QuillenClass(E, std::max(f.degree(), 0), std::move(comps));
}

QuillenClass class_chi(const SpacePtr& E, int r, const std::vector<int>& phi) {
    if (r < 0 || r >= E->n()) throw std::invalid_argument("chi index out of range");
    Subspace radical = E->radical_line(phi);  // throws on phi = 0
    const std::vector<int>& line = radical.basis().front();
    const RingPtr& ring = E->component_ring();
    const std::size_t n = static_cast<std::size_t>(E->n());

    std::vector<FpPoly> comps;
    for (const auto& I : E->lagrangians()) {
        std::vector<int> w = E->restrict_form(phi, I);
        bool vanishes = std::all_of(w.begin(), w.end(), [](int x) { return x == 0; });
        if (!vanishes) {
            comps.emplace_back(ring);
            continue;
        }
        // phi|_I = 0 forces L_phi <= I; I_phi* is the annihilator of L_phi
        std::vector<int> c = I.space.coordinates_of(line);
        GfMat cm = GfMat::from_rows(E->p(), {c}, n);
        std::vector<FpPoly> iphi_gens;
        for (const auto& k : kernel_basis(cm)) {
            std::vector<int> padded = k;
            padded.push_back(0);  // z coefficient
            iphi_gens.push_back(FpPoly::linear_form(ring, padded));
        }
        std::size_t k0 = 0;
        while (c[k0] == 0) ++k0;
        FpPoly v = FpPoly::variable(ring, k0);
        FpPoly comp =
            (dickson_invariant(ring, iphi_gens, r) * mui_rel(iphi_gens, v)).scaled(-1);
        comps.push_back(std::move(comp));
    }
    int pn = 1;
    for (int i = 0; i < E->n(); ++i) pn *= E->p();
    int pr = 1;
    for (int i = 0; i < r; ++i) pr *= E->p();
    return QuillenClass(E, pn - pr, std::move(comps));
}

std::vector<int> poly_coeff_vector(const FpPoly& f, const std::vector<Mono>& basis) {
    std::vector<int> out(basis.size(), 0);
    GrlexLess less;
    for (const auto& t : f.terms()) {
        auto it = std::lower_bound(basis.begin(), basis.end(), t.mono, less);
        if (it == basis.end() || *it != t.mono)
            throw std::invalid_argument("term outside monomial basis");
        out[static_cast<std::size_t>(it - basis.begin())] = t.coeff;
    }
    return out;
}

FpPoly poly_from_coeff_vector(const RingPtr& ring, const std::vector<int>& coeffs,
                              const std::vector<Mono>& basis) {
    if (coeffs.size() != basis.size())
        throw std::invalid_argument("coefficient vector size mismatch");
    std::vector<Term> ts;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (coeffs[i] != 0) ts.push_back(Term{basis[i], coeffs[i]});
    return FpPoly::from_terms(ring, std::move(ts));
}

GfMat restriction_matrix(const SymplecticSpace& E, int degree,
                         const std::vector<std::size_t>& lagrangian_subset) {
    std::vector<std::size_t> idx =
        lagrangian_subset.empty() ? all_indices(E) : lagrangian_subset;
    const RingPtr& ring = E.component_ring();
    std::vector<Mono> ibasis = component_basis(E, degree);
    std::vector<Mono> emonos =
        monomials_of_degree(E.dual_ring()->nvars(), degree);
    GfMat A(E.p(), idx.size() * ibasis.size(), emonos.size());
    GrlexLess less;
    for (std::size_t bi = 0; bi < idx.size(); ++bi) {
        const Lagrangian& I = E.lagrangians()[idx[bi]];
        // shared power table per variable of S(E*)
        std::vector<std::vector<FpPoly>> powers(E.dual_ring()->nvars());
        for (std::size_t v = 0; v < powers.size(); ++v) {
            powers[v].reserve(static_cast<std::size_t>(degree) + 1);
            powers[v].push_back(FpPoly::constant(ring, 1));
            for (int e = 1; e <= degree; ++e)
                powers[v].push_back(powers[v].back() * I.var_images[v]);
        }
        for (std::size_t col = 0; col < emonos.size(); ++col) {
            FpPoly res = FpPoly::constant(ring, 1);
            for (std::size_t v = 0; v < powers.size() && !res.is_zero(); ++v) {
                int e = emonos[col][v];
                if (e > 0) res = res * powers[v][static_cast<std::size_t>(e)];
            }
            for (const auto& t : res.terms()) {
                auto it = std::lower_bound(ibasis.begin(), ibasis.end(), t.mono, less);
                if (it == ibasis.end() || *it != t.mono)
                    throw std::logic_error("restriction left the graded slice");
                std::size_t row = bi * ibasis.size() +
                                  static_cast<std::size_t>(it - ibasis.begin());
                A.set(row, col, t.coeff);
            }
        }
    }
    return A;
}

std::vector<int> class_coeff_vector(const QuillenClass& c,
                                    const std::vector<std::size_t>& lagrangian_subset) {
    if (!c.z_free()) throw std::invalid_argument("class must be z-free");
    const SymplecticSpace& E = *c.space();
    std::vector<std::size_t> idx =
        lagrangian_subset.empty() ? all_indices(E) : lagrangian_subset;
    std::vector<Mono> ibasis = component_basis(E, c.degree());
    std::vector<int> out;
    out.reserve(idx.size() * ibasis.size());
    for (std::size_t i : idx) {
        std::vector<int> part = poly_coeff_vector(c.component(i), ibasis);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

std::optional<FpPoly> inflation_preimage(const QuillenClass& c) {
    if (!c.z_free())
        throw std::invalid_argument("inflation preimage needs a z-free class");
    const SymplecticSpace& E = *c.space();
    GfMat A = restriction_matrix(E, c.degree());
    std::vector<int> b = class_coeff_vector(c);
    auto sol = solve_linear(A, b);
    if (!sol) return std::nullopt;
    std::vector<Mono> emonos =
        monomials_of_degree(E.dual_ring()->nvars(), c.degree());
    FpPoly f = poly_from_coeff_vector(E.dual_ring(), sol->particular, emonos);
    if (!(inflate(c.space(), f) == c))
        throw std::logic_error("inflation preimage failed re-verification");
    return f;
}

std::optional<FpPoly> inflation_preimage(const InflationQuery& q) {
    return inflation_preimage(q.target);
}

std::optional<IdealDecomposition> ideal_decompose(const FpPoly& t,
                                                  const std::vector<FpPoly>& gens) {
    const RingPtr& ring = t.ring();
    if (!t.is_homogeneous())
        throw std::invalid_argument("target must be homogeneous");
    for (const auto& g : gens)
        if (g.is_zero() || !g.is_homogeneous() || !g.ring()->same(*ring))
            throw std::invalid_argument("generators must be nonzero homogeneous");
    if (t.is_zero())
        return IdealDecomposition{std::vector<FpPoly>(gens.size(), FpPoly(ring)), 0,
                                  std::nullopt};
    const int d = t.degree();
    std::vector<Mono> target_basis = monomials_of_degree(ring->nvars(), d);

    struct Col {
        std::size_t gen;
        Mono mono;
    };
    std::vector<Col> cols;
    std::vector<std::vector<Mono>> gen_bases(gens.size());
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        int rem = d - gens[gi].degree();
        if (rem < 0) continue;
        gen_bases[gi] = monomials_of_degree(ring->nvars(), rem);
        for (const auto& m : gen_bases[gi]) cols.push_back(Col{gi, m});
    }
    if (cols.empty()) return std::nullopt;

    GfMat A(ring->p(), target_basis.size(), cols.size());
    GrlexLess less;
    for (std::size_t j = 0; j < cols.size(); ++j) {
        FpPoly prod = FpPoly::monomial(ring, cols[j].mono, 1) * gens[cols[j].gen];
        for (const auto& term : prod.terms()) {
            auto it = std::lower_bound(target_basis.begin(), target_basis.end(),
                                       term.mono, less);
            std::size_t row = static_cast<std::size_t>(it - target_basis.begin());
            A.set(row, j, term.coeff);
        }
    }
    std::vector<int> b = poly_coeff_vector(t, target_basis);
    auto sol = solve_linear(A, b);
    if (!sol) return std::nullopt;

    auto materialize = [&](const std::vector<int>& x) {
        std::vector<FpPoly> fs(gens.size(), FpPoly(ring));
        std::size_t at = 0;
        for (std::size_t gi = 0; gi < gens.size(); ++gi) {
            if (gen_bases[gi].empty()) continue;
            std::vector<int> slice(x.begin() + at, x.begin() + at + gen_bases[gi].size());
            fs[gi] = poly_from_coeff_vector(ring, slice, gen_bases[gi]);
            at += gen_bases[gi].size();
        }
        return fs;
    };
    auto verify = [&](const std::vector<FpPoly>& fs) {
        FpPoly sum(ring);
        for (std::size_t gi = 0; gi < gens.size(); ++gi) sum = sum + fs[gi] * gens[gi];
        if (sum != t) throw std::logic_error("ideal decomposition failed re-expansion");
    };

    IdealDecomposition out;
    out.coefficients = materialize(sol->particular);
    verify(out.coefficients);
    out.kernel_dim = sol->kernel.size();
    if (!sol->kernel.empty()) {
        const PrimeField& F = ring->field();
        std::vector<int> shifted = sol->particular;
        for (std::size_t i = 0; i < shifted.size(); ++i)
            shifted[i] = F.add(shifted[i], sol->kernel.front()[i]);
        auto alt = materialize(shifted);
        verify(alt);
        out.alternative = std::move(alt);
    }
    return out;
}

QuillenClass transport(const QuillenClass& c, const GfMat& M) {
    const SymplecticSpace& E = *c.space();
    const std::size_t n = static_cast<std::size_t>(E.n());
    const RingPtr& ring = E.component_ring();
    std::vector<FpPoly> out(c.components().size(), FpPoly(ring));
    for (std::size_t i = 0; i < E.lagrangians().size(); ++i) {
        const Lagrangian& I = E.lagrangians()[i];
        // image subspace under x -> M x
        std::vector<std::vector<int>> image_rows;
        for (const auto& row : I.space.basis()) image_rows.push_back(M.apply(row));
        Subspace image = Subspace::span(E.p(), E.dim(), image_rows);
        int target = E.lagrangian_index(image);
        if (target < 0) throw std::logic_error("transport left the Lagrangian family");
        const Lagrangian& J = E.lagrangians()[static_cast<std::size_t>(target)];
        // S[k][j]: coordinates of M v_k in J's basis
        GfMat S(E.p(), n, n);
        for (std::size_t k = 0; k < n; ++k) {
            std::vector<int> coords = J.space.coordinates_of(M.apply(I.space.basis()[k]));
            for (std::size_t j = 0; j < n; ++j) S.set(k, j, coords[j]);
        }
        GfMat Sinv = *inverse(S);
        // x_k -> sum_j Sinv[j][k] x'_j, z fixed
        std::vector<FpPoly> images;
        for (std::size_t k = 0; k < n; ++k) {
            std::vector<int> coeffs(ring->nvars(), 0);
            for (std::size_t j = 0; j < n; ++j) coeffs[j] = Sinv.at(j, k);
            images.push_back(FpPoly::linear_form(ring, coeffs));
        }
        images.push_back(FpPoly::variable(ring, E.z_index()));
        out[static_cast<std::size_t>(target)] = c.component(i).substitute(ring, images);
    }
    return QuillenClass(c.space(), c.degree(), std::move(out));
}

}  // namespace esp
