#include "esp/dickson.hpp"

#include <algorithm>
#include <stdexcept>

namespace esp {

namespace {

void validate_gens(const std::vector<FpPoly>& gens) {
    for (const auto& g : gens) {
        if (g.is_zero() || g.degree() != 1 || g.constant_coeff() != 0)
            throw std::invalid_argument("generators must be nonzero linear forms");
        if (!g.ring()->same(*gens.front().ring()))
            throw std::invalid_argument("generators in different rings");
    }
}

GfMat gen_matrix(const std::vector<FpPoly>& gens) {
    const RingPtr& ring = gens.front().ring();
    std::vector<std::vector<int>> rows;
    for (const auto& g : gens) rows.push_back(linear_coeffs(g));
    return GfMat::from_rows(ring->p(), rows, ring->nvars());
}

void check_independent(const std::vector<FpPoly>& gens) {
    if (gens.empty()) return;
    validate_gens(gens);
    if (rank_of(gen_matrix(gens)) != gens.size())
        throw std::invalid_argument("generators not independent");
}

std::string fresh_var_name(const RingPtr& ring) {
    if (ring->var_index("X") < 0) return "X";
    for (int i = 0;; ++i) {
        std::string name = "X" + std::to_string(i);
        if (ring->var_index(name) < 0) return name;
    }
}

}  // namespace

FpPoly mui_poly_direct(const std::vector<FpPoly>& gens, const FpPoly& arg) {
    check_independent(gens);
    const RingPtr& ring = arg.ring();
    if (arg.degree() > 1) throw std::invalid_argument("argument must have degree <= 1");
    const int p = ring->p();
    FpPoly result = FpPoly::constant(ring, 1);
    std::vector<int> coeffs(gens.size(), 0);
    while (true) {
        FpPoly phi(ring);
        for (std::size_t k = 0; k < gens.size(); ++k)
            if (coeffs[k] != 0) phi = phi + gens[k].scaled(coeffs[k]);
        result = result * (arg - phi);
        std::size_t j = coeffs.size();
        while (j > 0 && coeffs[j - 1] == p - 1) coeffs[--j] = 0;
        if (j == 0) break;
        ++coeffs[j - 1];
    }
    return result;
}

FpPoly mui_poly_recursive(const std::vector<FpPoly>& gens, const FpPoly& arg) {
    check_independent(gens);
    const RingPtr& ring = arg.ring();
    if (arg.degree() > 1) throw std::invalid_argument("argument must have degree <= 1");
    const int p = ring->p();
    // vals[0] tracks Mui_U(arg); vals[k] tracks Mui_U(g_k) for the
    // generators not yet absorbed into U
    std::vector<FpPoly> vals;
    vals.push_back(arg);
    for (const auto& g : gens) vals.push_back(g);
    for (std::size_t k = 1; k < vals.size(); ++k) {
        FpPoly rel = vals[k].pow(p - 1);
        for (std::size_t j = 0; j < vals.size(); ++j) {
            if (j >= 1 && j <= k) continue;
            vals[j] = vals[j].frobenius(1) - vals[j] * rel;
        }
    }
    return vals[0];
}

FpPoly mui_poly(const std::vector<FpPoly>& gens, const FpPoly& arg) {
    if (gens.size() <= 3) return mui_poly_direct(gens, arg);
    return mui_poly_recursive(gens, arg);
}

FpPoly mui_poly(const MuiContext& ctx) { return mui_poly(ctx.generators, ctx.arg); }

FpPoly dickson_invariant(const RingPtr& ring, const std::vector<FpPoly>& gens,
                         int r) {
    const int m = static_cast<int>(gens.size());
    if (r > m) throw std::invalid_argument("Dickson index exceeds dimension");
    if (r < 0) return FpPoly(ring);
    if (r == m) return FpPoly::constant(ring, 1);
    check_independent(gens);
    RingPtr ext = extend_ring(ring, fresh_var_name(ring));
    const std::size_t xi = ext->nvars() - 1;
    std::vector<FpPoly> lifted;
    for (const auto& g : gens) lifted.push_back(g.rename_into(ext));
    FpPoly mui = mui_poly(lifted, FpPoly::variable(ext, xi));
    long long pr = 1;
    for (int i = 0; i < r; ++i) pr *= ring->p();
    FpPoly coeff = mui.coefficient_of(xi, static_cast<int>(pr));
    // Mui(X) = X^{p^m} + sum (-1)^{m-r} Q_{m,r} X^{p^r}
    int sign = ((m - r) % 2 == 0) ? 1 : -1;
    return coeff.scaled(sign).rename_into(ring);
}

FpPoly mui_rel(const std::vector<FpPoly>& gens, const FpPoly& v) {
    if (v.is_zero() || v.degree() != 1 || v.constant_coeff() != 0)
        throw std::invalid_argument("argument must be a nonzero linear form");
    check_independent(gens);
    const RingPtr& ring = v.ring();
    if (!gens.empty()) {
        Subspace span = Subspace::span(ring->p(), ring->nvars(),
                                       [&] {
                                           std::vector<std::vector<int>> rows;
                                           for (const auto& g : gens)
                                               rows.push_back(linear_coeffs(g));
                                           return rows;
                                       }());
        if (span.contains(linear_coeffs(v)))
            throw std::invalid_argument("argument lies in subspace");
    }
    return mui_poly(gens, v).pow(ring->p() - 1);
}

FpPoly zeta(const SymplecticSpace& E, int i) {
    if (i < 1) throw std::invalid_argument("zeta index must be >= 1");
    const RingPtr& ring = E.dual_ring();
    long long q = 1;
    for (int k = 0; k < i; ++k) q *= E.p();
    std::vector<Term> ts;
    const std::size_t n = static_cast<std::size_t>(E.n());
    for (std::size_t j = 0; j < n; ++j) {
        Mono m1(ring->nvars(), 0);
        m1[j] = 1;
        m1[n + j] = static_cast<int>(q);
        ts.push_back(Term{std::move(m1), 1});
        Mono m2(ring->nvars(), 0);
        m2[j] = static_cast<int>(q);
        m2[n + j] = 1;
        ts.push_back(Term{std::move(m2), -1});
    }
    return FpPoly::from_terms(ring, std::move(ts));
}

namespace {

RingPtr coordinate_ring(int p, std::size_t m) {
    std::vector<std::string> vars;
    for (std::size_t i = 1; i <= m; ++i) vars.push_back("x" + std::to_string(i));
    return PolyRing::make(p, vars);
}

// deterministic element of W outside U, as a linear form
FpPoly pick_outside(const RingPtr& ring, const Subspace& W, const Subspace& U) {
    for (const auto& v : W.projective_points())
        if (!U.contains(v)) return FpPoly::linear_form(ring, v);
    throw std::logic_error("no vector outside subspace");
}

void record_failure(VerificationReport& r, const Subspace& where,
                    const FpPoly& difference) {
    if (!r.witness)
        r.witness = ReportWitness{where.basis(), difference.str()};
    r.pass = false;
}

}  // namespace

VerificationReport verify_dickson_relation(int p, int m, const Subspace& U) {
    VerificationReport rep;
    ReportTimer timer(rep);
    rep.theorem_id = "dickson_relation";
    rep.param("p", p);
    rep.param("m", m);
    rep.param("U", U.str());
    rep.pass = true;

    Subspace V = Subspace::full(p, static_cast<std::size_t>(m));
    if (!V.contains(U) || U == V)
        throw std::invalid_argument("need U a proper subspace of V");
    const int s = m - static_cast<int>(U.dim());
    RingPtr base = coordinate_ring(p, static_cast<std::size_t>(m));
    RingPtr ext = extend_ring(base, fresh_var_name(base));
    FpPoly X = FpPoly::variable(ext, ext->nvars() - 1);

    auto forms_of = [&](const Subspace& S) {
        std::vector<FpPoly> out;
        for (const auto& row : S.basis())
            out.push_back(FpPoly::linear_form(base, row).rename_into(ext));
        return out;
    };

    std::vector<Subspace> hyps = hyperplanes_containing(V, U);
    FpPoly lhs(ext);
    for (const auto& W : hyps) lhs = lhs + mui_poly(forms_of(W), X);
    FpPoly rhs = mui_poly(forms_of(U), X).frobenius(s - 1);
    ++rep.checks_run;
    if (lhs != rhs) record_failure(rep, U, lhs - rhs);

    // Dickson-coefficient consequence, for all 1 <= r <= m
    for (int r = 1; r <= m; ++r) {
        FpPoly sum(base);
        for (const auto& W : hyps) {
            std::vector<FpPoly> wf = subspace_forms(base, W);
            sum = sum + dickson_invariant(base, wf, r - 1);
        }
        std::vector<FpPoly> uf = subspace_forms(base, U);
        FpPoly drs = dickson_invariant(base, uf, r - s).frobenius(s - 1);
        ++rep.checks_run;
        if (sum != drs) record_failure(rep, U, sum - drs);
    }
    return rep;
}

VerificationReport verify_muirel_sum(const Subspace& V, const Subspace& U) {
    VerificationReport rep;
    ReportTimer timer(rep);
    rep.theorem_id = "muirel_sum";
    rep.param("p", V.p());
    rep.param("V", V.str());
    rep.param("U", U.str());
    rep.pass = true;

    if (!V.contains(U) || V.dim() != U.dim() + 2)
        throw std::invalid_argument("need U of codimension 2 in V");
    const int p = V.p();
    RingPtr ring = coordinate_ring(p, V.ambient_dim());
    std::vector<FpPoly> ugens = subspace_forms(ring, U);

    FpPoly sum(ring);
    std::vector<Subspace> mids = hyperplanes_containing(V, U);
    for (const auto& W : mids)
        sum = sum + mui_rel(ugens, pick_outside(ring, W, U));
    rep.checks_run = static_cast<long>(mids.size());
    if (!sum.is_zero()) record_failure(rep, U, sum);
    return rep;
}

VerificationReport verify_dickson_induction(const Subspace& V, const Subspace& U) {
    VerificationReport rep;
    ReportTimer timer(rep);
    rep.theorem_id = "dickson_induction";
    rep.param("p", V.p());
    rep.param("V", V.str());
    rep.param("U", U.str());
    rep.pass = true;

    if (!V.contains(U) || V.dim() != U.dim() + 1)
        throw std::invalid_argument("need U a hyperplane of V");
    const int p = V.p();
    const int m = static_cast<int>(V.dim());
    RingPtr base = coordinate_ring(p, V.ambient_dim());
    RingPtr ext = extend_ring(base, fresh_var_name(base));
    FpPoly X = FpPoly::variable(ext, ext->nvars() - 1);

    std::vector<FpPoly> vf = subspace_forms(base, V);
    std::vector<FpPoly> uf = subspace_forms(base, U);
    std::vector<FpPoly> vf_ext, uf_ext;
    for (const auto& f : vf) vf_ext.push_back(f.rename_into(ext));
    for (const auto& f : uf) uf_ext.push_back(f.rename_into(ext));

    FpPoly rel = mui_rel(uf, pick_outside(base, V, U));
    FpPoly mui_V = mui_poly(vf_ext, X);
    FpPoly mui_U = mui_poly(uf_ext, X);
    FpPoly rhs = mui_U.frobenius(1) - mui_U * rel.rename_into(ext);
    ++rep.checks_run;
    if (mui_V != rhs) record_failure(rep, U, mui_V - rhs);

    for (int r = 0; r <= m - 1; ++r) {
        FpPoly lhs = dickson_invariant(base, vf, r);
        FpPoly d_prev = dickson_invariant(base, uf, r - 1);  // zero at r=0
        FpPoly d_same = dickson_invariant(base, uf, r);
        FpPoly want = d_prev.frobenius(1) + d_same * rel;
        ++rep.checks_run;
        if (lhs != want) record_failure(rep, U, lhs - want);
    }
    return rep;
}

VerificationReport verify_dickson_induction_all(int p, int m) {
    VerificationReport rep;
    ReportTimer timer(rep);
    rep.theorem_id = "dickson_induction";
    rep.param("p", p);
    rep.param("m", m);
    rep.pass = true;

    Subspace V = Subspace::full(p, static_cast<std::size_t>(m));
    RingPtr base = coordinate_ring(p, static_cast<std::size_t>(m));
    RingPtr ext = extend_ring(base, fresh_var_name(base));
    FpPoly X = FpPoly::variable(ext, ext->nvars() - 1);

    std::vector<FpPoly> vf_ext;
    for (const auto& f : subspace_forms(base, V)) vf_ext.push_back(f.rename_into(ext));
    FpPoly mui_V = mui_poly_direct(vf_ext, X);  // the oracle side, hoisted

    std::vector<FpPoly> dickson_V;
    std::vector<FpPoly> vf = subspace_forms(base, V);
    for (int r = 0; r <= m - 1; ++r)
        dickson_V.push_back(dickson_invariant(base, vf, r));

    for (const auto& U : all_subspaces(p, static_cast<std::size_t>(m),
                                       static_cast<std::size_t>(m - 1))) {
        std::vector<FpPoly> uf = subspace_forms(base, U);
        std::vector<FpPoly> uf_ext;
        for (const auto& f : uf) uf_ext.push_back(f.rename_into(ext));
        FpPoly rel = mui_rel(uf, pick_outside(base, V, U));
        FpPoly mui_U = mui_poly_recursive(uf_ext, X);
        FpPoly rhs = mui_U.frobenius(1) - mui_U * rel.rename_into(ext);
        ++rep.checks_run;
        if (mui_V != rhs) record_failure(rep, U, mui_V - rhs);
        for (int r = 0; r <= m - 1; ++r) {
            FpPoly want = dickson_invariant(base, uf, r - 1).frobenius(1) +
                          dickson_invariant(base, uf, r) * rel;
            ++rep.checks_run;
            if (dickson_V[static_cast<std::size_t>(r)] != want)
                record_failure(rep, U, dickson_V[static_cast<std::size_t>(r)] - want);
        }
    }
    return rep;
}

}  // namespace esp
