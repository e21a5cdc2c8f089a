#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace esp {

// Arithmetic in F_p for odd primes p, 3 <= p <= 13.  Values are least
// nonnegative residues.
class PrimeField {
public:
    explicit PrimeField(int p);

    int p() const { return p_; }

    int reduce(long long a) const {
        long long r = a % p_;
        return static_cast<int>(r < 0 ? r + p_ : r);
    }
    int add(int a, int b) const { return (a + b) % p_; }
    int sub(int a, int b) const { return (a - b + p_) % p_; }
    int mul(int a, int b) const { return (a * b) % p_; }
    int neg(int a) const { return (p_ - a) % p_; }
    int inv(int a) const;                // Fermat; throws on 0
    int pow(int a, long long e) const;   // e >= 0

private:
    int p_;
};

bool is_odd_prime(int p);

// Exponent vector, one entry per ring variable.
using Mono = std::vector<int>;

int mono_degree(const Mono& m);

// Graded lexicographic order: total degree first, ties by lex on exponents.
struct GrlexLess {
    bool operator()(const Mono& a, const Mono& b) const;
};

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

// A polynomial ring F_p[v_1, ..., v_k] with a fixed variable order.
class PolyRing {
public:
    static RingPtr make(int p, std::vector<std::string> vars);

    const PrimeField& field() const { return field_; }
    int p() const { return field_.p(); }
    std::size_t nvars() const { return vars_.size(); }
    const std::vector<std::string>& vars() const { return vars_; }
    const std::string& var_name(std::size_t i) const { return vars_.at(i); }
    // -1 when absent
    int var_index(std::string_view name) const;
    bool same(const PolyRing& other) const;

private:
    PolyRing(int p, std::vector<std::string> vars);
    PrimeField field_;
    std::vector<std::string> vars_;
};

// New ring with one extra variable appended; name must be fresh.
RingPtr extend_ring(const RingPtr& ring, const std::string& extra);

struct Term {
    Mono mono;
    int coeff;
};

// Immutable sparse multivariate polynomial over F_p.  Terms are kept in
// ascending graded-lex order with nonzero least-residue coefficients; two
// polynomials are equal iff their term lists are identical.
class FpPoly {
public:
    explicit FpPoly(RingPtr ring);  // zero
    static FpPoly constant(RingPtr ring, long long c);
    static FpPoly variable(RingPtr ring, std::size_t index);
    static FpPoly variable(RingPtr ring, std::string_view name);
    static FpPoly monomial(RingPtr ring, Mono m, long long c);
    static FpPoly from_terms(RingPtr ring, std::vector<Term> terms);
    // sum c_i * v_i over all ring variables
    static FpPoly linear_form(RingPtr ring, const std::vector<int>& coeffs);
    static FpPoly parse(RingPtr ring, std::string_view text);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    int degree() const;  // total degree, -1 for the zero polynomial
    int degree_in(std::size_t var) const;
    bool is_homogeneous() const;
    int coeff(const Mono& m) const;
    int constant_coeff() const;

    FpPoly operator+(const FpPoly& o) const;
    FpPoly operator-(const FpPoly& o) const;
    FpPoly operator-() const;
    FpPoly operator*(const FpPoly& o) const;
    FpPoly scaled(long long c) const;
    bool operator==(const FpPoly& o) const;
    bool operator!=(const FpPoly& o) const { return !(*this == o); }

    // f^e; exponent is split into base-p digits so p^k-th powers go through
    // the Frobenius (exponent scaling) instead of repeated multiplication
    FpPoly pow(long long e) const;
    FpPoly frobenius(int k) const;  // f^(p^k)
    FpPoly derivative(std::size_t var) const;
    FpPoly derivative(std::string_view var) const;

    // Ring homomorphism determined by variable -> degree<=1 image.
    FpPoly substitute(const RingPtr& target,
                      const std::vector<FpPoly>& images) const;
    FpPoly substitute(const RingPtr& target,
                      const std::map<std::string, FpPoly>& images) const;

    // coefficient of var^e as a polynomial with that variable struck out
    FpPoly coefficient_of(std::size_t var, int e) const;
    // carry the polynomial into another ring, matching variables by name
    FpPoly rename_into(const RingPtr& target) const;

    int eval(const std::vector<int>& point) const;

    std::string str() const;

private:
    RingPtr ring_;
    std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const FpPoly& f);

// q with f = q*g, or nullopt; throws on g = 0
std::optional<FpPoly> divide_exact(const FpPoly& f, const FpPoly& g);

// coefficient vector of a homogeneous degree-1 polynomial (no constant term)
std::vector<int> linear_coeffs(const FpPoly& f);

// all exponent vectors of the given total degree, ascending grlex
std::vector<Mono> monomials_of_degree(std::size_t nvars, int d);

}  // namespace esp
