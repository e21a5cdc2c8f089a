#include "esp/fppoly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace esp {

bool is_odd_prime(int p) {
    if (p < 3 || p % 2 == 0) return false;
    for (int d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

PrimeField::PrimeField(int p) : p_(p) {
    if (!is_odd_prime(p) || p > 13)
        throw std::invalid_argument("p must be an odd prime with 3 <= p <= 13");
}

int PrimeField::inv(int a) const {
    a %= p_;
    if (a == 0) throw std::invalid_argument("division by zero in F_p");
    return pow(a, p_ - 2);
}

int PrimeField::pow(int a, long long e) const {
    if (e < 0) throw std::invalid_argument("negative exponent");
    long long base = reduce(a), r = 1;
    while (e > 0) {
        if (e & 1) r = (r * base) % p_;
        base = (base * base) % p_;
        e >>= 1;
    }
    return static_cast<int>(r);
}

int mono_degree(const Mono& m) {
    return std::accumulate(m.begin(), m.end(), 0);
}

bool GrlexLess::operator()(const Mono& a, const Mono& b) const {
    int da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

PolyRing::PolyRing(int p, std::vector<std::string> vars)
    : field_(p), vars_(std::move(vars)) {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (vars_[i].empty())
            throw std::invalid_argument("empty variable name");
        for (std::size_t j = i + 1; j < vars_.size(); ++j)
            if (vars_[i] == vars_[j])
                throw std::invalid_argument("duplicate variable name: " + vars_[i]);
    }
}

RingPtr PolyRing::make(int p, std::vector<std::string> vars) {
    return RingPtr(new PolyRing(p, std::move(vars)));
}

int PolyRing::var_index(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return static_cast<int>(i);
    return -1;
}

bool PolyRing::same(const PolyRing& other) const {
    return p() == other.p() && vars_ == other.vars_;
}

RingPtr extend_ring(const RingPtr& ring, const std::string& extra) {
    if (ring->var_index(extra) >= 0)
        throw std::invalid_argument("variable already present: " + extra);
    std::vector<std::string> vars = ring->vars();
    vars.push_back(extra);
    return PolyRing::make(ring->p(), std::move(vars));
}

namespace {

void check_same_ring(const FpPoly& a, const FpPoly& b) {
    if (!a.ring()->same(*b.ring()))
        throw std::invalid_argument("ring mismatch");
}

std::vector<Term> map_to_terms(std::map<Mono, int, GrlexLess>&& acc) {
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c != 0) out.push_back(Term{m, c});
    return out;
}

}  // namespace

FpPoly::FpPoly(RingPtr ring) : ring_(std::move(ring)) {
    if (!ring_) throw std::invalid_argument("null ring");
}

FpPoly FpPoly::constant(RingPtr ring, long long c) {
    FpPoly f(ring);
    int r = ring->field().reduce(c);
    if (r != 0) f.terms_.push_back(Term{Mono(ring->nvars(), 0), r});
    return f;
}

FpPoly FpPoly::variable(RingPtr ring, std::size_t index) {
    if (index >= ring->nvars()) throw std::invalid_argument("variable index out of range");
    Mono m(ring->nvars(), 0);
    m[index] = 1;
    return monomial(ring, std::move(m), 1);
}

FpPoly FpPoly::variable(RingPtr ring, std::string_view name) {
    int idx = ring->var_index(name);
    if (idx < 0) throw std::invalid_argument("unknown variable: " + std::string(name));
    return variable(ring, static_cast<std::size_t>(idx));
}

FpPoly FpPoly::monomial(RingPtr ring, Mono m, long long c) {
    if (m.size() != ring->nvars()) throw std::invalid_argument("bad exponent vector");
    for (int e : m)
        if (e < 0) throw std::invalid_argument("negative exponent");
    FpPoly f(ring);
    int r = ring->field().reduce(c);
    if (r != 0) f.terms_.push_back(Term{std::move(m), r});
    return f;
}

FpPoly FpPoly::from_terms(RingPtr ring, std::vector<Term> terms) {
    std::map<Mono, int, GrlexLess> acc;
    const PrimeField& F = ring->field();
    for (auto& t : terms) {
        if (t.mono.size() != ring->nvars())
            throw std::invalid_argument("bad exponent vector");
        int& slot = acc[t.mono];
        slot = F.reduce(static_cast<long long>(slot) + t.coeff);
    }
    FpPoly f(ring);
    f.terms_ = map_to_terms(std::move(acc));
    return f;
}

FpPoly FpPoly::linear_form(RingPtr ring, const std::vector<int>& coeffs) {
    if (coeffs.size() != ring->nvars())
        throw std::invalid_argument("coefficient vector size mismatch");
    std::vector<Term> ts;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        int c = ring->field().reduce(coeffs[i]);
        if (c != 0) {
            Mono m(ring->nvars(), 0);
            m[i] = 1;
            ts.push_back(Term{std::move(m), c});
        }
    }
    return from_terms(ring, std::move(ts));
}

int FpPoly::degree() const {
    if (terms_.empty()) return -1;
    return mono_degree(terms_.back().mono);
}

int FpPoly::degree_in(std::size_t var) const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.at(var));
    return d;
}

bool FpPoly::is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = mono_degree(terms_.front().mono);
    for (const auto& t : terms_)
        if (mono_degree(t.mono) != d) return false;
    return true;
}

int FpPoly::coeff(const Mono& m) const {
    for (const auto& t : terms_)
        if (t.mono == m) return t.coeff;
    return 0;
}

int FpPoly::constant_coeff() const {
    if (!terms_.empty() && mono_degree(terms_.front().mono) == 0)
        return terms_.front().coeff;
    return 0;
}

FpPoly FpPoly::operator+(const FpPoly& o) const {
    check_same_ring(*this, o);
    const PrimeField& F = ring_->field();
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    GrlexLess less;
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        if (terms_[i].mono == o.terms_[j].mono) {
            int c = F.add(terms_[i].coeff, o.terms_[j].coeff);
            if (c != 0) out.push_back(Term{terms_[i].mono, c});
            ++i;
            ++j;
        } else if (less(terms_[i].mono, o.terms_[j].mono)) {
            out.push_back(terms_[i++]);
        } else {
            out.push_back(o.terms_[j++]);
        }
    }
    for (; i < terms_.size(); ++i) out.push_back(terms_[i]);
    for (; j < o.terms_.size(); ++j) out.push_back(o.terms_[j]);
    FpPoly f(ring_);
    f.terms_ = std::move(out);
    return f;
}

FpPoly FpPoly::operator-() const { return scaled(-1); }

FpPoly FpPoly::operator-(const FpPoly& o) const { return *this + (-o); }

FpPoly FpPoly::scaled(long long c) const {
    const PrimeField& F = ring_->field();
    int r = F.reduce(c);
    FpPoly f(ring_);
    if (r == 0) return f;
    f.terms_ = terms_;
    for (auto& t : f.terms_) t.coeff = F.mul(t.coeff, r);
    return f;
}

FpPoly FpPoly::operator*(const FpPoly& o) const {
    check_same_ring(*this, o);
    const PrimeField& F = ring_->field();
    if (is_zero() || o.is_zero()) return FpPoly(ring_);
    const std::size_t nv = ring_->nvars();

    // hashed accumulation with packed exponents for small rings
    if (nv <= 4 && degree() + o.degree() < (1 << 15)) {
        auto pack = [nv](const Mono& m) {
            std::uint64_t key = 0;
            for (std::size_t k = 0; k < nv; ++k)
                key |= static_cast<std::uint64_t>(m[k]) << (16 * k);
            return key;
        };
        std::unordered_map<std::uint64_t, int> acc;
        acc.reserve(terms_.size() * o.terms_.size() / 2 + 8);
        for (const auto& a : terms_) {
            std::uint64_t ka = pack(a.mono);
            for (const auto& b : o.terms_) {
                int& slot = acc[ka + pack(b.mono)];
                slot = F.reduce(static_cast<long long>(slot) + a.coeff * b.coeff);
            }
        }
        std::vector<Term> out;
        out.reserve(acc.size());
        for (const auto& [key, c] : acc) {
            if (c == 0) continue;
            Mono m(nv);
            for (std::size_t k = 0; k < nv; ++k)
                m[k] = static_cast<int>((key >> (16 * k)) & 0xffff);
            out.push_back(Term{std::move(m), c});
        }
        std::sort(out.begin(), out.end(), [](const Term& x, const Term& y) {
            return GrlexLess{}(x.mono, y.mono);
        });
        FpPoly f(ring_);
        f.terms_ = std::move(out);
        return f;
    }

    std::map<Mono, int, GrlexLess> acc;
    Mono prod(nv, 0);
    for (const auto& a : terms_) {
        for (const auto& b : o.terms_) {
            for (std::size_t k = 0; k < nv; ++k) prod[k] = a.mono[k] + b.mono[k];
            int& slot = acc[prod];
            slot = F.reduce(static_cast<long long>(slot) + a.coeff * b.coeff);
        }
    }
    FpPoly f(ring_);
    f.terms_ = map_to_terms(std::move(acc));
    return f;
}

bool FpPoly::operator==(const FpPoly& o) const {
    if (!ring_->same(*o.ring_)) return false;
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].coeff != o.terms_[i].coeff || terms_[i].mono != o.terms_[i].mono)
            return false;
    return true;
}

FpPoly FpPoly::frobenius(int k) const {
    if (k < 0) throw std::invalid_argument("negative Frobenius power");
    if (k == 0) return *this;
    long long q = 1;
    for (int i = 0; i < k; ++i) q *= ring_->p();
    FpPoly f(ring_);
    f.terms_ = terms_;
    for (auto& t : f.terms_)
        for (auto& e : t.mono) {
            long long s = static_cast<long long>(e) * q;
            if (s > (1 << 28)) throw std::overflow_error("exponent overflow");
            e = static_cast<int>(s);
        }
    // coefficients are fixed by x -> x^p on F_p
    return f;
}

FpPoly FpPoly::pow(long long e) const {
    if (e < 0) throw std::invalid_argument("negative exponent");
    FpPoly result = constant(ring_, 1);
    if (e == 0) return result;
    const int p = ring_->p();
    int k = 0;
    long long rest = e;
    while (rest > 0) {
        int digit = static_cast<int>(rest % p);
        if (digit > 0) {
            FpPoly base = frobenius(k);
            for (int i = 0; i < digit; ++i) result = result * base;
        }
        rest /= p;
        ++k;
    }
    return result;
}

FpPoly FpPoly::derivative(std::size_t var) const {
    if (var >= ring_->nvars()) throw std::invalid_argument("unknown variable");
    const PrimeField& F = ring_->field();
    std::vector<Term> ts;
    for (const auto& t : terms_) {
        int e = t.mono[var];
        if (e == 0) continue;
        int c = F.mul(t.coeff, F.reduce(e));
        if (c == 0) continue;
        Mono m = t.mono;
        m[var] = e - 1;
        ts.push_back(Term{std::move(m), c});
    }
    return from_terms(ring_, std::move(ts));
}

FpPoly FpPoly::derivative(std::string_view var) const {
    int idx = ring_->var_index(var);
    if (idx < 0) throw std::invalid_argument("unknown variable: " + std::string(var));
    return derivative(static_cast<std::size_t>(idx));
}

FpPoly FpPoly::substitute(const RingPtr& target,
                          const std::vector<FpPoly>& images) const {
    if (images.size() != ring_->nvars())
        throw std::invalid_argument("incomplete substitution");
    for (const auto& img : images) {
        if (!img.ring()->same(*target))
            throw std::invalid_argument("substitution image in wrong ring");
        if (img.degree() > 1)
            throw std::invalid_argument("substitution must be linear");
    }
    // power cache per variable
    std::vector<std::map<int, FpPoly>> powers(images.size());
    auto power_of = [&](std::size_t v, int e) -> const FpPoly& {
        auto it = powers[v].find(e);
        if (it == powers[v].end())
            it = powers[v].emplace(e, images[v].pow(e)).first;
        return it->second;
    };
    FpPoly result(target);
    for (const auto& t : terms_) {
        FpPoly piece = FpPoly::constant(target, t.coeff);
        for (std::size_t v = 0; v < images.size(); ++v)
            if (t.mono[v] > 0) piece = piece * power_of(v, t.mono[v]);
        result = result + piece;
    }
    return result;
}

FpPoly FpPoly::substitute(const RingPtr& target,
                          const std::map<std::string, FpPoly>& images) const {
    std::vector<FpPoly> vec;
    vec.reserve(ring_->nvars());
    for (const auto& name : ring_->vars()) {
        auto it = images.find(name);
        if (it == images.end())
            throw std::invalid_argument("incomplete substitution");
        vec.push_back(it->second);
    }
    return substitute(target, vec);
}

FpPoly FpPoly::coefficient_of(std::size_t var, int e) const {
    if (var >= ring_->nvars()) throw std::invalid_argument("unknown variable");
    std::vector<Term> ts;
    for (const auto& t : terms_) {
        if (t.mono[var] != e) continue;
        Mono m = t.mono;
        m[var] = 0;
        ts.push_back(Term{std::move(m), t.coeff});
    }
    return from_terms(ring_, std::move(ts));
}

FpPoly FpPoly::rename_into(const RingPtr& target) const {
    if (target->p() != ring_->p()) throw std::invalid_argument("field mismatch");
    std::vector<int> where(ring_->nvars(), -1);
    for (std::size_t v = 0; v < ring_->nvars(); ++v)
        where[v] = target->var_index(ring_->var_name(v));
    std::vector<Term> ts;
    for (const auto& t : terms_) {
        Mono m(target->nvars(), 0);
        for (std::size_t v = 0; v < ring_->nvars(); ++v) {
            if (t.mono[v] == 0) continue;
            if (where[v] < 0)
                throw std::invalid_argument("variable missing in target ring: " +
                                            ring_->var_name(v));
            m[static_cast<std::size_t>(where[v])] = t.mono[v];
        }
        ts.push_back(Term{std::move(m), t.coeff});
    }
    return from_terms(target, std::move(ts));
}

int FpPoly::eval(const std::vector<int>& point) const {
    if (point.size() != ring_->nvars())
        throw std::invalid_argument("point size mismatch");
    const PrimeField& F = ring_->field();
    int total = 0;
    for (const auto& t : terms_) {
        int v = t.coeff;
        for (std::size_t i = 0; i < point.size(); ++i)
            if (t.mono[i] > 0) v = F.mul(v, F.pow(point[i], t.mono[i]));
        total = F.add(total, v);
    }
    return total;
}

std::string FpPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << " + ";
        first = false;
        bool has_var = mono_degree(t.mono) > 0;
        bool printed = false;
        if (t.coeff != 1 || !has_var) {
            os << t.coeff;
            printed = true;
        }
        for (std::size_t v = 0; v < t.mono.size(); ++v) {
            if (t.mono[v] == 0) continue;
            if (printed) os << "*";
            os << ring_->var_name(v);
            if (t.mono[v] > 1) os << "^" << t.mono[v];
            printed = true;
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const FpPoly& f) {
    return os << f.str();
}

namespace {

struct Parser {
    RingPtr ring;
    std::string_view s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    long long parse_int() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) throw std::invalid_argument("expected integer in polynomial");
        return std::stoll(std::string(s.substr(start, pos - start)));
    }
    std::string parse_name() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        if (start == pos) throw std::invalid_argument("expected variable name");
        return std::string(s.substr(start, pos - start));
    }

    Term parse_term() {
        Term t{Mono(ring->nvars(), 0), 1};
        bool expect_factor = true;
        while (expect_factor) {
            skip_ws();
            if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                t.coeff = ring->field().reduce(
                    static_cast<long long>(t.coeff) * parse_int());
            } else {
                std::string name = parse_name();
                int idx = ring->var_index(name);
                if (idx < 0)
                    throw std::invalid_argument("unknown variable: " + name);
                long long e = 1;
                if (eat('^')) e = parse_int();
                if (e < 0 || e > (1 << 28))
                    throw std::invalid_argument("bad exponent");
                t.mono[static_cast<std::size_t>(idx)] += static_cast<int>(e);
            }
            expect_factor = eat('*');
        }
        return t;
    }

    FpPoly parse() {
        std::vector<Term> ts;
        skip_ws();
        if (pos >= s.size()) throw std::invalid_argument("empty polynomial text");
        bool negate = eat('-');
        while (true) {
            Term t = parse_term();
            if (negate) t.coeff = ring->field().neg(t.coeff);
            ts.push_back(std::move(t));
            skip_ws();
            if (pos >= s.size()) break;
            if (eat('+'))
                negate = false;
            else if (eat('-'))
                negate = true;
            else
                throw std::invalid_argument("unexpected character in polynomial");
        }
        return FpPoly::from_terms(ring, std::move(ts));
    }
};

}  // namespace

FpPoly FpPoly::parse(RingPtr ring, std::string_view text) {
    Parser p{ring, text};
    FpPoly f = p.parse();
    // "0" parses as the empty term list via the zero coefficient
    return f;
}

std::optional<FpPoly> divide_exact(const FpPoly& f, const FpPoly& g) {
    if (!f.ring()->same(*g.ring()))
        throw std::invalid_argument("ring mismatch");
    if (g.is_zero()) throw std::invalid_argument("division by zero");
    const RingPtr& ring = f.ring();
    const PrimeField& F = ring->field();
    const Term& lg = g.terms().back();
    FpPoly q(ring);
    FpPoly r = f;
    while (!r.is_zero()) {
        const Term& lr = r.terms().back();
        Mono diff(lr.mono.size());
        for (std::size_t i = 0; i < diff.size(); ++i) {
            diff[i] = lr.mono[i] - lg.mono[i];
            if (diff[i] < 0) return std::nullopt;
        }
        int c = F.mul(lr.coeff, F.inv(lg.coeff));
        FpPoly t = FpPoly::monomial(ring, std::move(diff), c);
        q = q + t;
        r = r - t * g;
    }
    return q;
}

std::vector<int> linear_coeffs(const FpPoly& f) {
    if (f.degree() > 1 || f.constant_coeff() != 0)
        throw std::invalid_argument("not a homogeneous linear form");
    std::vector<int> out(f.ring()->nvars(), 0);
    for (const auto& t : f.terms())
        for (std::size_t v = 0; v < out.size(); ++v)
            if (t.mono[v] == 1) out[v] = t.coeff;
    return out;
}

namespace {

void enumerate_monos(std::size_t nvars, std::size_t at, int remaining, Mono& cur,
                     std::vector<Mono>& out) {
    if (at + 1 == nvars) {
        cur[at] = remaining;
        out.push_back(cur);
        return;
    }
    for (int e = 0; e <= remaining; ++e) {
        cur[at] = e;
        enumerate_monos(nvars, at + 1, remaining - e, cur, out);
    }
}

}  // namespace

std::vector<Mono> monomials_of_degree(std::size_t nvars, int d) {
    if (d < 0) return {};
    if (nvars == 0) {
        if (d == 0) return {Mono{}};
        return {};
    }
    std::vector<Mono> out;
    Mono cur(nvars, 0);
    enumerate_monos(nvars, 0, d, cur, out);
    std::sort(out.begin(), out.end(), GrlexLess{});
    return out;
}

}  // namespace esp
