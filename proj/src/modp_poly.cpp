#include "jacmax/modp_poly.hpp"

#include "jacmax/errors.hpp"
#include "jacmax/primes.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace jacmax {

namespace {

using Coeff = ModPoly::Coeff;

Coeff addm(Coeff a, Coeff b, Coeff p)
{
    Coeff s = a + b;
    return s >= p ? s - p : s;
}

Coeff subm(Coeff a, Coeff b, Coeff p) { return a >= b ? a - b : a + (p - b); }

void require_same_field(const ModPoly& a, const ModPoly& b)
{
    if (a.modulus() != b.modulus())
        throw DomainError("ModPoly: mixed moduli");
}

} // namespace

ModPoly::ModPoly(Coeff p) : p_(p)
{
    if (p < 2 || p >= (Coeff{1} << 63))
        throw DomainError("ModPoly: modulus out of range");
}

ModPoly::ModPoly(Coeff p, std::vector<Coeff> coeffs) : ModPoly(p)
{
    c_ = std::move(coeffs);
    for (auto& c : c_)
        c %= p_;
    trim();
}

ModPoly ModPoly::constant(Coeff p, Coeff c) { return ModPoly(p, {c}); }
ModPoly ModPoly::x(Coeff p) { return ModPoly(p, {0, 1}); }
ModPoly ModPoly::linear_root(Coeff p, Coeff a) { return ModPoly(p, {(p - a % p) % p, 1}); }

void ModPoly::trim()
{
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

Coeff ModPoly::eval(Coeff a) const
{
    a %= p_;
    Coeff r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        r = addm(mulmod_u64(r, a, p_), *it, p_);
    return r;
}

ModPoly ModPoly::derivative() const
{
    ModPoly d(p_);
    if (c_.size() <= 1)
        return d;
    d.c_.resize(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k)
        d.c_[k - 1] = mulmod_u64(c_[k], k % p_, p_);
    d.trim();
    return d;
}

ModPoly ModPoly::monic() const
{
    if (c_.empty() || c_.back() == 1)
        return *this;
    return scaled(invmod_u64(c_.back(), p_));
}

ModPoly ModPoly::scaled(Coeff k) const
{
    ModPoly r(p_);
    k %= p_;
    r.c_.resize(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i)
        r.c_[i] = mulmod_u64(c_[i], k, p_);
    r.trim();
    return r;
}

ModPoly& ModPoly::operator+=(const ModPoly& o)
{
    require_same_field(*this, o);
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        c_[i] = addm(c_[i], o.c_[i], p_);
    trim();
    return *this;
}

ModPoly& ModPoly::operator-=(const ModPoly& o)
{
    require_same_field(*this, o);
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i)
        c_[i] = subm(c_[i], o.c_[i], p_);
    trim();
    return *this;
}

ModPoly operator*(const ModPoly& a, const ModPoly& b)
{
    require_same_field(a, b);
    ModPoly r(a.p_);
    if (a.c_.empty() || b.c_.empty())
        return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            r.c_[i + j] = addm(r.c_[i + j], mulmod_u64(a.c_[i], b.c_[j], a.p_), a.p_);
    }
    r.trim();
    return r;
}

std::string ModPoly::to_string(const std::string& var) const
{
    if (c_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
        if (c_[k] == 0)
            continue;
        if (!first)
            os << " + ";
        first = false;
        if (k == 0 || c_[k] != 1)
            os << c_[k];
        if (k > 0) {
            if (c_[k] != 1)
                os << '*';
            os << var;
            if (k > 1)
                os << '^' << k;
        }
    }
    return os.str();
}

std::pair<ModPoly, ModPoly> divmod(const ModPoly& a, const ModPoly& b)
{
    require_same_field(a, b);
    if (b.is_zero())
        throw DomainError("divmod: division by zero polynomial");
    const Coeff p = a.modulus();
    std::vector<Coeff> r = a.coeffs();
    const auto& bc = b.coeffs();
    const int db = b.degree();
    if (a.degree() < db)
        return {ModPoly(p), a};
    const Coeff inv = invmod_u64(b.leading(), p);
    std::vector<Coeff> q(static_cast<std::size_t>(a.degree() - db + 1), 0);
    for (int k = a.degree(); k >= db; --k) {
        const Coeff c = r[static_cast<std::size_t>(k)];
        if (c == 0)
            continue;
        const Coeff f = mulmod_u64(c, inv, p);
        q[static_cast<std::size_t>(k - db)] = f;
        for (int j = 0; j <= db; ++j) {
            auto& slot = r[static_cast<std::size_t>(k - db + j)];
            slot = subm(slot, mulmod_u64(f, bc[static_cast<std::size_t>(j)], p), p);
        }
    }
    return {ModPoly(p, std::move(q)), ModPoly(p, std::move(r))};
}

ModPoly operator%(const ModPoly& a, const ModPoly& b) { return divmod(a, b).second; }
ModPoly operator/(const ModPoly& a, const ModPoly& b) { return divmod(a, b).first; }

ModPoly gcd(const ModPoly& a, const ModPoly& b)
{
    ModPoly x = a, y = b;
    while (!y.is_zero()) {
        ModPoly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

ModPoly powmod(const ModPoly& base, const BigInt& e, const ModPoly& m)
{
    if (sgn(e) < 0)
        throw DomainError("powmod: negative exponent");
    ModPoly result = ModPoly::constant(m.modulus(), 1) % m;
    ModPoly b = base % m;
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = (result * result) % m;
        if (mpz_tstbit(e.get_mpz_t(), i))
            result = (result * b) % m;
    }
    return result;
}

ModPoly reduce_mod(const IntPoly& f, std::uint64_t p)
{
    if (p < 2)
        throw DomainError("reduce_mod: modulus below 2");
    if (!is_prime_u64(p))
        throw DomainError("reduce_mod: modulus not prime");
    std::vector<Coeff> c;
    c.reserve(f.coeffs().size());
    const BigInt P(std::to_string(p));
    for (const auto& a : f.coeffs()) {
        BigInt r;
        mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), P.get_mpz_t());
        c.push_back(mpz_get_ui(r.get_mpz_t()));
    }
    return ModPoly(p, std::move(c));
}

namespace {

// g(x) with g(x)^p = f(x), valid when f' = 0 (F_p is perfect, a^p = a).
ModPoly pth_root(const ModPoly& f)
{
    const Coeff p = f.modulus();
    std::vector<Coeff> c;
    for (std::size_t k = 0; k < f.coeffs().size(); k += p)
        c.push_back(f.coeffs()[k]);
    return ModPoly(p, std::move(c));
}

// Musser/Yun style pass; output factors are squarefree but a single
// irreducible may appear under two multiplicities when p | multiplicity.
void sff_raw(const ModPoly& f, unsigned scale, std::vector<SquarefreeFactor>& out)
{
    const Coeff p = f.modulus();
    ModPoly c = gcd(f, f.derivative());
    ModPoly w = f / c;
    unsigned i = 1;
    while (w.degree() > 0) {
        ModPoly y = gcd(w, c);
        ModPoly z = w / y;
        if (z.degree() > 0)
            out.push_back({z.monic(), i * scale});
        ++i;
        w = std::move(y);
        c = c / w;
    }
    if (c.degree() > 0)
        sff_raw(pth_root(c.monic()), scale * static_cast<unsigned>(p), out);
}

} // namespace

std::vector<SquarefreeFactor> squarefree_decomposition(const ModPoly& f)
{
    if (f.is_zero())
        throw DomainError("squarefree_decomposition: zero polynomial");
    std::vector<SquarefreeFactor> raw;
    sff_raw(f.monic(), 1, raw);

    // Refine to a coprime family, adding multiplicities on common parts.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < raw.size() && !changed; ++i)
            for (std::size_t j = i + 1; j < raw.size() && !changed; ++j) {
                ModPoly g = gcd(raw[i].factor, raw[j].factor);
                if (g.degree() <= 0)
                    continue;
                SquarefreeFactor a{raw[i].factor / g, raw[i].multiplicity};
                SquarefreeFactor b{raw[j].factor / g, raw[j].multiplicity};
                SquarefreeFactor common{g, raw[i].multiplicity + raw[j].multiplicity};
                raw.erase(raw.begin() + static_cast<std::ptrdiff_t>(j));
                raw.erase(raw.begin() + static_cast<std::ptrdiff_t>(i));
                for (auto* s : {&a, &b, &common})
                    if (s->factor.degree() > 0)
                        raw.push_back(*s);
                changed = true;
            }
    }

    std::map<unsigned, ModPoly> by_mult;
    for (auto& s : raw) {
        auto it = by_mult.find(s.multiplicity);
        if (it == by_mult.end())
            by_mult.emplace(s.multiplicity, s.factor);
        else
            it->second = it->second * s.factor;
    }
    std::vector<SquarefreeFactor> out;
    for (auto& [m, g] : by_mult)
        out.push_back({g.monic(), m});
    return out;
}

std::vector<std::pair<ModPoly, unsigned>> distinct_degree_factorization(const ModPoly& f)
{
    std::vector<std::pair<ModPoly, unsigned>> out;
    const Coeff p = f.modulus();
    const BigInt P(std::to_string(p));
    ModPoly rest = f.monic();
    const ModPoly x = ModPoly::x(p);
    ModPoly h = x % rest;
    unsigned d = 1;
    while (rest.degree() >= 2 * static_cast<int>(d)) {
        h = powmod(h, P, rest);
        ModPoly g = gcd(h - x, rest);
        if (g.degree() > 0) {
            out.emplace_back(g, d);
            rest = rest / g;
            h = h % rest;
        }
        ++d;
    }
    if (rest.degree() > 0)
        out.emplace_back(rest, static_cast<unsigned>(rest.degree()));
    return out;
}

std::vector<ModPoly> equal_degree_factorization(const ModPoly& f, unsigned d, std::mt19937_64& rng)
{
    const Coeff p = f.modulus();
    const int n = f.degree();
    if (n <= 0)
        return {};
    if (n % static_cast<int>(d) != 0)
        throw DomainError("equal_degree_factorization: degree not a multiple of d");
    if (n == static_cast<int>(d))
        return {f.monic()};

    std::uniform_int_distribution<Coeff> coef(0, p - 1);
    BigInt half;   // (p^d - 1) / 2 for odd p
    if (p != 2) {
        mpz_ui_pow_ui(half.get_mpz_t(), p, d);
        half = (half - 1) / 2;
    }
    for (;;) {
        std::vector<Coeff> c(static_cast<std::size_t>(n));
        for (auto& v : c)
            v = coef(rng);
        ModPoly a(p, std::move(c));
        if (a.degree() <= 0)
            continue;
        ModPoly g = gcd(a, f);
        if (g.degree() <= 0 || g.degree() == n) {
            ModPoly b(p);
            if (p == 2) {
                // trace a + a^2 + ... + a^(2^(d-1))
                ModPoly t = a % f;
                b = t;
                for (unsigned i = 1; i < d; ++i) {
                    t = (t * t) % f;
                    b += t;
                }
            } else {
                b = powmod(a, half, f) - ModPoly::constant(p, 1);
            }
            g = gcd(b, f);
        }
        if (g.degree() > 0 && g.degree() < n) {
            auto left = equal_degree_factorization(g, d, rng);
            auto right = equal_degree_factorization(f / g, d, rng);
            left.insert(left.end(), right.begin(), right.end());
            return left;
        }
    }
}

ModFactorization factor(const ModPoly& f, std::uint64_t seed)
{
    if (f.is_zero())
        throw DomainError("factor: zero polynomial");
    ModFactorization out;
    out.unit = f.leading();
    std::mt19937_64 rng(seed);
    for (const auto& sf : squarefree_decomposition(f))
        for (const auto& [g, d] : distinct_degree_factorization(sf.factor))
            for (auto& irr : equal_degree_factorization(g, d, rng))
                out.factors.emplace_back(std::move(irr), sf.multiplicity);
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree())
            return a.first.degree() < b.first.degree();
        return a.first.coeffs() < b.first.coeffs();
    });
    return out;
}

std::vector<std::uint64_t> roots(const ModPoly& f, std::uint64_t seed)
{
    if (f.is_zero())
        throw DomainError("roots: zero polynomial");
    std::vector<std::uint64_t> out;
    const Coeff p = f.modulus();
    // x^p - x picks out the product of the distinct linear factors
    ModPoly lin = gcd(powmod(ModPoly::x(p), BigInt(std::to_string(p)), f.monic()) - ModPoly::x(p), f);
    if (lin.degree() <= 0)
        return out;
    std::mt19937_64 rng(seed);
    for (const auto& g : equal_degree_factorization(lin, 1, rng))
        out.push_back((p - g.coeff(0)) % p);
    std::sort(out.begin(), out.end());
    return out;
}

unsigned FactorShape::total_degree() const
{
    unsigned s = 0;
    for (auto [d, m] : parts)
        s += d * m;
    return s;
}

std::vector<unsigned> FactorShape::degrees() const
{
    std::vector<unsigned> out;
    for (auto [d, m] : parts)
        for (unsigned i = 0; i < m; ++i)
            out.push_back(d);
    return out;
}

std::string FactorShape::to_string() const
{
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (auto [d, m] : parts) {
        if (!first)
            os << ',';
        first = false;
        os << d;
        if (m > 1)
            os << '^' << m;
    }
    os << '}';
    return os.str();
}

FactorShape shape_of(const ModPoly& f)
{
    if (f.is_zero())
        throw DomainError("shape_of: zero polynomial");
    FactorShape s;
    for (const auto& sf : squarefree_decomposition(f))
        for (const auto& [g, d] : distinct_degree_factorization(sf.factor))
            for (int i = 0; i < g.degree() / static_cast<int>(d); ++i)
                s.parts.emplace_back(d, sf.multiplicity);
    std::sort(s.parts.begin(), s.parts.end(), std::greater<>());
    return s;
}

FactorShape factor_shape(const IntPoly& f, std::uint64_t p)
{
    const ModPoly fb = reduce_mod(f, p);
    if (fb.degree() != f.degree())
        throw DomainError("factor_shape: prime divides the leading coefficient");
    if (fb.degree() <= 0)
        throw DomainError("factor_shape: constant polynomial");
    if (gcd(fb, fb.derivative()).degree() > 0)
        throw DomainError("factor_shape: prime divides the discriminant");
    return shape_of(fb);
}

DoubleRootAnalysis double_root_analysis(const IntPoly& f, std::uint64_t ell)
{
    if (f.degree() < 1)
        throw DomainError("double_root_analysis: constant polynomial");
    return double_root_analysis(f, ell, discriminant(f));
}

DoubleRootAnalysis double_root_analysis(const IntPoly& f, std::uint64_t ell, const BigInt& d)
{
    if (ell % 2 == 0 || !is_prime_u64(ell))
        throw DomainError("double_root_analysis: need an odd prime");
    const ModPoly fb = reduce_mod(f, ell);
    if (fb.degree() != f.degree())
        throw DomainError("double_root_analysis: prime divides the leading coefficient "
                          "(model change at infinity unsupported)");
    if (f.degree() < 1)
        throw DomainError("double_root_analysis: constant polynomial");

    DoubleRootAnalysis out;
    if (d == 0)
        out.disc_zero = true;
    else
        out.disc_valuation = valuation(d, BigInt(std::to_string(ell)));

    const ModPoly g = gcd(fb, fb.derivative());
    if (!out.disc_zero && out.disc_valuation == 1) {
        if (g.degree() != 1)
            throw ConsistencyError("double_root_analysis: ord 1 but gcd(f, f') is not linear");
        out.kind = DoubleRootAnalysis::Kind::UniqueDoubleRootInBase;
        out.root = (ell - g.coeff(0)) % ell;
        out.description = "unique double root " + std::to_string(out.root);
        return out;
    }

    std::ostringstream os;
    if (g.degree() <= 0) {
        os << "squarefree reduction";
    } else {
        os << "repeated factors:";
        for (const auto& sf : squarefree_decomposition(fb)) {
            if (sf.multiplicity < 2)
                continue;
            os << " (" << sf.factor.to_string() << ")^" << sf.multiplicity;
        }
    }
    if (out.disc_zero)
        os << "; disc = 0";
    else
        os << "; ord = " << out.disc_valuation;
    out.description = os.str();
    return out;
}

} // namespace jacmax
