#include "jacmax/bigint_poly.hpp"

#include "jacmax/errors.hpp"
#include "jacmax/primes.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

namespace jacmax {

// ---------------------------------------------------------------------------
// IntPoly

IntPoly::IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs)
{
    coeffs_.reserve(coeffs.size());
    for (long c : coeffs)
        coeffs_.emplace_back(c);
    trim();
}

IntPoly IntPoly::constant(const BigInt& c) { return IntPoly(std::vector<BigInt>{c}); }

IntPoly IntPoly::monomial(const BigInt& c, std::size_t power)
{
    std::vector<BigInt> v(power + 1);
    v[power] = c;
    return IntPoly(std::move(v));
}

void IntPoly::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

BigInt IntPoly::coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : BigInt(0); }

BigInt IntPoly::leading() const { return coeffs_.empty() ? BigInt(0) : coeffs_.back(); }

BigInt IntPoly::eval(const BigInt& x) const
{
    BigInt acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

IntPoly IntPoly::derivative() const
{
    if (coeffs_.size() <= 1)
        return {};
    std::vector<BigInt> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
        d[k - 1] = coeffs_[k] * static_cast<unsigned long>(k);
    return IntPoly(std::move(d));
}

BigInt IntPoly::content() const
{
    BigInt g = 0;
    for (const auto& c : coeffs_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1)
            break;
    }
    return g;
}

IntPoly IntPoly::primitive_part() const
{
    if (is_zero())
        return {};
    BigInt c = content();
    if (leading() < 0)
        c = -c;
    return exact_div(c);
}

IntPoly IntPoly::shifted_constant(const BigInt& c) const
{
    std::vector<BigInt> v = coeffs_;
    if (v.empty())
        v.emplace_back(0);
    v[0] += c;
    return IntPoly(std::move(v));
}

IntPoly IntPoly::scaled(const BigInt& c) const
{
    std::vector<BigInt> v = coeffs_;
    for (auto& x : v)
        x *= c;
    return IntPoly(std::move(v));
}

IntPoly IntPoly::exact_div(const BigInt& c) const
{
    if (c == 0)
        throw DomainError("IntPoly::exact_div: division by zero");
    std::vector<BigInt> v = coeffs_;
    for (auto& x : v) {
        if (!mpz_divisible_p(x.get_mpz_t(), c.get_mpz_t()))
            throw ConsistencyError("IntPoly::exact_div: inexact division");
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    }
    return IntPoly(std::move(v));
}

IntPoly& IntPoly::operator+=(const IntPoly& o)
{
    if (coeffs_.size() < o.coeffs_.size())
        coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
        coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o)
{
    if (coeffs_.size() < o.coeffs_.size())
        coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
        coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<BigInt> v(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            mpz_addmul(v[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
    return IntPoly(std::move(v));
}

std::string IntPoly::to_string(std::string_view var) const
{
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const BigInt& c = coeffs_[static_cast<std::size_t>(k)];
        if (c == 0)
            continue;
        BigInt mag = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        if (k == 0 || mag != 1)
            os << mag.get_str();
        if (k > 0) {
            if (mag != 1)
                os << "*";
            os << var;
            if (k > 1)
                os << "^" << k;
        }
    }
    return os.str();
}

IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b)
{
    if (b.is_zero())
        throw DomainError("pseudo_remainder: zero divisor");
    if (a.degree() < b.degree())
        return a;
    const BigInt lb = b.leading();
    const int db = b.degree();
    int e = a.degree() - db + 1;
    std::vector<BigInt> r = a.coeffs();
    int dr = a.degree();
    while (dr >= db) {
        BigInt lr = r[static_cast<std::size_t>(dr)];
        for (auto& c : r)
            c *= lb;
        const int shift = dr - db;
        for (int k = 0; k <= db; ++k)
            mpz_submul(r[static_cast<std::size_t>(k + shift)].get_mpz_t(), lr.get_mpz_t(),
                       b.coeffs()[static_cast<std::size_t>(k)].get_mpz_t());
        --e;
        // leading term cancels by construction
        r[static_cast<std::size_t>(dr)] = 0;
        while (dr >= 0 && r[static_cast<std::size_t>(dr)] == 0)
            --dr;
    }
    if (e > 0) {
        BigInt f;
        mpz_pow_ui(f.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(e));
        for (auto& c : r)
            c *= f;
    }
    return IntPoly(std::move(r));
}

// ---------------------------------------------------------------------------
// RatPoly

RatPoly::RatPoly(std::vector<BigRat> coeffs) : coeffs_(std::move(coeffs))
{
    for (auto& c : coeffs_)
        c.canonicalize();
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

BigRat RatPoly::eval(const BigRat& x) const
{
    BigRat acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

bool RatPoly::is_integral() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const BigRat& c) { return c.get_den() == 1; });
}

IntPoly RatPoly::to_int_poly() const
{
    if (!is_integral())
        throw ConsistencyError("RatPoly::to_int_poly: non-integral coefficient");
    std::vector<BigInt> v;
    v.reserve(coeffs_.size());
    for (const auto& c : coeffs_)
        v.push_back(c.get_num());
    return IntPoly(std::move(v));
}

// ---------------------------------------------------------------------------
// Resultants

namespace {

BigInt pow_ui(const BigInt& b, unsigned long e)
{
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

BigInt exact_quotient(const BigInt& a, const BigInt& b)
{
    BigInt q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// Sylvester matrix with f rows first: deg g shifted copies of f, then deg f
// shifted copies of g, coefficients in descending degree.
std::vector<std::vector<BigInt>> sylvester_matrix(const IntPoly& f, const IntPoly& g)
{
    const int m = f.degree(), n = g.degree();
    const int size = m + n;
    std::vector<std::vector<BigInt>> s(static_cast<std::size_t>(size),
                                       std::vector<BigInt>(static_cast<std::size_t>(size)));
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k)
            s[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + k)] = f.coeff(static_cast<std::size_t>(m - k));
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k)
            s[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + k)] = g.coeff(static_cast<std::size_t>(n - k));
    return s;
}

// Cohen, "A Course in Computational Algebraic Number Theory", Alg. 3.3.7.
BigInt subresultant(IntPoly a, IntPoly b)
{
    const int da0 = a.degree(), db0 = b.degree();
    if (da0 == 0 && db0 == 0)
        return 1;
    if (db0 == 0)
        return pow_ui(b.leading(), static_cast<unsigned long>(da0));
    if (da0 == 0)
        return pow_ui(a.leading(), static_cast<unsigned long>(db0));

    BigInt ca = a.content(), cb = b.content();
    a = a.exact_div(ca);
    b = b.exact_div(cb);
    BigInt g = 1, h = 1;
    int s = 1;
    BigInt t = pow_ui(ca, static_cast<unsigned long>(db0)) * pow_ui(cb, static_cast<unsigned long>(da0));
    if (a.degree() < b.degree()) {
        std::swap(a, b);
        if ((a.degree() & 1) && (b.degree() & 1))
            s = -1;
    }
    for (;;) {
        const int delta = a.degree() - b.degree();
        if ((a.degree() & 1) && (b.degree() & 1))
            s = -s;
        IntPoly r = pseudo_remainder(a, b);
        a = b;
        if (r.is_zero())
            return 0;
        b = r.exact_div(g * pow_ui(h, static_cast<unsigned long>(delta)));
        g = a.leading();
        if (delta == 0) {
            // h^(1-0) g^0 = h
        } else {
            h = exact_quotient(pow_ui(g, static_cast<unsigned long>(delta)),
                               pow_ui(h, static_cast<unsigned long>(delta - 1)));
        }
        if (b.degree() <= 0)
            break;
    }
    const int da = a.degree();
    h = exact_quotient(pow_ui(b.leading(), static_cast<unsigned long>(da)),
                       pow_ui(h, static_cast<unsigned long>(da - 1)));
    return s * t * h;
}

} // namespace

BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m)
{
    const std::size_t n = m.size();
    if (n == 0)
        return 1;
    int sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0)
                ++p;
            if (p == n)
                return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                BigInt v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

BigInt resultant(const IntPoly& f, const IntPoly& g, ResultantMethod method)
{
    if (f.is_zero() || g.is_zero())
        throw DomainError("resultant: zero polynomial");
    if (method == ResultantMethod::Sylvester) {
        if (f.degree() == 0 && g.degree() == 0)
            return 1;
        return bareiss_determinant(sylvester_matrix(f, g));
    }
    return subresultant(f, g);
}

BigInt discriminant(const IntPoly& f, ResultantMethod method)
{
    const int n = f.degree();
    if (n <= 0)
        throw DomainError("discriminant: degree must be at least 1");
    if (n == 1)
        return 1;
    BigInt r = resultant(f, f.derivative(), method);
    BigInt q = exact_quotient(r, f.leading());
    const long pairs = static_cast<long>(n) * (n - 1) / 2;
    return (pairs % 2 == 0) ? q : BigInt(-q);
}

// ---------------------------------------------------------------------------
// Valuations, Kronecker symbol

unsigned long valuation(const BigInt& n, const BigInt& p)
{
    if (n == 0)
        throw DomainError("valuation: zero has infinite valuation");
    if (p < 2)
        throw DomainError("valuation: modulus must be a prime >= 2");
#ifndef NDEBUG
    if (mpz_probab_prime_p(p.get_mpz_t(), 25) == 0)
        throw DomainError("valuation: modulus is not prime");
#endif
    BigInt rest;
    return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

int kronecker_symbol(const BigInt& a_in, const BigInt& n_in)
{
    static constexpr int kTab2[8] = {0, 1, 0, -1, 0, -1, 0, 1};
    BigInt a = a_in, b = n_in;
    if (b == 0)
        return abs(a) == 1 ? 1 : 0;
    if (mpz_even_p(a.get_mpz_t()) && mpz_even_p(b.get_mpz_t()))
        return 0;

    int k = 1;
    const unsigned long v = mpz_scan1(b.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(b.get_mpz_t(), b.get_mpz_t(), v);
    if (v & 1) {
        const unsigned long a8 = mpz_fdiv_ui(a.get_mpz_t(), 8);
        k = kTab2[a8];
    }
    if (b < 0) {
        b = -b;
        if (a < 0)
            k = -k;
    }
    // b odd and positive: Jacobi symbol (a mod b / b)
    mpz_fdiv_r(a.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    while (a != 0) {
        const unsigned long va = mpz_scan1(a.get_mpz_t(), 0);
        mpz_tdiv_q_2exp(a.get_mpz_t(), a.get_mpz_t(), va);
        if (va & 1) {
            const unsigned long b8 = mpz_fdiv_ui(b.get_mpz_t(), 8);
            if (b8 == 3 || b8 == 5)
                k = -k;
        }
        if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(b.get_mpz_t(), 4) == 3)
            k = -k;
        BigInt r;
        mpz_fdiv_r(r.get_mpz_t(), b.get_mpz_t(), a.get_mpz_t());
        b = a;
        a = r;
    }
    return b == 1 ? k : 0;
}

// ---------------------------------------------------------------------------
// Bounded factoring

bool is_probable_prime(const BigInt& n)
{
    return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

namespace {

// Brent's variant of Pollard rho; returns a nontrivial factor or 0.
BigInt pollard_brent(const BigInt& n, std::uint64_t seed, unsigned long max_iter)
{
    if (mpz_even_p(n.get_mpz_t()))
        return 2;
    BigInt y = BigInt(static_cast<unsigned long>(seed % 1'000'003ULL)) % n;
    const BigInt c = BigInt(static_cast<unsigned long>((seed >> 20) % 1'000'033ULL + 1)) % n;
    const unsigned long block = 128;
    BigInt g = 1, r = 1, q = 1, x, ys;
    unsigned long iter = 0;
    auto step = [&](BigInt& v) {
        v = v * v + c;
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    while (g == 1 && iter < max_iter) {
        x = y;
        for (BigInt i = 0; i < r; ++i)
            step(y);
        BigInt k = 0;
        while (k < r && g == 1) {
            ys = y;
            const BigInt lim = std::min(BigInt(block), BigInt(r - k));
            for (BigInt i = 0; i < lim; ++i) {
                step(y);
                BigInt diff = x - y;
                q = q * abs(diff);
                mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += block;
            iter += block;
        }
        r *= 2;
    }
    if (g == n) {
        do {
            step(ys);
            BigInt diff = x - ys;
            mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    if (g == 1 || g == n)
        return 0;
    return g;
}

// Refines a multiset of (base, exponent) pieces into pairwise coprime bases.
void coprime_refine(std::vector<std::pair<BigInt, unsigned long>>& pieces)
{
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < pieces.size() && !changed; ++i) {
            for (std::size_t j = i + 1; j < pieces.size() && !changed; ++j) {
                BigInt g;
                mpz_gcd(g.get_mpz_t(), pieces[i].first.get_mpz_t(), pieces[j].first.get_mpz_t());
                if (g == 1)
                    continue;
                auto [a, ea] = pieces[i];
                auto [b, eb] = pieces[j];
                pieces.erase(pieces.begin() + static_cast<long>(j));
                pieces.erase(pieces.begin() + static_cast<long>(i));
                const BigInt a1 = exact_quotient(a, g), b1 = exact_quotient(b, g);
                pieces.emplace_back(g, ea + eb);
                if (a1 != 1)
                    pieces.emplace_back(a1, ea);
                if (b1 != 1)
                    pieces.emplace_back(b1, eb);
                changed = true;
            }
        }
    }
}

} // namespace

BoundedFactorization factor_bounded(const BigInt& n_in, const FactorPolicy& policy)
{
    if (n_in == 0)
        throw DomainError("factor_bounded: zero");
    BigInt n = abs(n_in);
    std::map<BigInt, unsigned long> found;

    for (std::uint32_t p : primes_up_to(policy.trial_bound)) {
        if (n == 1)
            break;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            const BigInt bp(p);
            found[bp] += mpz_remove(n.get_mpz_t(), n.get_mpz_t(), bp.get_mpz_t());
        }
    }

    std::vector<std::pair<BigInt, unsigned long>> todo;
    if (n != 1)
        todo.emplace_back(n, 1);
    std::vector<std::pair<BigInt, unsigned long>> stuck;
    const BigInt bound_sq = BigInt(static_cast<unsigned long>(policy.trial_bound)) *
                            BigInt(static_cast<unsigned long>(policy.trial_bound));

    while (!todo.empty()) {
        auto [m, e] = todo.back();
        todo.pop_back();
        if (m == 1)
            continue;
        if (m < bound_sq || is_probable_prime(m)) {
            found[m] += e;
            continue;
        }
        if (mpz_perfect_power_p(m.get_mpz_t())) {
            bool split = false;
            for (unsigned long k = 2; BigInt(1) << k <= m; ++k) {
                BigInt root;
                if (mpz_root(root.get_mpz_t(), m.get_mpz_t(), k) != 0) {
                    todo.emplace_back(root, e * k);
                    split = true;
                    break;
                }
            }
            if (split)
                continue;
        }
        BigInt d = 0;
        for (unsigned a = 0; a < policy.rho_attempts && d == 0; ++a)
            d = pollard_brent(m, policy.seed + 0x9e3779b97f4a7c15ULL * (a + 1), policy.rho_iterations);
        if (d == 0) {
            stuck.emplace_back(m, e);
            continue;
        }
        todo.emplace_back(d, e);
        todo.emplace_back(exact_quotient(m, d), e);
    }

    // Found "primes" from the rho stage may still share factors with each
    // other or with stuck pieces; refine everything to a coprime base.
    std::vector<std::pair<BigInt, unsigned long>> pieces(found.begin(), found.end());
    for (auto& s : stuck)
        pieces.push_back(s);
    coprime_refine(pieces);

    BoundedFactorization out;
    for (auto& [b, e] : pieces) {
        if (is_probable_prime(b))
            out.primes.emplace_back(b, e);
        else
            out.cofactors.emplace_back(b, e);
    }
    std::sort(out.primes.begin(), out.primes.end());
    std::sort(out.cofactors.begin(), out.cofactors.end());
    return out;
}

BigInt squarefree_part(const BigInt& n, const FactorPolicy& policy)
{
    if (n == 0)
        throw DomainError("squarefree_part: zero");
    const BoundedFactorization fac = factor_bounded(n, policy);
    BigInt out = n < 0 ? -1 : 1;
    for (const auto& [p, e] : fac.primes)
        if (e & 1)
            out *= p;
    for (const auto& [c, e] : fac.cofactors) {
        if (e % 2 == 0)
            continue;   // any exponent pattern inside c is doubled
        throw InconclusiveError("squarefree_part: cofactor could not be factored under the policy",
                                c.get_str());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Interpolation

std::vector<BigInt> family_interpolation_nodes(std::size_t count)
{
    std::vector<BigInt> nodes;
    nodes.reserve(count);
    if (count > 0)
        nodes.emplace_back(0);
    for (long k = 1; nodes.size() < count; ++k) {
        nodes.emplace_back(k);
        if (nodes.size() < count)
            nodes.emplace_back(-k);
    }
    return nodes;
}

RatPoly interpolate(const std::vector<BigInt>& xs, const std::vector<BigInt>& ys)
{
    if (xs.size() != ys.size() || xs.empty())
        throw DomainError("interpolate: need equally many nodes and values");
    const std::size_t n = xs.size();
    // Newton divided differences, in place.
    std::vector<BigRat> dd(ys.begin(), ys.end());
    for (std::size_t level = 1; level < n; ++level) {
        for (std::size_t i = n - 1; i >= level; --i) {
            const BigInt den = xs[i] - xs[i - level];
            if (den == 0)
                throw DomainError("interpolate: repeated node");
            dd[i] = (dd[i] - dd[i - 1]) / BigRat(den);
            if (i == level)
                break;
        }
    }
    // Expand the Newton form from the top: p = dd[n-1]; p = p*(t - x_k) + dd[k].
    std::vector<BigRat> p{dd[n - 1]};
    for (std::size_t k = n - 1; k-- > 0;) {
        std::vector<BigRat> next(p.size() + 1);
        for (std::size_t j = 0; j < p.size(); ++j) {
            next[j + 1] += p[j];
            next[j] -= p[j] * BigRat(xs[k]);
        }
        next[0] += dd[k];
        p = std::move(next);
    }
    return RatPoly(std::move(p));
}

IntPoly interpolate_family_discriminant(const IntPoly& f, const BigInt& N)
{
    const int n = f.degree();
    if (n < 2)
        throw DomainError("interpolate_family_discriminant: degree must be at least 2");
    const auto nodes = family_interpolation_nodes(static_cast<std::size_t>(2 * n - 1));
    std::vector<BigInt> values;
    values.reserve(nodes.size());
    for (const auto& t : nodes)
        values.push_back(discriminant(f.shifted_constant(N * t)));
    const RatPoly p = interpolate(nodes, values);
    if (!p.is_integral())
        throw ConsistencyError("interpolate_family_discriminant: non-integral interpolant");
    if (p.degree() > 2 * n - 2)
        throw ConsistencyError("interpolate_family_discriminant: degree bound violated");
    return p.to_int_poly();
}

} // namespace jacmax
