#include "jacmax/divfields.hpp"

#include "jacmax/errors.hpp"
#include "jacmax/primes.hpp"

#include <algorithm>
#include <numeric>

namespace jacmax {

namespace {

std::uint32_t checked_level(std::uint64_t n, const DivfieldOptions& opts)
{
    if (n == 0)
        throw DomainError("divfields: level 0");
    if (n > 0xffffffffu)
        throw InconclusiveError("divfields: level exceeds 32 bits", "N = " + std::to_string(n));
    const std::uint64_t phi = euler_phi(n);
    if (phi > opts.cap)
        throw InconclusiveError("divfields: unit group exceeds the degree cap",
                                "N = " + std::to_string(n) + ", phi(N) = " + std::to_string(phi));
    return static_cast<std::uint32_t>(n);
}

std::uint32_t mul(std::uint32_t a, std::uint32_t b, std::uint32_t n)
{
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % n);
}

// Grows the subgroup `elems` (with membership marks) by y.
void adjoin(std::vector<std::uint32_t>& elems, std::vector<char>& mark, std::uint32_t y, std::uint32_t n)
{
    if (mark[y])
        return;
    const std::vector<std::uint32_t> base = elems;
    for (std::uint32_t cur = y; !mark[cur]; cur = mul(cur, y, n))
        for (std::uint32_t h : base) {
            const std::uint32_t z = mul(h, cur, n);
            mark[z] = 1;
            elems.push_back(z);
        }
}

std::vector<std::uint32_t> closure(std::uint32_t n, const std::vector<std::uint32_t>& start,
                                   const std::vector<std::uint32_t>& gens)
{
    std::vector<char> mark(n, 0);
    std::vector<std::uint32_t> elems = start;
    for (std::uint32_t x : elems)
        mark[x] = 1;
    for (std::uint32_t g : gens)
        adjoin(elems, mark, g % n, n);
    std::sort(elems.begin(), elems.end());
    return elems;
}

std::vector<std::uint32_t> one(std::uint32_t n) { return {n == 1 ? 0u : 1u}; }

// chi(a) for residues a mod D of the quadratic character of q
std::vector<int> character_table(const QuadDatum& q)
{
    const std::uint32_t d = static_cast<std::uint32_t>(q.D.get_ui());
    std::vector<int> t(d, 0);
    for (std::uint32_t r = 0; r < d; ++r)
        if (std::gcd(r, d) == 1)
            t[r] = q.character(BigInt(r));
    return t;
}

std::vector<std::uint32_t> prime_divisors(std::uint32_t n)
{
    std::vector<std::uint32_t> ps;
    for (auto [p, e] : factor_u64(n))
        ps.push_back(static_cast<std::uint32_t>(p));
    return ps;
}

} // namespace

std::vector<std::uint32_t> unit_residues(std::uint32_t n, const DivfieldOptions& opts)
{
    checked_level(n, opts);
    std::vector<std::uint32_t> u;
    for (std::uint32_t a = 0; a < n; ++a)
        if (std::gcd(a, n) == 1)
            u.push_back(a);
    return u;
}

AbelianField AbelianField::from_generators(std::uint32_t n, const std::vector<std::uint32_t>& gens,
                                           const DivfieldOptions& opts)
{
    checked_level(n, opts);
    for (std::uint32_t g : gens)
        if (std::gcd(g % n, n) != 1)
            throw DomainError("AbelianField: generator " + std::to_string(g) + " is not a unit mod " +
                              std::to_string(n));
    AbelianField k;
    k.n_ = n;
    k.h_ = closure(n, one(n), gens);
    k.canonical_ = false;
    return k;
}

AbelianField AbelianField::rationals() { return AbelianField{}; }

AbelianField AbelianField::cyclotomic(std::uint32_t m, const DivfieldOptions& opts)
{
    return from_generators(m, {}, opts).canonicalize();
}

std::vector<std::uint32_t> AbelianField::generators() const
{
    std::vector<char> mark(n_, 0);
    std::vector<std::uint32_t> elems = one(n_), gens;
    mark[elems[0]] = 1;
    for (std::uint32_t h : h_)
        if (!mark[h]) {
            gens.push_back(h);
            adjoin(elems, mark, h, n_);
        }
    return gens;
}

std::uint64_t AbelianField::degree() const { return euler_phi(n_) / h_.size(); }

bool AbelianField::inside_cyclotomic(std::uint32_t d) const
{
    if (d == 0 || n_ % d != 0)
        return false;
    std::vector<char> mark(n_, 0);
    for (std::uint32_t h : h_)
        mark[h] = 1;
    if (n_ == 1)
        return true;
    for (std::uint32_t a = 1; a < n_; a += d)
        if (std::gcd(a, n_) == 1 && !mark[a])
            return false;
    return true;
}

AbelianField AbelianField::canonicalize() const
{
    AbelianField k = *this;
    for (std::uint32_t p : prime_divisors(n_))
        while (k.n_ % p == 0 && k.inside_cyclotomic(k.n_ / p)) {
            const std::uint32_t d = k.n_ / p;
            std::vector<std::uint32_t> img;
            for (std::uint32_t h : k.h_)
                img.push_back(h % d);
            std::sort(img.begin(), img.end());
            img.erase(std::unique(img.begin(), img.end()), img.end());
            k.n_ = d;
            k.h_ = std::move(img);
        }
    k.canonical_ = true;
    return k;
}

AbelianField AbelianField::lift(std::uint32_t l, const DivfieldOptions& opts) const
{
    if (l == 0 || l % n_ != 0)
        throw DomainError("AbelianField::lift: " + std::to_string(l) + " is not a multiple of " + std::to_string(n_));
    checked_level(l, opts);
    std::vector<char> mark(n_, 0);
    for (std::uint32_t h : h_)
        mark[h] = 1;
    AbelianField k;
    k.n_ = l;
    k.h_.clear();
    for (std::uint32_t a : unit_residues(l, opts))
        if (mark[a % n_])
            k.h_.push_back(a);
    k.canonical_ = false;
    return k;
}

AbelianField field_from_data(std::uint32_t m, const std::vector<BigInt>& deltas, const DivfieldOptions& opts)
{
    if (m == 0)
        throw DomainError("field_from_data: m = 0");
    std::vector<QuadDatum> active;
    std::uint64_t n = m;
    if (m % 2 == 0)
        for (const auto& delta : deltas) {
            QuadDatum q = quad_datum(delta);
            if (q.delta_prime == 1)
                continue;
            if (!q.D.fits_ulong_p() || q.D > 0xffffffffu)
                throw InconclusiveError("field_from_data: conductor exceeds 32 bits", q.D.get_str());
            n = std::lcm(n, q.D.get_ui());
            if (n > 0xffffffffu)
                throw InconclusiveError("field_from_data: level exceeds 32 bits", std::to_string(n));
            active.push_back(std::move(q));
        }
    const std::uint32_t level = checked_level(n, opts);
    std::vector<std::vector<int>> tables;
    for (const auto& q : active)
        tables.push_back(character_table(q));
    std::vector<std::uint32_t> gens;
    for (std::uint32_t a : unit_residues(level, opts)) {
        if (a % m != 1 % m)
            continue;
        bool fixed = true;
        for (std::size_t i = 0; i < active.size() && fixed; ++i)
            fixed = tables[i][a % tables[i].size()] == 1;
        if (fixed)
            gens.push_back(a);
    }
    // gens is already the whole subgroup
    AbelianField k = AbelianField::from_generators(level, gens, opts);
    return k.canonicalize();
}

// The intersection lies in Q(zeta_g), g = gcd of the levels; its subgroup
// there is the join of the two images.
AbelianField intersect(const AbelianField& a, const AbelianField& b, const DivfieldOptions& opts)
{
    const std::uint32_t g = std::gcd(a.level(), b.level());
    std::vector<std::uint32_t> gens;
    for (const AbelianField* k : {&a, &b})
        for (std::uint32_t h : k->generators())
            gens.push_back(h % g);
    return AbelianField::from_generators(g, gens, opts).canonicalize();
}

AbelianField division_intersection(std::uint32_t m1, std::uint32_t m2, const std::vector<BigInt>& deltas_a,
                                   const std::vector<BigInt>& deltas_b, const DivfieldOptions& opts)
{
    return intersect(field_from_data(m1, deltas_a, opts), field_from_data(m2, deltas_b, opts), opts);
}

FieldDescription describe(const AbelianField& field)
{
    const AbelianField k = field.canonical() ? field : field.canonicalize();
    const std::uint32_t n = k.level();
    FieldDescription d;
    d.degree = k.degree();
    d.conductor = n;
    for (std::uint32_t c = 1; c <= n; ++c)
        if (n % c == 0 && std::all_of(k.subgroup().begin(), k.subgroup().end(),
                                      [&](std::uint32_t h) { return h % c == 1 % c; }))
            d.cyclotomic = c;
    if (d.cyclotomic % 4 == 2)
        d.cyclotomic /= 2;

    // squarefree d != 1 with conductor dividing n and character trivial on H
    std::vector<std::uint32_t> odd;
    for (std::uint32_t p : prime_divisors(n))
        if (p != 2)
            odd.push_back(p);
    std::vector<BigInt> candidates;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << odd.size()); ++mask) {
        BigInt core = 1;
        for (std::size_t i = 0; i < odd.size(); ++i)
            if (mask >> i & 1)
                core *= odd[i];
        for (int two = 1; two <= 2; ++two)
            for (int sign : {1, -1}) {
                const BigInt c = core * two * sign;
                if (c != 1)
                    candidates.push_back(c);
            }
    }
    std::sort(candidates.begin(), candidates.end(), [](const BigInt& x, const BigInt& y) {
        return abs(x) != abs(y) ? abs(x) < abs(y) : x > y;
    });
    std::vector<std::uint32_t> generated;
    for (std::uint32_t a : unit_residues(n))
        if (a % d.cyclotomic == 1 % d.cyclotomic)
            generated.push_back(a);
    for (const auto& c : candidates) {
        const QuadDatum q = quad_datum(c);
        if (n % q.D.get_ui() != 0)
            continue;
        const auto table = character_table(q);
        const auto chi = [&](std::uint32_t a) { return table[a % table.size()]; };
        if (!std::all_of(k.subgroup().begin(), k.subgroup().end(), [&](std::uint32_t h) { return chi(h) == 1; }))
            continue;
        QuadraticSubfield s;
        s.d = c;
        s.in_cyclotomic = d.cyclotomic % q.D.get_ui() == 0;
        d.quadratics.push_back(s);
        std::erase_if(generated, [&](std::uint32_t a) { return chi(a) != 1; });
    }
    d.generated = generated.size() == k.subgroup().size();
    return d;
}

Json to_json(const AbelianField& k)
{
    return Json{{"conductor", k.level()},
                {"degree", k.degree()},
                {"canonical", k.canonical()},
                {"subgroup_order", k.subgroup().size()},
                {"subgroup_generators", k.generators()}};
}

Json to_json(const FieldDescription& d)
{
    Json quads = Json::array();
    for (const auto& q : d.quadratics)
        quads.push_back(Json{{"d", q.d.get_str()}, {"in_cyclotomic", q.in_cyclotomic}});
    return Json{{"degree", d.degree},
                {"conductor", d.conductor},
                {"cyclotomic", d.cyclotomic},
                {"quadratic_subfields", std::move(quads)},
                {"generated_by_listed", d.generated}};
}

} // namespace jacmax
