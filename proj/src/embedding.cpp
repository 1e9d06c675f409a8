#include "jacmax/embedding.hpp"

#include "jacmax/errors.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace jacmax {

namespace {

using Mask = std::uint64_t;

int pair(Mask x, Mask y) { return std::popcount(x & y) & 1; }

Mask all_ones(unsigned n) { return (Mask{1} << n) - 1; }

// representative of x modulo the all-ones vector
Mask normalize(Mask x, unsigned n) { return (x >> (n - 1)) & 1 ? x ^ all_ones(n) : x; }

Mask permute(Mask x, const Permutation& s)
{
    Mask y = 0;
    for (unsigned i = 0; i < s.size(); ++i)
        if ((x >> i) & 1)
            y |= Mask{1} << s[i];
    return y;
}

void check_genus(unsigned g)
{
    if (g < 2)
        throw DomainError("embedding: g >= 2 required");
    if (2 * g + 2 > 62)
        throw DomainError("embedding: g too large");
}

// coordinates (alpha, beta) of v in the basis (a, b)
std::vector<std::int64_t> coordinates(Mask v, const std::vector<Mask>& basis, unsigned g)
{
    std::vector<std::int64_t> c(2 * g);
    for (unsigned k = 0; k < g; ++k) {
        c[k] = pair(v, basis[g + k]);
        c[g + k] = pair(v, basis[k]);
    }
    return c;
}

} // namespace

Permutation compose(const Permutation& a, const Permutation& b)
{
    if (a.size() != b.size())
        throw DomainError("compose: size mismatch");
    Permutation r(a.size());
    for (unsigned i = 0; i < a.size(); ++i)
        r[i] = a[b[i]];
    return r;
}

Permutation inverse(const Permutation& a)
{
    Permutation r(a.size());
    for (unsigned i = 0; i < a.size(); ++i)
        r[a[i]] = i;
    return r;
}

bool is_permutation(const Permutation& a)
{
    std::vector<bool> seen(a.size(), false);
    for (unsigned x : a) {
        if (x >= a.size() || seen[x])
            return false;
        seen[x] = true;
    }
    return true;
}

int permutation_sign(const Permutation& a)
{
    std::vector<bool> seen(a.size(), false);
    std::size_t cycles = 0;
    for (unsigned i = 0; i < a.size(); ++i) {
        if (seen[i])
            continue;
        ++cycles;
        for (unsigned j = i; !seen[j]; j = a[j])
            seen[j] = true;
    }
    return (a.size() - cycles) % 2 ? -1 : 1;
}

std::vector<Permutation> symmetric_generators(unsigned n)
{
    Permutation t(n), c(n);
    for (unsigned i = 0; i < n; ++i) {
        t[i] = i;
        c[i] = (i + 1) % n;
    }
    std::swap(t[0], t[1]);
    return {t, c};
}

std::vector<Permutation> alternating_generators(unsigned n)
{
    std::vector<Permutation> out;
    for (unsigned k = 2; k < n; ++k) {
        Permutation p(n);
        for (unsigned i = 0; i < n; ++i)
            p[i] = i;
        p[0] = 1;
        p[1] = k;
        p[k] = 0;
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<std::uint64_t> embedding_basis(unsigned g)
{
    check_genus(g);
    const unsigned n = 2 * g + 2;
    std::vector<Mask> rem;
    for (unsigned j = 1; j < n; ++j)
        rem.push_back(normalize(Mask{1} | (Mask{1} << j), n));
    std::vector<Mask> a, b;
    while (a.size() < g) {
        rem.erase(std::remove(rem.begin(), rem.end(), Mask{0}), rem.end());
        if (rem.empty())
            throw ConsistencyError("embedding_basis: candidates exhausted");
        const Mask x = rem.front();
        auto it = std::find_if(rem.begin() + 1, rem.end(), [&](Mask y) { return pair(x, y) == 1; });
        if (it == rem.end())
            throw ConsistencyError("embedding_basis: degenerate pairing");
        const Mask y = *it;
        rem.erase(it);
        rem.erase(rem.begin());
        a.push_back(x);
        b.push_back(y);
        for (auto& z : rem)
            z = normalize(z ^ (pair(z, y) ? x : 0) ^ (pair(z, x) ? y : 0), n);
    }
    std::vector<std::uint64_t> basis(a.begin(), a.end());
    basis.insert(basis.end(), b.begin(), b.end());
    return basis;
}

ModMatrix embed_permutation(const Permutation& sigma, unsigned g)
{
    check_genus(g);
    if (sigma.size() != 2 * g + 2 || !is_permutation(sigma))
        throw DomainError("embed_permutation: not a permutation of 2g+2 points");
    const auto basis = embedding_basis(g);
    ModMatrix m(2, 2 * g);
    for (unsigned col = 0; col < 2 * g; ++col) {
        const auto c = coordinates(permute(basis[col], sigma), basis, g);
        for (unsigned row = 0; row < 2 * g; ++row)
            m.set(row, col, c[row]);
    }
    return m;
}

Permutation recover_permutation(const ModMatrix& m, unsigned g)
{
    check_genus(g);
    if (m.modulus() != 2 || m.dim() != 2 * g)
        throw DomainError("sign_character: expected a 2g x 2g matrix over F_2");
    const unsigned n = 2 * g + 2;
    const auto basis = embedding_basis(g);
    // class of e_i + e_j -> {i, j}
    std::map<std::vector<ModMatrix::Entry>, std::pair<unsigned, unsigned>> classes;
    auto coords = [&](unsigned i, unsigned j) {
        const auto c = coordinates((Mask{1} << i) | (Mask{1} << j), basis, g);
        return std::vector<ModMatrix::Entry>(c.begin(), c.end());
    };
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j)
            classes[coords(i, j)] = {i, j};
    auto image = [&](unsigned i, unsigned j) {
        const auto it = classes.find(m.apply(coords(i, j)));
        if (it == classes.end())
            throw DomainError("sign_character: matrix is not in the image of the embedding");
        return it->second;
    };
    Permutation s(n);
    for (unsigned i = 0; i < n; ++i) {
        const unsigned j = (i + 1) % n, k = (i + 2) % n;
        const auto p = image(std::min(i, j), std::max(i, j));
        const auto q = image(std::min(i, k), std::max(i, k));
        if (p.first == q.first || p.first == q.second)
            s[i] = p.first;
        else if (p.second == q.first || p.second == q.second)
            s[i] = p.second;
        else
            throw DomainError("sign_character: matrix is not in the image of the embedding");
    }
    if (!is_permutation(s) || !(embed_permutation(s, g) == m))
        throw DomainError("sign_character: matrix is not in the image of the embedding");
    return s;
}

int sign_character(const ModMatrix& m, unsigned g) { return permutation_sign(recover_permutation(m, g)); }

FiniteMatrixGroup embedded_group(const std::vector<Permutation>& gens, unsigned g, GroupOptions options)
{
    std::vector<ModMatrix> mats;
    for (const auto& p : gens)
        mats.push_back(embed_permutation(p, g));
    return FiniteMatrixGroup(2, 2 * g, std::move(mats), std::move(options));
}

} // namespace jacmax
