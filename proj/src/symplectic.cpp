#include "jacmax/symplectic.hpp"

#include "jacmax/errors.hpp"
#include "jacmax/primes.hpp"

#include <numeric>
#include <set>

namespace jacmax {

std::vector<ModMatrix> sp_generators(unsigned g, std::uint32_t m)
{
    if (g == 0)
        throw DomainError("sp_generators: g = 0");
    std::vector<ModMatrix> out;
    for (unsigned i = 0; i < g; ++i)
        for (unsigned j = i; j < g; ++j)
            for (int lower = 0; lower < 2; ++lower) {
                ModMatrix e = ModMatrix::identity(m, 2 * g);
                const unsigned r = lower ? g : 0, c = lower ? 0 : g;
                e.set(r + i, c + j, 1);
                e.set(r + j, c + i, 1);
                out.push_back(std::move(e));
            }
    return out;
}

ModMatrix similitude_scaling(unsigned g, std::uint32_t m, std::uint64_t c)
{
    ModMatrix a = ModMatrix::identity(m, 2 * g);
    for (unsigned i = 0; i < g; ++i)
        a.set(i, i, static_cast<std::int64_t>(c % m));
    return a;
}

std::vector<std::uint32_t> unit_group_generators(std::uint32_t m)
{
    std::vector<std::uint32_t> gens;
    std::set<std::uint64_t> sub{1 % m};
    const std::uint64_t target = euler_phi(m);
    for (std::uint64_t c = 2; c < m && sub.size() < target; ++c) {
        if (std::gcd(c, std::uint64_t{m}) != 1 || sub.count(c))
            continue;
        gens.push_back(static_cast<std::uint32_t>(c));
        std::vector<std::uint64_t> frontier(sub.begin(), sub.end());
        while (!frontier.empty()) {
            std::vector<std::uint64_t> next;
            for (std::uint64_t x : frontier)
                for (std::uint32_t s : gens) {
                    const std::uint64_t y = x * s % m;
                    if (sub.insert(y).second)
                        next.push_back(y);
                }
            frontier = std::move(next);
        }
    }
    return gens;
}

std::vector<ModMatrix> gsp_generators(unsigned g, std::uint32_t m)
{
    auto out = sp_generators(g, m);
    for (std::uint32_t c : unit_group_generators(m))
        out.push_back(similitude_scaling(g, m, c));
    return out;
}

BigInt sp_order(unsigned g, std::uint64_t m)
{
    BigInt r = 1;
    for (auto [p, e] : factor_u64(m)) {
        const BigInt q(std::to_string(p));
        BigInt f;
        mpz_pow_ui(f.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(g) * g);
        for (unsigned i = 1; i <= g; ++i) {
            BigInt t;
            mpz_pow_ui(t.get_mpz_t(), q.get_mpz_t(), 2 * i);
            f *= t - 1;
        }
        BigInt lift;
        mpz_pow_ui(lift.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(e - 1) * (2 * g * g + g));
        r *= f * lift;
    }
    return r;
}

BigInt gsp_order(unsigned g, std::uint64_t m)
{
    return sp_order(g, m) * BigInt(std::to_string(euler_phi(m)));
}

FiniteMatrixGroup symplectic_group(unsigned g, std::uint32_t m, GroupOptions options)
{
    if (!options.order_bound)
        options.order_bound = sp_order(g, m);
    return FiniteMatrixGroup(m, 2 * g, sp_generators(g, m), std::move(options));
}

FiniteMatrixGroup general_symplectic_group(unsigned g, std::uint32_t m, GroupOptions options)
{
    if (!options.order_bound)
        options.order_bound = gsp_order(g, m);
    return FiniteMatrixGroup(m, 2 * g, gsp_generators(g, m), std::move(options));
}

ModMatrix embed_block(const ModMatrix& a, const std::vector<unsigned>& genera, std::size_t block)
{
    std::vector<ModMatrix> blocks;
    for (std::size_t i = 0; i < genera.size(); ++i)
        blocks.push_back(i == block ? a : ModMatrix::identity(a.modulus(), 2 * genera[i]));
    return block_diagonal(blocks);
}

FiniteMatrixGroup build_gsp_delta(const std::vector<unsigned>& genera, std::uint32_t ell, GroupOptions options)
{
    if (genera.empty())
        throw DomainError("build_gsp_delta: no blocks");
    if (!is_prime_u64(ell))
        throw DomainError("build_gsp_delta: modulus must be prime");
    std::vector<ModMatrix> gens;
    unsigned dim = 0;
    for (std::size_t b = 0; b < genera.size(); ++b) {
        dim += 2 * genera[b];
        for (const auto& s : sp_generators(genera[b], ell))
            gens.push_back(embed_block(s, genera, b));
    }
    for (std::uint32_t c : unit_group_generators(ell)) {
        std::vector<ModMatrix> blocks;
        for (unsigned gi : genera)
            blocks.push_back(similitude_scaling(gi, ell, c));
        gens.push_back(block_diagonal(blocks));
    }
    if (!options.order_bound)
        options.order_bound = gsp_delta_order(genera, ell);
    return FiniteMatrixGroup(ell, dim, std::move(gens), std::move(options));
}

BigInt gsp_delta_order(const std::vector<unsigned>& genera, std::uint32_t ell)
{
    BigInt r(std::to_string(ell - 1));
    for (unsigned gi : genera)
        r *= sp_order(gi, ell);
    return r;
}

ModMatrix crt_combine(const ModMatrix& a, const ModMatrix& b)
{
    const std::uint64_t ma = a.modulus(), mb = b.modulus();
    if (a.dim() != b.dim() || std::gcd(ma, mb) != 1)
        throw DomainError("crt_combine: needs equal dimensions and coprime moduli");
    const std::uint64_t m = ma * mb;
    if (m >> 32)
        throw DomainError("crt_combine: combined modulus too large");
    const std::uint64_t t = invmod_u64(ma % mb, mb);
    ModMatrix r(static_cast<std::uint32_t>(m), a.dim());
    for (unsigned i = 0; i < a.dim(); ++i)
        for (unsigned j = 0; j < a.dim(); ++j) {
            const std::uint64_t x = a(i, j), y = b(i, j);
            const std::uint64_t k = (y + mb - x % mb) % mb * t % mb;
            r.set(i, j, static_cast<std::int64_t>(x + ma * k));
        }
    return r;
}

} // namespace jacmax
