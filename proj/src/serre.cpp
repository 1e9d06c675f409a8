#include "jacmax/serre.hpp"

#include "jacmax/embedding.hpp"
#include "jacmax/errors.hpp"
#include "jacmax/group_suites.hpp"
#include "jacmax/primes.hpp"
#include "jacmax/symplectic.hpp"

#include <algorithm>

namespace jacmax {

namespace {

// M = 2^a r with r odd
std::pair<unsigned, std::uint32_t> split_two(std::uint64_t m)
{
    unsigned a = 0;
    while (m % 2 == 0) {
        m /= 2;
        ++a;
    }
    return {a, static_cast<std::uint32_t>(m)};
}

std::vector<ModMatrix> two_part_generators(unsigned g, unsigned a)
{
    const std::uint32_t q = 1u << a;
    auto gens = lift_permutations(symmetric_generators(2 * g + 2), g, a, nullptr);
    if (a == 1)
        return gens;
    // kernel of GSp(Z/2^a) -> Sp(F_2)
    std::vector<ModMatrix> seeds;
    for (const auto& e : sp_generators(g, q))
        seeds.push_back(e * e);
    seeds.push_back(ModMatrix::scalar(q, 2 * g, q - 1));
    for (std::uint32_t c : unit_group_generators(q))
        seeds.push_back(similitude_scaling(g, q, c));
    const auto gsp = general_symplectic_group(g, q);
    GroupOptions o;
    BigInt kernel_order;
    mpz_ui_pow_ui(kernel_order.get_mpz_t(), 2, static_cast<unsigned long>(a - 1) * (2 * g * g + g + 1));
    o.order_bound = kernel_order;
    const auto k = normal_closure(gsp, seeds, o);
    if (k.order() != kernel_order)
        throw ConsistencyError("serre: reduction kernel has unexpected order");
    for (const auto& x : k.generators())
        gens.push_back(x);
    return gens;
}

} // namespace

std::vector<ModMatrix> serre_ambient_generators(unsigned g, std::uint32_t m)
{
    if (g < 2)
        throw DomainError("serre: g >= 2 required");
    if (m < 2)
        throw DomainError("serre: modulus below 2");
    const auto [a, r] = split_two(m);
    if (a == 0)
        return gsp_generators(g, m);
    const std::uint32_t q = 1u << a;
    const auto two = two_part_generators(g, a);
    if (r == 1)
        return two;
    std::vector<ModMatrix> out;
    for (const auto& x : two)
        out.push_back(crt_combine(x, ModMatrix::identity(r, 2 * g)));
    for (const auto& y : gsp_generators(g, r))
        out.push_back(crt_combine(ModMatrix::identity(q, 2 * g), y));
    return out;
}

BigInt serre_ambient_order(unsigned g, std::uint64_t m)
{
    const auto [a, r] = split_two(m);
    if (a == 0)
        return gsp_order(g, m);
    BigInt s;
    mpz_fac_ui(s.get_mpz_t(), 2 * g + 2);
    BigInt k;
    mpz_ui_pow_ui(k.get_mpz_t(), 2, static_cast<unsigned long>(a - 1) * (2 * g * g + g + 1));
    return s * k * (r == 1 ? BigInt(1) : gsp_order(g, r));
}

int serre_character(const ModMatrix& a, const QuadDatum& q, unsigned g)
{
    const auto lambda = gsp_membership(a);
    if (!lambda)
        throw DomainError("serre_character: matrix is not in GSp");
    return q.character(BigInt(std::to_string(*lambda))) * sign_character(a.reduced(2), g);
}

SerreResult serre_subgroup(unsigned g, const BigInt& delta, std::size_t cap)
{
    SerreResult res;
    res.g = g;
    res.delta = delta;
    res.datum = quad_datum(delta);
    if (!res.datum.M.fits_uint_p() || res.datum.M > 65535)
        throw InconclusiveError("serre_subgroup: modulus too large", "M = " + res.datum.M.get_str());
    const std::uint32_t m = static_cast<std::uint32_t>(res.datum.M.get_ui());
    res.modulus = m;

    double points = 0;
    for (auto [p, e] : factor_u64(m)) {
        double q = 1;
        for (unsigned i = 0; i < e; ++i)
            q *= static_cast<double>(p);
        double pts = 1;
        for (unsigned i = 0; i < 2 * g; ++i)
            pts *= q;
        points += pts;
    }
    if (points > static_cast<double>(cap))
        throw InconclusiveError("serre_subgroup: group exceeds the stabilizer-chain budget",
                                "|S(M)| = " + serre_ambient_order(g, m).get_str() + ", points ~ " +
                                    std::to_string(static_cast<std::uint64_t>(points)));

    res.ambient_order = serre_ambient_order(g, m);
    GroupOptions ao;
    ao.order_bound = res.ambient_order;
    const FiniteMatrixGroup ambient(m, 2 * g, serre_ambient_generators(g, m), ao);
    if (ambient.order() != res.ambient_order)
        throw ConsistencyError("serre_subgroup: ambient generators fall short of S(M)");

    const auto& gens = ambient.generators();
    std::vector<int> chi;
    for (const auto& x : gens)
        chi.push_back(serre_character(x, res.datum, g));
    std::vector<ModMatrix> kgens;
    const auto s_it = std::find(chi.begin(), chi.end(), -1);
    if (s_it == chi.end()) {
        kgens = gens;
    } else {
        const ModMatrix s = gens[static_cast<std::size_t>(s_it - chi.begin())];
        const ModMatrix s_inv = s.inverse();
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (chi[i] == 1) {
                kgens.push_back(gens[i]);
                kgens.push_back(s * gens[i] * s_inv);
            } else {
                kgens.push_back(gens[i] * s_inv);
                kgens.push_back(s * gens[i]);
            }
        }
    }
    for (const auto& x : kgens)
        if (serre_character(x, res.datum, g) != 1)
            throw ConsistencyError("serre_subgroup: kernel generator outside the kernel");
    GroupOptions ko;
    ko.order_bound = res.ambient_order;
    res.kernel = FiniteMatrixGroup(m, 2 * g, kgens, ko);
    res.kernel_order = res.kernel.order();
    if (res.ambient_order % res.kernel_order != 0)
        throw ConsistencyError("serre_subgroup: kernel order does not divide the ambient order");
    res.index = res.ambient_order / res.kernel_order;

    for (std::uint32_t d = 2; d < m; ++d) {
        if (m % d != 0)
            continue;
        std::vector<ModMatrix> red;
        for (const auto& x : kgens)
            red.push_back(x.reduced(d));
        GroupOptions o;
        o.order_bound = serre_ambient_order(g, d);
        const BigInt ord = FiniteMatrixGroup(d, 2 * g, red, o).order();
        res.divisor_surjective.emplace_back(d, ord == *o.order_bound);
    }
    return res;
}

Json to_json(const SerreResult& r)
{
    Json div = Json::array();
    for (auto [d, ok] : r.divisor_surjective)
        div.push_back(Json{{"d", d}, {"surjective", ok}});
    Json gens = Json::array();
    for (const auto& x : r.kernel.generators())
        gens.push_back(to_json(x));
    return Json{{"g", r.g},
                {"delta", r.delta.get_str()},
                {"delta_prime", r.datum.delta_prime.get_str()},
                {"D", r.datum.D.get_str()},
                {"M", r.modulus},
                {"ambient_order", r.ambient_order.get_str()},
                {"kernel_order", r.kernel_order.get_str()},
                {"index", r.index.get_str()},
                {"divisors", std::move(div)},
                {"kernel_generators", std::move(gens)}};
}

} // namespace jacmax
