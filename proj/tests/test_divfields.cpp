#include "doctest.h"

#include "jacmax/divfields.hpp"
#include "jacmax/errors.hpp"
#include "jacmax/primes.hpp"
#include "lattice_oracle.hpp"

#include <map>
#include <numeric>
#include <random>
#include <set>

using namespace jacmax;
using namespace jacmax::oracle;

namespace {

AbelianField field_of(const Sub& h, std::uint32_t n)
{
    return AbelianField::from_generators(n, std::vector<std::uint32_t>(h.begin(), h.end()));
}

Sub as_set(const AbelianField& k) { return Sub(k.subgroup().begin(), k.subgroup().end()); }

} // namespace

TEST_CASE("quad_datum")
{
    const auto q5 = quad_datum(BigInt(5));
    CHECK(q5.delta_prime == 5);
    CHECK(q5.D == 5);
    CHECK(q5.M == 10);
    const auto q12 = quad_datum(BigInt(12));
    CHECK(q12.delta_prime == 3);
    CHECK(q12.D == 12);
    CHECK(q12.M == 12);
    const auto qm4 = quad_datum(BigInt(-4));
    CHECK(qm4.delta_prime == -1);
    CHECK(qm4.D == 4);
    CHECK(qm4.M == 4);
    CHECK_THROWS_AS(quad_datum(BigInt(0)), DomainError);

    // the character has period D and no smaller period on units
    for (int d = -60; d <= 60; ++d) {
        if (d == 0 || d == 1)
            continue;
        const auto q = quad_datum(BigInt(d));
        if (q.delta_prime != d)
            continue;
        const unsigned big = static_cast<unsigned>(q.D.get_ui());
        const BigInt fund = mpz_fdiv_ui(q.delta_prime.get_mpz_t(), 4) == 1 ? q.delta_prime : BigInt(4 * d);
        auto chi = [&](unsigned a) { return kronecker_symbol(fund, BigInt(a)); };
        bool nontrivial = false;
        for (unsigned a = 1; a < 3 * big; ++a)
            if (std::gcd(a, big) == 1) {
                CHECK(chi(a) == chi(a + big));
                nontrivial = nontrivial || chi(a) == -1;
            }
        CHECK(nontrivial);
        for (unsigned e = 1; e < big; ++e) {
            if (big % e != 0)
                continue;
            bool periodic = true;
            for (unsigned a = 1; a < big && periodic; ++a)
                for (unsigned b = a % e; b < big && periodic; b += e)
                    if (std::gcd(a, big) == 1 && std::gcd(b, big) == 1)
                        periodic = chi(a) == chi(b);
            CAPTURE(d);
            CAPTURE(e);
            CHECK_FALSE(periodic);
        }
    }
}

TEST_CASE("field_from_data examples")
{
    for (auto deltas : std::vector<std::vector<BigInt>>{{}, {BigInt(5)}, {BigInt(-7), BigInt(12)}}) {
        const auto k = field_from_data(3, deltas);
        CHECK(k.level() == 3);
        CHECK(k.degree() == 2);
    }
    const auto k4 = field_from_data(4, {BigInt(5)});
    CHECK(k4.level() == 20);
    CHECK(k4.degree() == 4);
    CHECK(as_set(k4) == Sub{1, 9});
    const auto k2 = field_from_data(2, {BigInt(5)});
    CHECK(k2.level() == 5);
    CHECK(k2.degree() == 2);
    CHECK(as_set(k2) == Sub{1, 4});
    CHECK(field_from_data(2, {}) == AbelianField::rationals());
    CHECK(field_from_data(1, {BigInt(5)}) == AbelianField::rationals());
    // a square discriminant adds nothing
    CHECK(field_from_data(4, {BigInt(49)}) == AbelianField::cyclotomic(4));
    // negative discriminants through the sign of the character
    const auto km = field_from_data(2, {BigInt(-3)});
    CHECK(km.level() == 3);
    CHECK(km == AbelianField::cyclotomic(3));

    for (std::uint32_t m = 1; m < 100; m += 2) {
        const auto k = field_from_data(m, {BigInt(5), BigInt(-11)});
        CHECK(k.degree() == euler_phi(m));
        CHECK(k == AbelianField::cyclotomic(m));
    }
    CHECK_THROWS_AS(field_from_data(0, {}), DomainError);
    DivfieldOptions tiny;
    tiny.cap = 100;
    CHECK_THROWS_AS(field_from_data(4, {BigInt(1009)}, tiny), InconclusiveError);
}

TEST_CASE("intersect matches the subgroup lattice")
{
    std::mt19937_64 rng(120);
    std::vector<std::uint32_t> levels;
    for (std::uint32_t n = 3; n <= 120; ++n)
        levels.push_back(n);
    int checked = 0;
    while (checked < 50) {
        const std::uint32_t l = levels[rng() % levels.size()];
        std::vector<std::uint32_t> divs;
        for (std::uint32_t d = 1; d <= l; ++d)
            if (l % d == 0)
                divs.push_back(d);
        const std::uint32_t n1 = divs[rng() % divs.size()], n2 = divs[rng() % divs.size()];
        const auto& lat1 = lattice(n1);
        const auto& lat2 = lattice(n2);
        const Sub h1 = lat1[rng() % lat1.size()], h2 = lat2[rng() % lat2.size()];
        const Oracle o = intersection_oracle(h1, n1, h2, n2);
        const auto k = intersect(field_of(h1, n1), field_of(h2, n2));
        CAPTURE(n1);
        CAPTURE(n2);
        CHECK(k.canonical());
        CHECK(k.level() == o.conductor);
        CHECK(as_set(k) == o.h);
        ++checked;
    }

    // Q(i, sqrt 5) against Q(zeta_3, sqrt 5): lattice of (Z/60)^x
    const auto a = field_from_data(4, {BigInt(5)}), b = field_from_data(6, {BigInt(5)});
    CHECK(b.level() == 15);
    const auto k = intersect(a, b);
    const Oracle o = intersection_oracle(as_set(a), a.level(), as_set(b), b.level());
    CHECK(k.level() == o.conductor);
    CHECK(as_set(k) == o.h);
    CHECK(k == field_from_data(2, {BigInt(5)}));
}

TEST_CASE("conductor minimality")
{
    for (std::uint32_t n : {8u, 12u, 15u, 20u, 24u, 36u, 40u, 60u, 84u, 120u})
        for (const auto& h : lattice(n)) {
            const auto k = field_of(h, n).canonicalize();
            const Oracle o = canonical_oracle(h, n);
            CHECK(k.level() == o.conductor);
            CHECK(as_set(k) == o.h);
            for (std::uint32_t d = 1; d <= n; ++d)
                if (n % d == 0 && representable(h, n, d))
                    CHECK(d % k.level() == 0);
            // lifting back gives the original subgroup
            CHECK(as_set(k.lift(n)) == h);
        }
}

TEST_CASE("lattice laws")
{
    std::mt19937_64 rng(9);
    std::vector<AbelianField> pool;
    for (std::uint32_t n : {12u, 20u, 24u, 30u, 40u})
        for (const auto& h : lattice(n))
            if (rng() % 3 == 0)
                pool.push_back(field_of(h, n).canonicalize());
    REQUIRE(pool.size() > 20);
    const AbelianField q = AbelianField::rationals();
    for (int t = 0; t < 200; ++t) {
        const auto& a = pool[rng() % pool.size()];
        const auto& b = pool[rng() % pool.size()];
        const auto& c = pool[rng() % pool.size()];
        CHECK(intersect(a, b) == intersect(b, a));
        CHECK(intersect(intersect(a, b), c) == intersect(a, intersect(b, c)));
        CHECK(intersect(a, a) == a);
        CHECK(intersect(a, q) == q);
        // Q(zeta_N) is neutral for fields inside it
        const auto z = AbelianField::cyclotomic(a.level());
        CHECK(intersect(a, z) == a);
        CHECK(intersect(a, b).degree() <= std::min(a.degree(), b.degree()));
    }
}

TEST_CASE("division field intersections")
{
    // odd levels: cyclotomic on both sides
    for (auto [m1, m2] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 9}, {15, 21}, {5, 7}, {45, 75}})
        CHECK(division_intersection(m1, m2, {BigInt(5)}, {BigInt(13)}) ==
              AbelianField::cyclotomic(std::gcd(m1, m2)));
    CHECK(division_intersection(2, 2, {BigInt(5)}, {BigInt(5)}) == field_from_data(2, {BigInt(5)}));

    // levels coprime to independent discriminants: the intersection is Q(zeta_gcd)
    const std::vector<long> pool{5, 13, 17, 29, 37, 41, -3, -7, -11, -19, -23, -31, -43, -47, 65, -15};
    std::mt19937_64 rng(20);
    int sets = 0;
    while (sets < 20) {
        const std::uint32_t m1 = 2 + static_cast<std::uint32_t>(rng() % 23), m2 = 2 + static_cast<std::uint32_t>(rng() % 23);
        std::vector<BigInt> a, b;
        BigInt used = 1;
        bool ok = true;
        for (std::vector<BigInt>* side : {&a, &b})
            for (int k = 0; k < 1 + static_cast<int>(rng() % 2); ++k) {
                const long d = pool[rng() % pool.size()];
                if (std::gcd(static_cast<unsigned long>(std::labs(d)), static_cast<unsigned long>(m1) * m2) != 1 ||
                    gcd(used, BigInt(d)) != 1)
                    ok = false;
                used *= d;
                side->push_back(BigInt(d));
            }
        if (!ok)
            continue;
        CAPTURE(m1);
        CAPTURE(m2);
        CHECK(division_intersection(m1, m2, a, b) == AbelianField::cyclotomic(std::gcd(m1, m2)));
        ++sets;
    }
    // without independence the display can fail: sqrt(-3) lies in both fields
    const auto k = division_intersection(4, 6, {BigInt(3)}, {BigInt(7)});
    CHECK(k == AbelianField::cyclotomic(3));
}

TEST_CASE("describe")
{
    const auto z5 = describe(AbelianField::cyclotomic(5));
    CHECK(z5.degree == 4);
    CHECK(z5.conductor == 5);
    CHECK(z5.cyclotomic == 5);
    REQUIRE(z5.quadratics.size() == 1);
    CHECK(z5.quadratics[0].d == 5);
    CHECK(z5.quadratics[0].in_cyclotomic);
    CHECK(z5.generated);

    const auto q = describe(AbelianField::rationals());
    CHECK(q.degree == 1);
    CHECK(q.conductor == 1);
    CHECK(q.quadratics.empty());

    const auto k = AbelianField::from_generators(24, {23});
    const auto d = describe(k);
    CHECK(d.degree == 4);
    CHECK(d.conductor == 24);
    CHECK(d.cyclotomic == 1);
    std::vector<BigInt> ds;
    for (const auto& s : d.quadratics)
        ds.push_back(s.d);
    CHECK(ds == std::vector<BigInt>{BigInt(2), BigInt(3), BigInt(6)});
    CHECK(d.generated);

    // Q(zeta_8) has c = 8 and quadratic subfields -1, 2, -2
    const auto z8 = describe(AbelianField::cyclotomic(8));
    CHECK(z8.cyclotomic == 8);
    CHECK(z8.quadratics.size() == 3);

    // a cyclic quartic field is not generated by its quadratic subfield
    const auto quartic = describe(AbelianField::from_generators(13, {3}));
    CHECK(quartic.degree == 4);
    CHECK(quartic.quadratics.size() == 1);
    CHECK_FALSE(quartic.generated);

    const Json j = to_json(d);
    CHECK(j["degree"] == 4);
    CHECK(j["quadratic_subfields"].size() == 3);
    CHECK(to_json(k.canonicalize())["conductor"] == 24);
}
