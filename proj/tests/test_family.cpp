#include "doctest.h"

#include "jacmax/errors.hpp"
#include "jacmax/family.hpp"
#include "jacmax/primes.hpp"
#include "reference_curves.hpp"

#include <random>
#include <set>

using namespace jacmax;

namespace {

const FamilySpec& example_family()
{
    static const FamilySpec s = build_family(testdata::f3(), testdata::family_modulus());
    return s;
}

FamilyChain table_chain()
{
    FamilyChain c;
    for (std::size_t i = 0; i < 10; ++i)
        c.pairs.push_back({testdata::table_t()[i], static_cast<std::uint64_t>(testdata::table_ell()[i])});
    return c;
}

unsigned long divide_out(BigInt n, std::uint64_t p)
{
    unsigned long k = 0;
    while (n != 0 && mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        ++k;
    }
    return k;
}

} // namespace

TEST_CASE("build_family")
{
    const auto& s = example_family();
    CHECK(s.d != 0);
    CHECK(s.delta_t.degree() <= 26);
    CHECK(s.delta_t.degree() == 13);
    CHECK(s.hyperelliptic_model());
    // interpolated form agrees with direct discriminants off the nodes
    for (long t : {0L, 21L, 40L, -17L, 1000L})
        CHECK(s.delta_t.eval(t) == s.delta_at(t));
    CHECK(mpz_divisible_ui_p(s.d.get_mpz_t(), 3));
    CHECK_FALSE(mpz_divisible_ui_p(s.d.get_mpz_t(), 89));

    const auto q = build_family(IntPoly{0, 1, 1}, 1);
    CHECK(q.delta_t == IntPoly{1, -4});
    CHECK(q.d == 1);
    CHECK_FALSE(q.hyperelliptic_model());

    CHECK_THROWS_AS(build_family(IntPoly{1, 2, 1}, 1), DomainError);   // f not separable
    CHECK_THROWS_AS(build_family(testdata::f1(), 0), DomainError);

    SUBCASE("a repeated root of delta(t) is rejected")
    {
        // disc(x^3 + a x + c + N t) = -4a^3 - 27 (c + N t)^2, a square in t exactly when a = 0
        int rejected = 0, accepted = 0;
        for (long a = -3; a <= 3; ++a)
            for (long c = 1; c <= 3; ++c)
                for (long N : {1L, 6L}) {
                    const IntPoly f{c, a, 0, 1};
                    if (4 * a * a * a + 27 * c * c == 0)
                        continue;
                    if (a == 0) {
                        CHECK_THROWS_AS(build_family(f, N), DomainError);
                        ++rejected;
                    } else {
                        CHECK(build_family(f, N).d != 0);
                        ++accepted;
                    }
                }
        CHECK(rejected > 0);
        CHECK(accepted > 0);
    }
}

TEST_CASE("verify_chain on the published table")
{
    const auto& s = example_family();
    const auto tab = verify_chain(s, table_chain());
    CHECK(tab.all_pass);
    CHECK(tab.passed() == 100);
    for (std::size_t i = 0; i < 10; ++i)
        for (std::size_t j = 0; j < 10; ++j)
            CHECK(tab.valuations[i][j] == divide_out(s.delta_at(testdata::table_t()[j]), testdata::table_ell()[i]));
    CHECK(chain_is_well_formed(s, table_chain()));

    FamilyChain broken = table_chain();
    broken.pairs[3].ell = 97;
    CHECK_FALSE(verify_chain(s, broken).all_pass);

    const auto empty = verify_chain(s, FamilyChain{});
    CHECK(empty.all_pass);
    CHECK(empty.checks.empty());
}

TEST_CASE("extend_chain")
{
    const auto& s = example_family();
    ExtendOptions opt;
    opt.t_bound = 200;
    opt.prime_bound = 100000;

    SUBCASE("first pair from the empty chain")
    {
        const auto r = extend_chain(s, FamilyChain{}, opt);
        REQUIRE(r.added);
        CHECK(*r.added == ChainPair{0, 89});
    }
    SUBCASE("tenth pair after the first nine")
    {
        FamilyChain nine = table_chain();
        nine.pairs.pop_back();
        const auto r = extend_chain(s, nine, opt);
        REQUIRE(r.added);
        CHECK(r.added->t <= 21);
        CHECK(verify_chain(s, r.chain).all_pass);
    }
    SUBCASE("autonomous chain stays valid")
    {
        FamilyChain c;
        for (int k = 0; k < 7; ++k) {
            const auto r = extend_chain(s, c, opt);
            REQUIRE(r.added);
            c = r.chain;
            CHECK(verify_chain(s, c).all_pass);
            CHECK(chain_is_well_formed(s, c));
            for (const auto& e : r.corrections)
                if (!e.ell_divides_lc)
                    CHECK(e.ord_at_shift <= 1);
        }
        CHECK(c.pairs.front() == ChainPair{0, 89});
        // the same search with several threads gives the same chain
        ExtendOptions par = opt;
        par.threads = 3;
        FamilyChain c2;
        for (int k = 0; k < 7; ++k)
            c2 = extend_chain(s, c2, par).chain;
        CHECK(c2.pairs == c.pairs);
    }
    SUBCASE("quadratic family 1 - 4t")
    {
        const auto q = build_family(IntPoly{0, 1, 1}, 1);
        ExtendOptions small;
        small.t_bound = 50;
        small.prime_bound = 1000;
        const auto r = extend_chain(q, FamilyChain{}, small);
        REQUIRE(r.added);
        // direct scan oracle: smallest t >= 0 with an odd prime of valuation 1 in 1 - 4t
        std::int64_t expect_t = -1;
        std::uint64_t expect_l = 0;
        for (std::int64_t t = 0; t <= 50 && expect_t < 0; ++t) {
            const long v = 1 - 4 * t;
            for (std::uint32_t p : primes_up_to(1000))
                if (p > 2 && divide_out(v, p) == 1) {
                    expect_t = t;
                    expect_l = p;
                    break;
                }
        }
        CHECK(r.added->t == expect_t);
        CHECK(r.added->ell == expect_l);
    }
    SUBCASE("exhausted bounds are resumable")
    {
        ExtendOptions tiny;
        tiny.t_bound = 3;
        tiny.prime_bound = 50;
        const auto r = extend_chain(s, FamilyChain{}, tiny);
        CHECK_FALSE(r.added);
        CHECK(r.resume_from == 4);
        ExtendOptions more = tiny;
        more.resume_from = r.resume_from;
        more.t_bound = 6;
        const auto r2 = extend_chain(s, FamilyChain{}, more);
        if (r2.added)
            CHECK(r2.added->t >= 4);
    }
}

TEST_CASE("correction step: ord >= 2 at t forces ord <= 1 at t + l")
{
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<long> coef(-20, 20);
    int cases = 0;
    for (int attempt = 0; attempt < 400 && cases < 50; ++attempt) {
        std::vector<BigInt> c(5);
        for (auto& x : c)
            x = coef(rng);
        c[4] = 1;
        const IntPoly f(std::move(c));
        if (discriminant(f) == 0)
            continue;
        FamilySpec s;
        try {
            s = build_family(f, 1 + static_cast<long>(rng() % 3));
        } catch (const DomainError&) {
            continue;
        }
        const BigInt lc = s.delta_t.leading();
        for (std::int64_t t = 0; t < 30 && cases < 50; ++t) {
            const BigInt D = s.delta_at(t);
            if (D == 0)
                continue;
            for (std::uint32_t ell : primes_up_to(60)) {
                if (ell == 2 || mpz_divisible_ui_p(s.d.get_mpz_t(), ell) || mpz_divisible_ui_p(lc.get_mpz_t(), ell))
                    continue;
                if (divide_out(D, ell) < 2)
                    continue;
                const BigInt D2 = s.delta_at(t + static_cast<std::int64_t>(ell));
                REQUIRE(D2 != 0);
                CHECK(divide_out(D2, ell) <= 1);
                ++cases;
            }
        }
    }
    CHECK(cases == 50);
}

TEST_CASE("chain JSON round trip")
{
    const auto& s = example_family();
    const Json j = chain_to_json(s, table_chain());
    const auto doc = chain_from_json(parse_json(j.dump()));
    CHECK(doc.f == testdata::f3());
    CHECK(doc.N == testdata::family_modulus());
    CHECK(doc.chain.pairs == table_chain().pairs);
    CHECK_THROWS_AS(chain_from_json(parse_json(R"({"family":{"f":{"coeffs":[1]},"N":"1"},"pairs":[{"t":"x","ell":3}]})")),
                    FormatError);
}
