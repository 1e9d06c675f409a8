#include "jacmax/group_suites.hpp"

#include "jacmax/errors.hpp"
#include "jacmax/lie.hpp"
#include "jacmax/primes.hpp"
#include "jacmax/symplectic.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace jacmax {

namespace {

BigInt factorial(unsigned n)
{
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

BigInt pow_ui(unsigned long b, unsigned long e)
{
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), b, e);
    return r;
}

ModMatrix random_word(const std::vector<ModMatrix>& gens, std::size_t length, std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    ModMatrix w = ModMatrix::identity(gens[0].modulus(), gens[0].dim());
    for (std::size_t i = 0; i < length; ++i)
        w = w * gens[pick(rng)];
    return w;
}

// I + q B with B a random element of the given space, entries read mod m
ModMatrix random_kernel_element(const MatSpace& space, std::uint32_t q, std::uint32_t m, std::mt19937_64& rng)
{
    const unsigned n = space.matrix_dim();
    std::uniform_int_distribution<std::uint32_t> coef(0, space.ell() - 1);
    ModMatrix b(space.ell(), n);
    for (const auto& x : space.basis())
        b = b + x.scaled(coef(rng));
    ModMatrix r = ModMatrix::identity(m, n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j)
            r.set(i, j, r(i, j) + static_cast<std::int64_t>(q) * b(i, j));
    return r;
}

BigInt bounded_order(const std::vector<ModMatrix>& gens, const BigInt& bound, GroupOptions o = {})
{
    o.order_bound = bound;
    return FiniteMatrixGroup(gens[0].modulus(), gens[0].dim(), gens, std::move(o)).order();
}

Permutation random_permutation(unsigned n, std::mt19937_64& rng)
{
    Permutation p(n);
    std::iota(p.begin(), p.end(), 0u);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

ModMatrix random_sl2(std::uint32_t p, std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::uint32_t> e(0, p - 1);
    for (;;) {
        const std::int64_t a = e(rng), b = e(rng), c = e(rng), d = e(rng);
        if (((a * d - b * c) % p + p) % p == 1)
            return ModMatrix(p, 2, {a, b, c, d});
    }
}

std::vector<ModMatrix> pair_projection(const std::vector<ModMatrix>& gens, unsigned block, unsigned i, unsigned j)
{
    std::vector<ModMatrix> out;
    for (const auto& x : gens)
        out.push_back(block_diagonal({diagonal_block(x, i * block, block), diagonal_block(x, j * block, block)}));
    return out;
}

} // namespace

LiftingReport check_lifting_lemma(unsigned g, std::uint32_t ell, std::size_t trials, std::uint64_t seed,
                                  unsigned generators)
{
    if (!is_prime_u64(ell))
        throw DomainError("check_lifting_lemma: l must be prime");
    const std::uint32_t q = ell * ell;
    LiftingReport rep;
    rep.g = g;
    rep.ell = ell;
    rep.modulus = q;
    rep.seed = seed;
    rep.target = sp_order(g, q);
    rep.trials = trials;
    const BigInt mod_l_order = sp_order(g, ell);
    const auto elem = sp_generators(g, q);
    const MatSpace sp = lie_spaces(g, ell).sp;
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        LiftTrial tr;
        tr.index = t;
        std::vector<ModMatrix> gens;
        for (int attempt = 0; attempt < 50 && !tr.hypothesis; ++attempt) {
            gens.clear();
            for (unsigned k = 0; k < generators; ++k)
                gens.push_back(random_word(elem, 40, rng));
            std::vector<ModMatrix> red;
            for (const auto& x : gens)
                red.push_back(x.reduced(ell));
            tr.hypothesis = bounded_order(red, mod_l_order) == mod_l_order;
        }
        if (tr.hypothesis) {
            for (auto& x : gens)
                x = x * random_kernel_element(sp, ell, q, rng);
            tr.order = bounded_order(gens, rep.target);
            tr.full = tr.order == rep.target;
            ++rep.hypothesis_met;
            if (!tr.full)
                ++rep.counterexamples;
        }
        rep.details.push_back(std::move(tr));
    }
    return rep;
}

std::vector<ModMatrix> lift_permutations(const std::vector<Permutation>& perms, unsigned g, unsigned m,
                                         std::mt19937_64* kernel_noise)
{
    if (m < 1 || m > 16)
        throw DomainError("lift_permutations: 1 <= m <= 16");
    if (kernel_noise && m != 2)
        throw DomainError("lift_permutations: kernel noise needs m = 2");
    const std::uint32_t mod = 1u << m;
    const unsigned n = 2 * g + 2;
    const auto basis = embedding_basis(g);
    const ModMatrix om = ModMatrix::omega(mod, g);
    // lifted transvection for the adjacent transposition (i i+1)
    std::vector<ModMatrix> trans;
    for (unsigned i = 0; i + 1 < n; ++i) {
        Permutation t(n);
        std::iota(t.begin(), t.end(), 0u);
        std::swap(t[i], t[i + 1]);
        const ModMatrix e = embed_permutation(t, g);
        // v = coordinates of the class of e_i + e_{i+1}
        std::vector<std::int64_t> v(2 * g, 0);
        const std::uint64_t mask = (std::uint64_t{1} << i) | (std::uint64_t{1} << (i + 1));
        for (unsigned k = 0; k < g; ++k) {
            v[k] = std::popcount(mask & basis[g + k]) & 1;
            v[g + k] = std::popcount(mask & basis[k]) & 1;
        }
        ModMatrix vvT(mod, 2 * g);
        for (unsigned a = 0; a < 2 * g; ++a)
            for (unsigned b = 0; b < 2 * g; ++b)
                vvT.set(a, b, v[a] * v[b]);
        ModMatrix lift = ModMatrix::identity(mod, 2 * g) + vvT * om;
        if (!(lift.reduced(2) == e))
            throw ConsistencyError("lift_permutations: transvection lift does not reduce correctly");
        trans.push_back(std::move(lift));
    }
    const MatSpace sp2 = lie_spaces(g, 2).sp;
    std::vector<ModMatrix> out;
    for (const auto& sigma : perms) {
        // sigma s_1 ... s_k = id, so sigma = s_k ... s_1
        Permutation a = sigma;
        std::vector<unsigned> swaps;
        for (bool moved = true; moved;) {
            moved = false;
            for (unsigned j = 0; j + 1 < n; ++j)
                if (a[j] > a[j + 1]) {
                    std::swap(a[j], a[j + 1]);
                    swaps.push_back(j);
                    moved = true;
                }
        }
        ModMatrix x = ModMatrix::identity(mod, 2 * g);
        for (auto it = swaps.rbegin(); it != swaps.rend(); ++it)
            x = x * trans[*it];
        if (!(x.reduced(2) == embed_permutation(sigma, g)))
            throw ConsistencyError("lift_permutations: lift does not reduce to the embedded permutation");
        if (kernel_noise)
            x = x * random_kernel_element(sp2, 2, mod, *kernel_noise);
        out.push_back(std::move(x));
    }
    return out;
}

LiftingReport check_S2m_lifting(unsigned g, unsigned m, std::size_t trials, std::uint64_t seed)
{
    if (g < 2 || m != 2)
        throw DomainError("check_S2m_lifting: supported for g >= 2 and m = 2");
    LiftingReport rep;
    rep.g = g;
    rep.ell = 2;
    rep.modulus = 1u << m;
    rep.seed = seed;
    const unsigned n = 2 * g + 2;
    const BigInt s_order = factorial(n);
    rep.target = s_order * pow_ui(2, static_cast<unsigned long>(m - 1) * (2 * g * g + g));
    rep.trials = trials;
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        LiftTrial tr;
        tr.index = t;
        std::vector<Permutation> perms;
        for (int attempt = 0; attempt < 50 && !tr.hypothesis; ++attempt) {
            perms = {random_permutation(n, rng), random_permutation(n, rng)};
            GroupOptions o;
            o.order_bound = s_order;
            tr.hypothesis = embedded_group(perms, g, o).order() == s_order;
        }
        if (tr.hypothesis) {
            const auto gens = lift_permutations(perms, g, m, &rng);
            tr.order = bounded_order(gens, rep.target);
            tr.full = tr.order == rep.target;
            ++rep.hypothesis_met;
            if (!tr.full)
                ++rep.counterexamples;
        }
        rep.details.push_back(std::move(tr));
    }
    return rep;
}

std::vector<ModMatrix> product_generators(const std::vector<std::vector<ModMatrix>>& per_factor)
{
    if (per_factor.empty() || per_factor[0].empty())
        throw DomainError("product_generators: empty input");
    std::vector<ModMatrix> out;
    for (std::size_t k = 0; k < per_factor[0].size(); ++k) {
        std::vector<ModMatrix> blocks;
        for (const auto& f : per_factor)
            blocks.push_back(f.at(k));
        out.push_back(block_diagonal(blocks));
    }
    return out;
}

bool is_pair_surjective(const std::vector<ModMatrix>& gens, unsigned block, unsigned copies,
                        const BigInt& factor_order)
{
    const BigInt pair_order = factor_order * factor_order;
    for (unsigned i = 0; i < copies; ++i)
        for (unsigned j = i + 1; j < copies; ++j)
            if (bounded_order(pair_projection(gens, block, i, j), pair_order) != pair_order)
                return false;
    return true;
}

PairSurjectionReport check_pair_surjection(unsigned copies, PairBase base, std::size_t trials, std::uint64_t seed)
{
    if (copies < 2 || copies > 4)
        throw DomainError("check_pair_surjection: 2 <= copies <= 4");
    if (base == PairBase::Sp4F3 && copies > 3)
        throw DomainError("check_pair_surjection: Sp4(F_3) supports at most 3 copies");
    const std::uint32_t p = base == PairBase::SL2F5 ? 5 : 3;
    const unsigned block = base == PairBase::SL2F5 ? 2 : 4;
    PairSurjectionReport rep;
    rep.copies = copies;
    rep.base = base;
    rep.seed = seed;
    rep.factor_order = sp_order(block / 2, p);
    rep.trials = trials;
    BigInt full = 1;
    for (unsigned i = 0; i < copies; ++i)
        full *= rep.factor_order;
    const auto elem = sp_generators(2, 3);
    std::mt19937_64 rng(seed);
    auto random_factor_element = [&]() {
        return base == PairBase::SL2F5 ? random_sl2(5, rng) : random_word(elem, 40, rng);
    };
    for (std::size_t t = 0; t < trials; ++t) {
        PairTrial tr;
        tr.index = t;
        const unsigned ngens = 2 + static_cast<unsigned>(rng() % 2);
        std::vector<std::vector<ModMatrix>> f(copies);
        for (auto& row : f)
            for (unsigned k = 0; k < ngens; ++k)
                row.push_back(random_factor_element());
        // some trials tie two coordinates together (diagonal or twisted diagonal)
        const unsigned mode = static_cast<unsigned>(rng() % 4);
        if (mode == 1)
            f[1] = f[0];
        else if (mode == 2) {
            const ModMatrix c = random_factor_element(), ci = c.inverse();
            for (unsigned k = 0; k < ngens; ++k)
                f[copies - 1][k] = c * f[0][k] * ci;
        }
        const auto gens = product_generators(f);
        tr.pair_surjective = is_pair_surjective(gens, block, copies, rep.factor_order);
        if (tr.pair_surjective) {
            tr.order = bounded_order(gens, full);
            tr.full = tr.order == full;
            ++rep.hypothesis_met;
            if (!tr.full)
                ++rep.counterexamples;
        }
        rep.details.push_back(std::move(tr));
    }
    return rep;
}

GoursatData goursat_decompose(const FiniteMatrixGroup& h, unsigned d1)
{
    const unsigned dim = h.dim();
    if (d1 == 0 || d1 >= dim)
        throw DomainError("goursat_decompose: split must leave two nonempty blocks");
    const std::uint32_t m = h.modulus();
    const unsigned d2 = dim - d1;
    for (const auto& x : h.generators())
        for (unsigned i = 0; i < dim; ++i)
            for (unsigned j = 0; j < dim; ++j)
                if ((i < d1) != (j < d1) && x(i, j) != 0)
                    throw DomainError("goursat_decompose: generators are not block diagonal");
    std::vector<ModMatrix> g1, g2;
    for (const auto& x : h.generators()) {
        g1.push_back(diagonal_block(x, 0, d1));
        g2.push_back(diagonal_block(x, d1, d2));
    }
    auto unit = [&](unsigned i) {
        ModVector v(dim, 0);
        v[i] = 1;
        return v;
    };
    GroupOptions fix2, fix1;
    for (unsigned i = d1; i < dim; ++i)
        fix2.base_prefix.push_back(unit(i));
    for (unsigned i = 0; i < d1; ++i)
        fix1.base_prefix.push_back(unit(i));

    GoursatData d;
    d.order = h.order();
    d.p1 = FiniteMatrixGroup(m, d1, g1).order();
    d.p2 = FiniteMatrixGroup(m, d2, g2).order();
    d.k1 = FiniteMatrixGroup(m, dim, h.generators(), fix2).prefix_stabilizer_order();
    d.k2 = FiniteMatrixGroup(m, dim, h.generators(), fix1).prefix_stabilizer_order();
    d.quotient = d.p1 / d.k1;
    d.consistent = d.order == d.p1 * d.k2 && d.order == d.p2 * d.k1 && d.p1 % d.k1 == 0 &&
                   d.p2 % d.k2 == 0 && d.quotient == d.p2 / d.k2;
    return d;
}

SimplicityResult simplicity_check(const FiniteMatrixGroup& g, const std::vector<ModMatrix>& center, std::size_t cap)
{
    SimplicityResult res;
    FiniteMatrixGroup whole = g;
    if (!whole.enumerate(cap))
        throw InconclusiveError("simplicity_check: group exceeds the enumeration budget",
                                "order " + g.order().get_str());
    for (const auto& z : center)
        for (const auto& s : g.generators())
            if (!(z * s == s * z) || !g.contains(z))
                throw DomainError("simplicity_check: declared center element is not central in G");
    std::vector<ModMatrix> zs{g.identity()};
    for (bool grew = true; grew;) {
        grew = false;
        for (std::size_t i = 0; i < zs.size(); ++i)
            for (const auto& z : center) {
                ModMatrix y = zs[i] * z;
                if (std::find(zs.begin(), zs.end(), y) == zs.end()) {
                    zs.push_back(std::move(y));
                    grew = true;
                }
            }
    }
    auto canon = [&](const ModMatrix& x) {
        ModMatrix best = x;
        for (const auto& z : zs) {
            ModMatrix y = x * z;
            if (y < best)
                best = std::move(y);
        }
        return best;
    };
    res.quotient_order = g.order() / static_cast<unsigned long>(zs.size());
    if (res.quotient_order == 1) {
        res.reason = "trivial quotient";
        return res;
    }
    std::vector<ModMatrix> inv;
    for (const auto& s : g.generators())
        inv.push_back(s.inverse());
    std::unordered_set<ModMatrix, ModMatrixHash> seen;
    const ModMatrix one = canon(g.identity());
    std::vector<ModMatrix> reps;
    for (const auto& x : whole.elements()) {
        ModMatrix c = canon(x);
        if (seen.count(c))
            continue;
        reps.push_back(c);
        seen.insert(c);
        std::vector<ModMatrix> frontier{c};
        while (!frontier.empty()) {
            std::vector<ModMatrix> next;
            for (const auto& y : frontier)
                for (std::size_t s = 0; s < inv.size(); ++s) {
                    ModMatrix w = canon(inv[s] * y * g.generators()[s]);
                    if (seen.insert(w).second)
                        next.push_back(std::move(w));
                }
            frontier = std::move(next);
        }
    }
    res.classes = reps.size();
    GroupOptions o;
    o.order_bound = g.order();
    for (const auto& r : reps) {
        if (r == one)
            continue;
        std::vector<ModMatrix> x = center;
        x.push_back(r);
        const auto n = normal_closure(g, x, o);
        if (n.order() != g.order()) {
            res.reason = "proper normal subgroup of order " +
                         BigInt(n.order() / static_cast<unsigned long>(zs.size())).get_str() + " in the quotient";
            return res;
        }
    }
    res.simple = true;
    return res;
}

Json to_json(const LiftingReport& r)
{
    Json trials = Json::array();
    for (const auto& t : r.details)
        trials.push_back(Json{{"index", t.index},
                              {"hypothesis", t.hypothesis},
                              {"full", t.full},
                              {"order", t.hypothesis ? t.order.get_str() : ""}});
    return Json{{"g", r.g},
                {"ell", r.ell},
                {"modulus", r.modulus},
                {"seed", r.seed},
                {"target_order", r.target.get_str()},
                {"trials", r.trials},
                {"hypothesis_met", r.hypothesis_met},
                {"counterexamples", r.counterexamples},
                {"details", std::move(trials)}};
}

Json to_json(const PairSurjectionReport& r)
{
    Json trials = Json::array();
    for (const auto& t : r.details)
        trials.push_back(Json{{"index", t.index},
                              {"pair_surjective", t.pair_surjective},
                              {"full", t.full},
                              {"order", t.pair_surjective ? t.order.get_str() : ""}});
    return Json{{"copies", r.copies},
                {"base", r.base == PairBase::SL2F5 ? "SL2(F5)" : "Sp4(F3)"},
                {"seed", r.seed},
                {"factor_order", r.factor_order.get_str()},
                {"trials", r.trials},
                {"hypothesis_met", r.hypothesis_met},
                {"counterexamples", r.counterexamples},
                {"details", std::move(trials)}};
}

Json to_json(const GoursatData& d)
{
    return Json{{"order", d.order.get_str()},       {"p1", d.p1.get_str()}, {"p2", d.p2.get_str()},
                {"k1", d.k1.get_str()},             {"k2", d.k2.get_str()}, {"quotient", d.quotient.get_str()},
                {"consistent", d.consistent}};
}

Json to_json(const SimplicityResult& s)
{
    return Json{{"simple", s.simple},
                {"quotient_order", s.quotient_order.get_str()},
                {"classes", s.classes},
                {"reason", s.reason}};
}

} // namespace jacmax
