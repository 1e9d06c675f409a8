#include "jacmax/matrix_group.hpp"

#include "jacmax/errors.hpp"
#include "jacmax/primes.hpp"

#include <algorithm>

namespace jacmax {

FiniteMatrixGroup::FiniteMatrixGroup(std::uint32_t modulus, unsigned dim, std::vector<ModMatrix> generators,
                                     GroupOptions options)
    : m_(modulus), n_(dim), opt_(std::move(options))
{
    if (modulus < 2 || dim == 0)
        throw DomainError("FiniteMatrixGroup: bad modulus or dimension");
    std::uint64_t span = 1;
    for (unsigned i = 0; i < dim; ++i) {
        if (span > ~std::uint64_t{0} / modulus)
            throw DomainError("FiniteMatrixGroup: m^D must stay below 2^64");
        span *= modulus;
    }

    for (const auto& v : opt_.base_prefix)
        candidates_.push_back(encode(v));
    prefix_len_ = candidates_.size();
    for (auto [p, e] : factor_u64(modulus)) {
        std::uint64_t q = 1;
        for (unsigned k = 0; k < e; ++k)
            q *= p;
        for (unsigned i = 0; i < dim; ++i) {
            ModVector v(dim, 0);
            v[i] = static_cast<ModMatrix::Entry>(modulus / q);
            candidates_.push_back(encode(v));
        }
    }
    for (std::size_t i = 0; i < prefix_len_; ++i)
        push_level(candidates_[i]);

    for (auto& g : generators) {
        check_matrix(g);
        if (g.is_identity())
            continue;
        gens_.push_back(g);
        absorb(g, 0);
    }
    refresh_order();
    if (opt_.order_bound && !reached_bound())
        random_phase();
    if (!reached_bound() && !levels_.empty())
        complete(levels_.size() - 1);
    if (opt_.enumerate)
        enumerate(opt_.enumeration_cap);
}

FiniteMatrixGroup::Point FiniteMatrixGroup::encode(const ModVector& v) const
{
    if (v.size() != n_)
        throw DomainError("FiniteMatrixGroup: point of wrong length");
    Point p = 0;
    for (unsigned i = n_; i-- > 0;)
        p = p * m_ + v[i] % m_;
    return p;
}

ModVector FiniteMatrixGroup::decode(Point p) const
{
    ModVector v(n_);
    for (unsigned i = 0; i < n_; ++i) {
        v[i] = static_cast<ModMatrix::Entry>(p % m_);
        p /= m_;
    }
    return v;
}

FiniteMatrixGroup::Point FiniteMatrixGroup::act(const ModMatrix& a, Point p) const
{
    return encode(a.apply(decode(p)));
}

void FiniteMatrixGroup::check_matrix(const ModMatrix& a) const
{
    if (a.modulus() != m_ || a.dim() != n_)
        throw DomainError("FiniteMatrixGroup: generator has the wrong shape or modulus");
    if (!a.try_inverse())
        throw DomainError("FiniteMatrixGroup: generator is not invertible");
}

void FiniteMatrixGroup::push_level(Point p)
{
    Level l;
    l.point = p;
    l.orbit.push_back(p);
    l.index.emplace(p, 0);
    l.u.push_back(identity());
    l.u_inv.push_back(identity());
    l.tested.push_back(0);
    levels_.push_back(std::move(l));
}

void FiniteMatrixGroup::add_to_level(std::size_t i, const ModMatrix& g, const ModMatrix& g_inv)
{
    Level& l = levels_[i];
    const std::size_t first = l.gens.size();
    l.gens.push_back(g);
    l.gens_inv.push_back(g_inv);
    extend_orbit(i, first);
}

void FiniteMatrixGroup::extend_orbit(std::size_t i, std::size_t first_new_gen)
{
    Level& l = levels_[i];
    auto visit = [&](std::size_t k, std::size_t s) {
        const Point img = act(l.gens[s], l.orbit[k]);
        if (l.index.count(img))
            return;
        if (l.orbit.size() >= opt_.max_orbit)
            throw InconclusiveError("FiniteMatrixGroup: basic orbit exceeds the size budget",
                                    "max_orbit = " + std::to_string(opt_.max_orbit));
        l.index.emplace(img, static_cast<std::uint32_t>(l.orbit.size()));
        l.orbit.push_back(img);
        l.u.push_back(l.gens[s] * l.u[k]);
        l.u_inv.push_back(l.u_inv[k] * l.gens_inv[s]);
        l.tested.push_back(0);
    };
    const std::size_t old = l.orbit.size();
    for (std::size_t k = 0; k < old; ++k)
        for (std::size_t s = first_new_gen; s < l.gens.size(); ++s)
            visit(k, s);
    for (std::size_t k = old; k < l.orbit.size(); ++k)
        for (std::size_t s = 0; s < l.gens.size(); ++s)
            visit(k, s);
}

FiniteMatrixGroup::SiftResult FiniteMatrixGroup::sift(ModMatrix g, std::size_t from) const
{
    for (std::size_t i = from; i < levels_.size(); ++i) {
        const Level& l = levels_[i];
        const auto it = l.index.find(act(g, l.point));
        if (it == l.index.end())
            return {std::move(g), i};
        g = l.u_inv[it->second] * g;
    }
    return {std::move(g), levels_.size()};
}

std::optional<FiniteMatrixGroup::Point> FiniteMatrixGroup::first_moved(const ModMatrix& h) const
{
    for (Point c : candidates_)
        if (act(h, c) != c)
            return c;
    return std::nullopt;
}

std::optional<std::size_t> FiniteMatrixGroup::absorb(const ModMatrix& g, std::size_t from)
{
    auto [h, j] = sift(g, from);
    if (j == levels_.size()) {
        if (h.is_identity())
            return std::nullopt;
        const auto p = first_moved(h);
        if (!p)
            throw ConsistencyError("FiniteMatrixGroup: non-identity residue fixes every base candidate");
        push_level(*p);
    }
    const ModMatrix h_inv = h.inverse();
    for (std::size_t l = from; l <= j; ++l)
        add_to_level(l, h, h_inv);
    refresh_order();
    return j;
}

void FiniteMatrixGroup::complete(std::size_t top)
{
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(top);
    while (i >= 0) {
        const auto ui = static_cast<std::size_t>(i);
        std::optional<std::size_t> changed;
        for (std::size_t k = 0; k < levels_[ui].orbit.size() && !changed; ++k) {
            while (levels_[ui].tested[k] < levels_[ui].gens.size()) {
                const Level& l = levels_[ui];
                const std::size_t s = l.tested[k];
                levels_[ui].tested[k] = s + 1;
                const std::uint32_t idx = l.index.at(act(l.gens[s], l.orbit[k]));
                const ModMatrix sch = l.u_inv[idx] * l.gens[s] * l.u[k];
                if (sch.is_identity())
                    continue;
                changed = absorb(sch, ui + 1);
                if (changed)
                    break;
            }
        }
        if (reached_bound())
            return;
        if (changed)
            i = static_cast<std::ptrdiff_t>(*changed);
        else
            --i;
    }
}

void FiniteMatrixGroup::random_phase()
{
    if (gens_.empty())
        return;
    std::mt19937_64 rng(opt_.seed);
    // product replacement
    std::vector<ModMatrix> state;
    while (state.size() < std::max<std::size_t>(10, gens_.size()))
        for (const auto& g : gens_)
            state.push_back(g);
    ModMatrix acc = identity();
    auto next = [&]() {
        std::uniform_int_distribution<std::size_t> pick(0, state.size() - 1);
        const std::size_t a = pick(rng);
        std::size_t b = pick(rng);
        while (b == a)
            b = pick(rng);
        state[a] = (rng() & 1) ? state[a] * state[b] : state[b] * state[a];
        acc = acc * state[a];
        return acc;
    };
    for (int k = 0; k < 60; ++k)
        next();
    int misses = 0;
    while (misses < 40 && !reached_bound()) {
        if (absorb(next(), 0))
            misses = 0;
        else
            ++misses;
    }
}

void FiniteMatrixGroup::refresh_order()
{
    order_ = 1;
    for (const auto& l : levels_)
        order_ *= static_cast<unsigned long>(l.orbit.size());
    if (opt_.order_bound && order_ > *opt_.order_bound)
        throw ConsistencyError("FiniteMatrixGroup: chain order exceeds the declared bound");
}

bool FiniteMatrixGroup::reached_bound() const { return opt_.order_bound && order_ == *opt_.order_bound; }

bool FiniteMatrixGroup::contains(const ModMatrix& a) const
{
    if (a.modulus() != m_ || a.dim() != n_)
        return false;
    const auto r = sift(a, 0);
    return r.level == levels_.size() && r.residue.is_identity();
}

ModMatrix FiniteMatrixGroup::random_element(std::mt19937_64& rng) const
{
    ModMatrix g = identity();
    for (const auto& l : levels_) {
        std::uniform_int_distribution<std::size_t> pick(0, l.u.size() - 1);
        g = g * l.u[pick(rng)];
    }
    return g;
}

BigInt FiniteMatrixGroup::prefix_stabilizer_order() const
{
    BigInt r = 1;
    for (std::size_t i = prefix_len_; i < levels_.size(); ++i)
        r *= static_cast<unsigned long>(levels_[i].orbit.size());
    return r;
}

std::vector<ModVector> FiniteMatrixGroup::base() const
{
    std::vector<ModVector> out;
    for (const auto& l : levels_)
        out.push_back(decode(l.point));
    return out;
}

std::vector<std::size_t> FiniteMatrixGroup::orbit_sizes() const
{
    std::vector<std::size_t> out;
    for (const auto& l : levels_)
        out.push_back(l.orbit.size());
    return out;
}

void FiniteMatrixGroup::add_generator(const ModMatrix& a)
{
    check_matrix(a);
    enumerated_ = false;
    elements_.clear();
    if (a.is_identity())
        return;
    gens_.push_back(a);
    const auto j = absorb(a, 0);
    if (j && !reached_bound())
        complete(*j);
}

const std::vector<ModMatrix>& FiniteMatrixGroup::elements() const
{
    if (!enumerated_)
        throw DomainError("FiniteMatrixGroup: element list not materialized");
    return elements_;
}

bool FiniteMatrixGroup::enumerate(std::size_t cap)
{
    if (enumerated_)
        return true;
    if (order_ > static_cast<unsigned long>(cap))
        return false;
    std::vector<ModMatrix> acc{identity()};
    for (std::size_t i = levels_.size(); i-- > 0;) {
        std::vector<ModMatrix> next;
        next.reserve(acc.size() * levels_[i].u.size());
        for (const auto& u : levels_[i].u)
            for (const auto& e : acc)
                next.push_back(u * e);
        acc = std::move(next);
    }
    elements_ = std::move(acc);
    enumerated_ = true;
    return true;
}

FiniteMatrixGroup normal_closure(const FiniteMatrixGroup& g, const std::vector<ModMatrix>& x, GroupOptions options)
{
    const bool want_elements = options.enumerate;
    options.enumerate = false;
    if (!options.order_bound)
        options.order_bound = g.order();
    FiniteMatrixGroup n(g.modulus(), g.dim(), x, options);
    std::vector<ModMatrix> g_inv;
    for (const auto& s : g.generators())
        g_inv.push_back(s.inverse());
    for (std::size_t k = 0; k < n.generators().size(); ++k)
        for (std::size_t s = 0; s < g.generators().size(); ++s) {
            const ModMatrix c = g_inv[s] * n.generators()[k] * g.generators()[s];
            if (!n.contains(c))
                n.add_generator(c);
        }
    if (want_elements)
        n.enumerate(options.enumeration_cap);
    return n;
}

FiniteMatrixGroup derived_subgroup(const FiniteMatrixGroup& g, GroupOptions options)
{
    std::vector<ModMatrix> comm;
    const auto& gens = g.generators();
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            comm.push_back(commutator(gens[i], gens[j]));
    return normal_closure(g, comm, std::move(options));
}

} // namespace jacmax
