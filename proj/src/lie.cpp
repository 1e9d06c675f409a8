#include "jacmax/lie.hpp"

#include "jacmax/errors.hpp"
#include "jacmax/matrix_group.hpp"
#include "jacmax/primes.hpp"
#include "jacmax/symplectic.hpp"

#include <algorithm>
#include <numeric>

namespace jacmax {

namespace {

using Entry = ModMatrix::Entry;
using Row = std::vector<Entry>;

Row flatten(const ModMatrix& a, std::uint32_t ell)
{
    Row v(a.data().size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = a.data()[i] % ell;
    return v;
}

ModMatrix unflatten(const Row& v, std::uint32_t ell, unsigned n)
{
    return ModMatrix(ell, n, std::vector<std::int64_t>(v.begin(), v.end()));
}

// in-place reduced row echelon form; returns pivot columns
std::vector<std::size_t> rref(std::vector<Row>& rows, std::size_t cols, std::uint32_t p)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t k = r;
        while (k < rows.size() && rows[k][c] == 0)
            ++k;
        if (k == rows.size())
            continue;
        std::swap(rows[r], rows[k]);
        const std::uint64_t inv = invmod_u64(rows[r][c], p);
        for (auto& x : rows[r])
            x = static_cast<Entry>(x * inv % p);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0)
                continue;
            const std::uint64_t f = rows[i][c];
            for (std::size_t j = 0; j < cols; ++j)
                rows[i][j] = static_cast<Entry>((rows[i][j] + (p - f) * rows[r][j]) % p);
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

std::size_t rank_mod_p(const ModMatrix& a, std::uint32_t p)
{
    std::vector<Row> rows;
    for (unsigned i = 0; i < a.dim(); ++i) {
        Row r(a.dim());
        for (unsigned j = 0; j < a.dim(); ++j)
            r[j] = a(i, j) % p;
        rows.push_back(std::move(r));
    }
    return rref(rows, a.dim(), p).size();
}

void check_prime(std::uint32_t ell)
{
    if (!is_prime_u64(ell))
        throw DomainError("lie: modulus must be prime");
}

unsigned total_dim(const std::vector<unsigned>& genera)
{
    if (genera.empty())
        throw DomainError("lie: no blocks");
    unsigned d = 0;
    for (unsigned g : genera) {
        if (g == 0)
            throw DomainError("lie: genus 0 block");
        d += 2 * g;
    }
    return d;
}

std::size_t sp_dim(const std::vector<unsigned>& genera)
{
    std::size_t d = 0;
    for (unsigned g : genera)
        d += 2 * g * g + g;
    return d;
}

ModMatrix block_diag_omega_part(const std::vector<unsigned>& genera, std::uint32_t m)
{
    std::vector<ModMatrix> blocks;
    for (unsigned g : genera) {
        ModMatrix b(m, 2 * g);
        for (unsigned i = 0; i < g; ++i)
            b.set(i, i, 1);
        blocks.push_back(std::move(b));
    }
    return block_diagonal(blocks);
}

// A in the product of Sp_{2g_i}: block diagonal, each block symplectic
bool in_product_sp(const ModMatrix& a, const std::vector<unsigned>& genera)
{
    unsigned off = 0;
    for (unsigned g : genera) {
        for (unsigned i = off; i < off + 2 * g; ++i)
            for (unsigned j = 0; j < a.dim(); ++j)
                if ((j < off || j >= off + 2 * g) && (a(i, j) != 0 || a(j, i) != 0))
                    return false;
        const auto lambda = gsp_membership(diagonal_block(a, off, 2 * g));
        if (!lambda || *lambda != 1)
            return false;
        off += 2 * g;
    }
    return true;
}

std::uint32_t checked_pow(std::uint32_t ell, unsigned e)
{
    std::uint64_t q = 1;
    for (unsigned i = 0; i < e; ++i) {
        q *= ell;
        if (q >> 32)
            throw DomainError("check_A0: l^(m+1) exceeds the word-size modulus budget");
    }
    return static_cast<std::uint32_t>(q);
}

} // namespace

MatSpace::MatSpace(std::uint32_t ell, unsigned dim) : ell_(ell), n_(dim)
{
    check_prime(ell);
}

MatSpace::MatSpace(std::uint32_t ell, unsigned dim, const std::vector<ModMatrix>& spanning) : MatSpace(ell, dim)
{
    for (const auto& a : spanning)
        add(a);
}

Row MatSpace::reduce(Row v) const
{
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        const std::uint64_t f = v[pivots_[k]];
        if (f == 0)
            continue;
        for (std::size_t j = 0; j < v.size(); ++j)
            v[j] = static_cast<Entry>((v[j] + (ell_ - f) * rows_[k][j]) % ell_);
    }
    return v;
}

bool MatSpace::add(const ModMatrix& a)
{
    if (a.dim() != n_)
        throw DomainError("MatSpace: dimension mismatch");
    Row v = reduce(flatten(a, ell_));
    const auto it = std::find_if(v.begin(), v.end(), [](Entry x) { return x != 0; });
    if (it == v.end())
        return false;
    const std::size_t p = static_cast<std::size_t>(it - v.begin());
    const std::uint64_t inv = invmod_u64(v[p], ell_);
    for (auto& x : v)
        x = static_cast<Entry>(x * inv % ell_);
    for (auto& r : rows_) {
        const std::uint64_t f = r[p];
        if (f == 0)
            continue;
        for (std::size_t j = 0; j < r.size(); ++j)
            r[j] = static_cast<Entry>((r[j] + (ell_ - f) * v[j]) % ell_);
    }
    const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, p);
    rows_.insert(rows_.begin() + pos, std::move(v));
    return true;
}

std::vector<ModMatrix> MatSpace::basis() const
{
    std::vector<ModMatrix> out;
    for (const auto& r : rows_)
        out.push_back(unflatten(r, ell_, n_));
    return out;
}

bool MatSpace::contains(const ModMatrix& a) const
{
    if (a.dim() != n_)
        return false;
    const Row v = reduce(flatten(a, ell_));
    return std::all_of(v.begin(), v.end(), [](Entry x) { return x == 0; });
}

bool MatSpace::contains(const MatSpace& other) const
{
    if (other.ell_ != ell_ || other.n_ != n_)
        return false;
    for (const auto& b : other.basis())
        if (!contains(b))
            return false;
    return true;
}

bool operator==(const MatSpace& a, const MatSpace& b)
{
    return a.ell_ == b.ell_ && a.n_ == b.n_ && a.rows_ == b.rows_;
}

std::vector<Row> nullspace_mod_p(std::vector<Row> rows, std::size_t cols, std::uint32_t p)
{
    const auto pivots = rref(rows, cols, p);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots)
        is_pivot[c] = true;
    std::vector<Row> out;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f])
            continue;
        Row v(cols, 0);
        v[f] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k)
            v[pivots[k]] = static_cast<Entry>((p - rows[k][f]) % p);
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<std::uint32_t> gsp_lie_membership(const ModMatrix& a)
{
    if (a.dim() % 2 != 0)
        throw DomainError("gsp_lie_membership: odd dimension");
    const ModMatrix om = ModMatrix::omega(a.modulus(), a.dim() / 2);
    const ModMatrix lhs = a.transpose() * om + om * a;
    const std::uint32_t c = lhs(0, a.dim() / 2);
    if (!(lhs == om.scaled(c)))
        return std::nullopt;
    return c;
}

LieSpaces lie_spaces(unsigned g, std::uint32_t ell)
{
    check_prime(ell);
    if (g == 0)
        throw DomainError("lie_spaces: g = 0");
    const unsigned n = 2 * g;
    const ModMatrix om = ModMatrix::omega(ell, g);
    const std::size_t nn = static_cast<std::size_t>(n) * n;
    // unknowns: A (row-major) then c
    std::vector<Row> eqs;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            Row r(nn + 1, 0);
            for (unsigned k = 0; k < n; ++k) {
                // (A^T Omega)_{ij} = sum_k A_{ki} Omega_{kj}
                r[k * n + i] = static_cast<Entry>((r[k * n + i] + om(k, j)) % ell);
                // (Omega A)_{ij} = sum_k Omega_{ik} A_{kj}
                r[k * n + j] = static_cast<Entry>((r[k * n + j] + om(i, k)) % ell);
            }
            r[nn] = static_cast<Entry>((ell - om(i, j)) % ell);
            eqs.push_back(std::move(r));
        }
    LieSpaces out{MatSpace(ell, n), MatSpace(ell, n)};
    for (const auto& v : nullspace_mod_p(eqs, nn + 1, ell))
        out.gsp.add(unflatten(Row(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(nn)), ell, n));
    for (auto& e : eqs)
        e.pop_back();
    for (const auto& v : nullspace_mod_p(eqs, nn, ell))
        out.sp.add(unflatten(v, ell, n));
    return out;
}

MatSpace product_sp(const std::vector<unsigned>& genera, std::uint32_t ell)
{
    const unsigned d = total_dim(genera);
    MatSpace s(ell, d);
    for (std::size_t b = 0; b < genera.size(); ++b) {
        const auto spaces = lie_spaces(genera[b], ell);
        for (const auto& x : spaces.sp.basis()) {
            // embed_block pads with identities; we need zero padding here
            std::vector<ModMatrix> blocks;
            for (std::size_t i = 0; i < genera.size(); ++i)
                blocks.push_back(i == b ? x : ModMatrix(ell, 2 * genera[i]));
            s.add(block_diagonal(blocks));
        }
    }
    return s;
}

LieCheck check_A2(const std::vector<unsigned>& genera, std::uint32_t ell)
{
    const unsigned d = total_dim(genera);
    const MatSpace target = product_sp(genera, ell);
    std::vector<ModMatrix> basis = target.basis();
    basis.push_back(block_diag_omega_part(genera, ell));
    MatSpace span(ell, d);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            span.add(basis[i] * basis[j] - basis[j] * basis[i]);
    LieCheck c;
    c.dimension = span.dimension();
    c.expected = sp_dim(genera);
    c.ok = span == target;
    if (ell == 2)
        c.note = "characteristic 2: outside the asserted range";
    return c;
}

LieCheck check_A3(const std::vector<unsigned>& genera, std::uint32_t ell)
{
    const unsigned d = total_dim(genera);
    const MatSpace target = product_sp(genera, ell);
    MatSpace span(ell, d);
    bool local_ok = true;
    unsigned off = 0;
    for (unsigned g : genera) {
        const unsigned n = 2 * g;
        const ModMatrix om = ModMatrix::omega(ell, g);
        std::vector<std::vector<std::int64_t>> dirs;
        for (unsigned i = 0; i < n; ++i) {
            std::vector<std::int64_t> v(n, 0);
            v[i] = 1;
            dirs.push_back(v);
            for (unsigned j = i + 1; j < n; ++j) {
                auto w = v;
                w[j] = 1;
                dirs.push_back(std::move(w));
            }
        }
        for (const auto& v : dirs) {
            ModMatrix vvT(ell, n);
            for (unsigned i = 0; i < n; ++i)
                for (unsigned j = 0; j < n; ++j)
                    vvT.set(i, j, v[i] * v[j]);
            const ModMatrix u = vvT * om;
            const auto lambda = gsp_membership(ModMatrix::identity(ell, n) + u);
            local_ok = local_ok && (u * u).is_zero() && lambda && *lambda == 1 && rank_mod_p(u, ell) == 1;
            ModMatrix big(ell, d);
            for (unsigned i = 0; i < n; ++i)
                for (unsigned j = 0; j < n; ++j)
                    big.set(off + i, off + j, u(i, j));
            span.add(big);
        }
        off += n;
    }
    LieCheck c;
    c.dimension = span.dimension();
    c.expected = sp_dim(genera);
    c.ok = local_ok && span == target;
    if (!local_ok)
        c.note = "a generated u failed u^2 = 0, I + u in Sp, or rank 1";
    else if (ell == 2)
        c.note = "characteristic 2: outside the asserted range";
    return c;
}

A0Report check_A0(const std::vector<unsigned>& genera, std::uint32_t ell, unsigned m_max, std::size_t orbit_budget)
{
    check_prime(ell);
    const unsigned d = total_dim(genera);
    const MatSpace target = product_sp(genera, ell);
    A0Report rep;
    rep.ok = true;
    for (unsigned m = 1; m <= m_max; ++m) {
        const std::uint32_t q = checked_pow(ell, m + 1), lm = checked_pow(ell, m);
        std::vector<ModMatrix> gens, gens_mod_l;
        for (std::size_t b = 0; b < genera.size(); ++b)
            for (const auto& e : sp_generators(genera[b], q))
                gens.push_back(embed_block(e, genera, b));
        for (const auto& e : gens)
            gens_mod_l.push_back(e.reduced(ell));

        A0Level lv;
        lv.m = m;
        lv.lifts_ok = true;
        MatSpace span(ell, d);
        for (const auto& e : gens) {
            const ModMatrix k = e.pow(lm);
            const ModMatrix diff = k - ModMatrix::identity(q, d);
            ModMatrix b(ell, d);
            for (unsigned i = 0; i < d; ++i)
                for (unsigned j = 0; j < d; ++j) {
                    if (diff(i, j) % lm != 0)
                        lv.lifts_ok = false;
                    b.set(i, j, diff(i, j) / lm);
                }
            lv.lifts_ok = lv.lifts_ok && in_product_sp(k, genera);
            span.add(b);
        }
        // close under conjugation by the group mod l
        std::vector<ModMatrix> conj, conj_inv;
        for (const auto& h : gens_mod_l) {
            conj.push_back(h);
            conj_inv.push_back(h.inverse());
        }
        for (bool grew = true; grew;) {
            grew = false;
            for (const auto& b : span.basis())
                for (std::size_t s = 0; s < conj.size(); ++s)
                    grew = span.add(conj[s] * b * conj_inv[s]) || grew;
        }
        for (const auto& b : span.basis()) {
            ModMatrix lift = ModMatrix::identity(q, d);
            for (unsigned i = 0; i < d; ++i)
                for (unsigned j = 0; j < d; ++j)
                    lift.set(i, j, lift(i, j) + static_cast<std::int64_t>(lm) * b(i, j));
            lv.lifts_ok = lv.lifts_ok && in_product_sp(lift, genera);
        }
        lv.dimension = span.dimension();
        lv.span_ok = span == target;

        unsigned gmax = *std::max_element(genera.begin(), genera.end());
        double points = 1;
        for (unsigned i = 0; i < 2 * gmax; ++i)
            points *= q;
        if (points <= static_cast<double>(orbit_budget)) {
            auto order_of = [&](std::uint32_t mod) {
                std::vector<ModMatrix> gs;
                for (const auto& e : gens)
                    gs.push_back(e.reduced(mod));
                BigInt bound = 1;
                for (unsigned g : genera)
                    bound *= sp_order(g, mod);
                GroupOptions o;
                o.order_bound = bound;
                return FiniteMatrixGroup(mod, d, gs, o).order();
            };
            BigInt expect;
            mpz_ui_pow_ui(expect.get_mpz_t(), ell, sp_dim(genera));
            lv.order_ok = order_of(q) == order_of(lm) * expect;
        }
        rep.ok = rep.ok && lv.span_ok && lv.lifts_ok && lv.order_ok.value_or(true);
        rep.levels.push_back(lv);
    }
    return rep;
}

} // namespace jacmax
