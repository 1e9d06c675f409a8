#include "jacmax/mod_matrix.hpp"

#include "jacmax/errors.hpp"
#include "jacmax/primes.hpp"

#include <numeric>
#include <sstream>

namespace jacmax {

namespace {

using u64 = std::uint64_t;

std::uint32_t reduce_signed(std::int64_t v, std::uint32_t m)
{
    std::int64_t r = v % static_cast<std::int64_t>(m);
    if (r < 0)
        r += m;
    return static_cast<std::uint32_t>(r);
}

// Gauss-Jordan over Z/p^k using unit pivots.
std::optional<std::vector<u64>> inverse_prime_power(const std::vector<u64>& a, unsigned n, u64 p, u64 q)
{
    std::vector<u64> m(a), inv(static_cast<std::size_t>(n) * n, 0);
    for (auto& x : m)
        x %= q;
    for (unsigned i = 0; i < n; ++i)
        inv[i * n + i] = 1 % q;
    for (unsigned col = 0; col < n; ++col) {
        unsigned piv = n;
        for (unsigned r = col; r < n; ++r)
            if (m[r * n + col] % p != 0) {
                piv = r;
                break;
            }
        if (piv == n)
            return std::nullopt;
        if (piv != col)
            for (unsigned j = 0; j < n; ++j) {
                std::swap(m[piv * n + j], m[col * n + j]);
                std::swap(inv[piv * n + j], inv[col * n + j]);
            }
        const u64 s = invmod_u64(m[col * n + col], q);
        for (unsigned j = 0; j < n; ++j) {
            m[col * n + j] = m[col * n + j] * s % q;
            inv[col * n + j] = inv[col * n + j] * s % q;
        }
        for (unsigned r = 0; r < n; ++r) {
            if (r == col || m[r * n + col] == 0)
                continue;
            const u64 f = m[r * n + col];
            for (unsigned j = 0; j < n; ++j) {
                m[r * n + j] = (m[r * n + j] + (q - f) * m[col * n + j]) % q;
                inv[r * n + j] = (inv[r * n + j] + (q - f) * inv[col * n + j]) % q;
            }
        }
    }
    return inv;
}

} // namespace

ModMatrix::ModMatrix(std::uint32_t modulus, unsigned dim) : m_(modulus), n_(dim), a_(static_cast<std::size_t>(dim) * dim, 0)
{
    if (modulus < 2)
        throw DomainError("ModMatrix: modulus below 2");
    if (dim == 0)
        throw DomainError("ModMatrix: zero dimension");
}

ModMatrix::ModMatrix(std::uint32_t modulus, unsigned dim, const std::vector<std::int64_t>& entries)
    : ModMatrix(modulus, dim)
{
    if (entries.size() != a_.size())
        throw DomainError("ModMatrix: entry count does not match dimension");
    for (std::size_t i = 0; i < a_.size(); ++i)
        a_[i] = reduce_signed(entries[i], modulus);
}

ModMatrix ModMatrix::identity(std::uint32_t modulus, unsigned dim) { return scalar(modulus, dim, 1); }

ModMatrix ModMatrix::scalar(std::uint32_t modulus, unsigned dim, std::uint64_t c)
{
    ModMatrix r(modulus, dim);
    for (unsigned i = 0; i < dim; ++i)
        r.a_[i * dim + i] = static_cast<Entry>(c % modulus);
    return r;
}

ModMatrix ModMatrix::omega(std::uint32_t modulus, unsigned g)
{
    ModMatrix r(modulus, 2 * g);
    for (unsigned i = 0; i < g; ++i) {
        r.set(i, g + i, 1);
        r.set(g + i, i, -1);
    }
    return r;
}

void ModMatrix::set(unsigned i, unsigned j, std::int64_t v) { a_[i * n_ + j] = reduce_signed(v, m_); }

bool ModMatrix::is_identity() const
{
    for (unsigned i = 0; i < n_; ++i)
        for (unsigned j = 0; j < n_; ++j)
            if (a_[i * n_ + j] != (i == j ? 1u : 0u))
                return false;
    return true;
}

bool ModMatrix::is_zero() const
{
    for (Entry x : a_)
        if (x != 0)
            return false;
    return true;
}

ModMatrix ModMatrix::transpose() const
{
    ModMatrix r(m_, n_);
    for (unsigned i = 0; i < n_; ++i)
        for (unsigned j = 0; j < n_; ++j)
            r.a_[j * n_ + i] = a_[i * n_ + j];
    return r;
}

ModMatrix ModMatrix::scaled(std::uint64_t k) const
{
    ModMatrix r(*this);
    k %= m_;
    for (auto& x : r.a_)
        x = static_cast<Entry>(x * k % m_);
    return r;
}

ModMatrix ModMatrix::reduced(std::uint32_t new_modulus) const
{
    if (new_modulus < 2 || m_ % new_modulus != 0)
        throw DomainError("ModMatrix::reduced: modulus must divide the current one");
    ModMatrix r(new_modulus, n_);
    for (std::size_t i = 0; i < a_.size(); ++i)
        r.a_[i] = a_[i] % new_modulus;
    return r;
}

ModMatrix ModMatrix::lifted(std::uint32_t new_modulus) const
{
    if (new_modulus % m_ != 0)
        throw DomainError("ModMatrix::lifted: new modulus must be a multiple");
    ModMatrix r(new_modulus, n_);
    r.a_ = a_;
    return r;
}

std::optional<ModMatrix> ModMatrix::try_inverse() const
{
    std::vector<u64> a(a_.begin(), a_.end());
    std::vector<u64> acc;
    u64 mod_acc = 1;
    for (auto [p, e] : factor_u64(m_)) {
        u64 q = 1;
        for (unsigned i = 0; i < e; ++i)
            q *= p;
        auto inv = inverse_prime_power(a, n_, p, q);
        if (!inv)
            return std::nullopt;
        if (acc.empty()) {
            acc = *inv;
            mod_acc = q;
            continue;
        }
        // CRT: x = acc + mod_acc * ((inv - acc) * mod_acc^-1 mod q)
        const u64 t = invmod_u64(mod_acc % q, q);
        for (std::size_t i = 0; i < acc.size(); ++i) {
            const u64 diff = ((*inv)[i] + q - acc[i] % q) % q;
            acc[i] = acc[i] + mod_acc * (diff * t % q);
        }
        mod_acc *= q;
    }
    ModMatrix r(m_, n_);
    for (std::size_t i = 0; i < acc.size(); ++i)
        r.a_[i] = static_cast<Entry>(acc[i] % m_);
    return r;
}

ModMatrix ModMatrix::inverse() const
{
    auto r = try_inverse();
    if (!r)
        throw DomainError("ModMatrix::inverse: matrix is not invertible");
    return *r;
}

ModMatrix ModMatrix::pow(std::uint64_t e) const
{
    ModMatrix r = identity(m_, n_), b = *this;
    while (e) {
        if (e & 1)
            r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

ModMatrix operator*(const ModMatrix& a, const ModMatrix& b)
{
    if (a.m_ != b.m_ || a.n_ != b.n_)
        throw DomainError("ModMatrix: shape or modulus mismatch");
    const unsigned n = a.n_;
    const u64 m = a.m_;
    ModMatrix r(a.m_, n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned k = 0; k < n; ++k) {
            const u64 x = a.a_[i * n + k];
            if (x == 0)
                continue;
            for (unsigned j = 0; j < n; ++j)
                r.a_[i * n + j] = static_cast<ModMatrix::Entry>((r.a_[i * n + j] + x * b.a_[k * n + j]) % m);
        }
    return r;
}

ModMatrix operator+(const ModMatrix& a, const ModMatrix& b)
{
    if (a.m_ != b.m_ || a.n_ != b.n_)
        throw DomainError("ModMatrix: shape or modulus mismatch");
    ModMatrix r(a);
    for (std::size_t i = 0; i < r.a_.size(); ++i)
        r.a_[i] = static_cast<ModMatrix::Entry>((u64{r.a_[i]} + b.a_[i]) % a.m_);
    return r;
}

ModMatrix operator-(const ModMatrix& a, const ModMatrix& b)
{
    if (a.m_ != b.m_ || a.n_ != b.n_)
        throw DomainError("ModMatrix: shape or modulus mismatch");
    ModMatrix r(a);
    for (std::size_t i = 0; i < r.a_.size(); ++i)
        r.a_[i] = static_cast<ModMatrix::Entry>((u64{r.a_[i]} + a.m_ - b.a_[i]) % a.m_);
    return r;
}

std::vector<ModMatrix::Entry> ModMatrix::apply(const std::vector<Entry>& v) const
{
    std::vector<Entry> out(n_, 0);
    for (unsigned i = 0; i < n_; ++i) {
        u64 s = 0;
        for (unsigned j = 0; j < n_; ++j)
            s = (s + u64{a_[i * n_ + j]} * v[j]) % m_;
        out[i] = static_cast<Entry>(s);
    }
    return out;
}

std::size_t ModMatrix::hash() const noexcept
{
    u64 h = 0xcbf29ce484222325ULL ^ m_;
    for (Entry x : a_) {
        h ^= x;
        h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
}

std::string ModMatrix::to_string() const
{
    std::ostringstream os;
    os << '[';
    for (unsigned i = 0; i < n_; ++i) {
        os << (i ? " [" : "[");
        for (unsigned j = 0; j < n_; ++j)
            os << (j ? " " : "") << a_[i * n_ + j];
        os << ']';
    }
    os << "] mod " << m_;
    return os.str();
}

ModMatrix block_diagonal(const std::vector<ModMatrix>& blocks)
{
    if (blocks.empty())
        throw DomainError("block_diagonal: no blocks");
    unsigned n = 0;
    for (const auto& b : blocks) {
        if (b.modulus() != blocks[0].modulus())
            throw DomainError("block_diagonal: mixed moduli");
        n += b.dim();
    }
    ModMatrix r(blocks[0].modulus(), n);
    unsigned off = 0;
    for (const auto& b : blocks) {
        for (unsigned i = 0; i < b.dim(); ++i)
            for (unsigned j = 0; j < b.dim(); ++j)
                r.set(off + i, off + j, b(i, j));
        off += b.dim();
    }
    return r;
}

ModMatrix diagonal_block(const ModMatrix& a, unsigned offset, unsigned size)
{
    if (offset + size > a.dim())
        throw DomainError("diagonal_block: out of range");
    ModMatrix r(a.modulus(), size);
    for (unsigned i = 0; i < size; ++i)
        for (unsigned j = 0; j < size; ++j)
            r.set(i, j, a(offset + i, offset + j));
    return r;
}

std::optional<std::uint32_t> gsp_membership(const ModMatrix& a)
{
    if (a.dim() % 2 != 0)
        throw DomainError("gsp_membership: odd dimension");
    const unsigned g = a.dim() / 2;
    const ModMatrix om = ModMatrix::omega(a.modulus(), g);
    const ModMatrix form = a.transpose() * om * a;
    const std::uint32_t lambda = form(0, g);
    if (std::gcd(lambda, a.modulus()) != 1)
        return std::nullopt;
    if (!(form == om.scaled(lambda)))
        return std::nullopt;
    return lambda;
}

ModMatrix commutator(const ModMatrix& a, const ModMatrix& b) { return a.inverse() * b.inverse() * a * b; }

Json to_json(const ModMatrix& a)
{
    Json rows = Json::array();
    for (unsigned i = 0; i < a.dim(); ++i) {
        Json row = Json::array();
        for (unsigned j = 0; j < a.dim(); ++j)
            row.push_back(a(i, j));
        rows.push_back(std::move(row));
    }
    return Json{{"modulus", a.modulus()}, {"rows", std::move(rows)}};
}

ModMatrix mod_matrix_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("modulus") || !j.contains("rows") || !j.at("modulus").is_number_unsigned() ||
        !j.at("rows").is_array())
        throw FormatError("matrix: expected {\"modulus\", \"rows\"}");
    const auto m = j.at("modulus").get<std::uint64_t>();
    if (m < 2 || m >= (std::uint64_t{1} << 32))
        throw FormatError("matrix: modulus out of range");
    const auto& rows = j.at("rows");
    const auto n = static_cast<unsigned>(rows.size());
    if (n == 0)
        throw FormatError("matrix: no rows");
    std::vector<std::int64_t> e;
    for (const auto& r : rows) {
        if (!r.is_array() || r.size() != n)
            throw FormatError("matrix: rows must form a square array");
        for (const auto& x : r) {
            if (!x.is_number_integer())
                throw FormatError("matrix: entries must be integers");
            e.push_back(x.get<std::int64_t>());
        }
    }
    return ModMatrix(static_cast<std::uint32_t>(m), n, e);
}

} // namespace jacmax
