#pragma once

// Square matrices over Z/m for word-size moduli, and the standard
// symplectic form.

#include "jacmax/json_io.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace jacmax {

class ModMatrix {
public:
    using Entry = std::uint32_t;

    ModMatrix() = default;
    // Zero matrix; modulus in [2, 2^32), dimension >= 1.
    ModMatrix(std::uint32_t modulus, unsigned dim);
    // Row-major entries, reduced into [0, m).
    ModMatrix(std::uint32_t modulus, unsigned dim, const std::vector<std::int64_t>& entries);

    static ModMatrix identity(std::uint32_t modulus, unsigned dim);
    static ModMatrix scalar(std::uint32_t modulus, unsigned dim, std::uint64_t c);
    // [[0, I_g], [-I_g, 0]]
    static ModMatrix omega(std::uint32_t modulus, unsigned g);

    std::uint32_t modulus() const noexcept { return m_; }
    unsigned dim() const noexcept { return n_; }
    Entry operator()(unsigned i, unsigned j) const { return a_[i * n_ + j]; }
    void set(unsigned i, unsigned j, std::int64_t v);
    const std::vector<Entry>& data() const noexcept { return a_; }

    bool is_identity() const;
    bool is_zero() const;
    ModMatrix transpose() const;
    ModMatrix scaled(std::uint64_t k) const;
    // Reduction to a divisor of the modulus.
    ModMatrix reduced(std::uint32_t new_modulus) const;
    // Same entries read modulo a multiple (entry-wise lift by representatives).
    ModMatrix lifted(std::uint32_t new_modulus) const;

    std::optional<ModMatrix> try_inverse() const;
    // DomainError when not invertible.
    ModMatrix inverse() const;
    ModMatrix pow(std::uint64_t e) const;

    friend ModMatrix operator*(const ModMatrix& a, const ModMatrix& b);
    friend ModMatrix operator+(const ModMatrix& a, const ModMatrix& b);
    friend ModMatrix operator-(const ModMatrix& a, const ModMatrix& b);
    friend bool operator==(const ModMatrix& a, const ModMatrix& b)
    {
        return a.m_ == b.m_ && a.n_ == b.n_ && a.a_ == b.a_;
    }
    friend bool operator<(const ModMatrix& a, const ModMatrix& b) { return a.a_ < b.a_; }

    // Column vector product.
    std::vector<Entry> apply(const std::vector<Entry>& v) const;

    std::size_t hash() const noexcept;
    std::string to_string() const;

private:
    std::uint32_t m_ = 0;
    unsigned n_ = 0;
    std::vector<Entry> a_;
};

struct ModMatrixHash {
    std::size_t operator()(const ModMatrix& a) const noexcept { return a.hash(); }
};

/// Block-diagonal matrix with the given blocks (all over the same modulus).
ModMatrix block_diagonal(const std::vector<ModMatrix>& blocks);
/// The block of size `size` starting at row/column `offset`.
ModMatrix diagonal_block(const ModMatrix& a, unsigned offset, unsigned size);

/// A^T Omega_g A = lambda Omega_g with lambda a unit mod m; returns lambda.
/// DomainError for odd dimension.
std::optional<std::uint32_t> gsp_membership(const ModMatrix& a);

/// a^-1 b^-1 a b
ModMatrix commutator(const ModMatrix& a, const ModMatrix& b);

/// Matrix JSON: {"modulus": m, "rows": [[...], ...]}.
Json to_json(const ModMatrix& a);
ModMatrix mod_matrix_from_json(const Json& j);

} // namespace jacmax
