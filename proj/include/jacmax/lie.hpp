#pragma once

// Subspaces of matrices over F_l and the symplectic Lie algebra conditions.

#include "jacmax/mod_matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace jacmax {

class MatSpace {
public:
    MatSpace() = default;
    MatSpace(std::uint32_t ell, unsigned dim);
    // Span of the given matrices (reduced mod ell).
    MatSpace(std::uint32_t ell, unsigned dim, const std::vector<ModMatrix>& spanning);

    std::uint32_t ell() const noexcept { return ell_; }
    unsigned matrix_dim() const noexcept { return n_; }
    std::size_t dimension() const noexcept { return rows_.size(); }
    // Row-reduced basis as matrices.
    std::vector<ModMatrix> basis() const;

    // Returns true when the span grew.
    bool add(const ModMatrix& a);
    bool contains(const ModMatrix& a) const;
    bool contains(const MatSpace& other) const;
    friend bool operator==(const MatSpace& a, const MatSpace& b);

private:
    std::vector<ModMatrix::Entry> reduce(std::vector<ModMatrix::Entry> v) const;

    std::uint32_t ell_ = 2;
    unsigned n_ = 0;
    // rows_[k] has pivot column pivots_[k] with entry 1; kept fully reduced.
    std::vector<std::vector<ModMatrix::Entry>> rows_;
    std::vector<std::size_t> pivots_;
};

/// Null space over F_p of a matrix given by rows of length `cols`.
std::vector<std::vector<ModMatrix::Entry>> nullspace_mod_p(std::vector<std::vector<ModMatrix::Entry>> rows,
                                                           std::size_t cols, std::uint32_t p);

/// c with A^T Omega + Omega A = c Omega, if any.
std::optional<std::uint32_t> gsp_lie_membership(const ModMatrix& a);

struct LieSpaces {
    MatSpace gsp;
    MatSpace sp;
};

/// Kernels of (A, c) -> A^T Omega + Omega A - c Omega over F_ell; sp is the
/// c = 0 part. For ell = 2 the same linear conditions are used (there
/// Omega A symmetric and alternating differ, so dimensions are not asserted).
LieSpaces lie_spaces(unsigned g, std::uint32_t ell);

/// prod sp_{2 g_i}(F_ell), block diagonal.
MatSpace product_sp(const std::vector<unsigned>& genera, std::uint32_t ell);

struct LieCheck {
    bool ok = false;
    std::size_t dimension = 0;  // dimension of the computed span
    std::size_t expected = 0;   // dim prod sp
    std::string note;
};

/// Commutators of a basis of {(A_i) in prod gsp : common c} span prod sp.
LieCheck check_A2(const std::vector<unsigned>& genera, std::uint32_t ell);

/// Square-zero elements u_v = v v^T Omega (v = e_i, e_i + e_j per block),
/// with I + u symplectic and rank 1, span prod sp.
LieCheck check_A3(const std::vector<unsigned>& genera, std::uint32_t ell);

struct A0Level {
    unsigned m = 0;
    bool span_ok = false;      // reductions of (k - I)/l^m span sp(F_l)
    bool lifts_ok = false;     // every lift I + l^m B is symplectic mod l^(m+1)
    std::size_t dimension = 0;
    std::optional<bool> order_ok; // |Sp(Z/l^(m+1))| / |Sp(Z/l^m)| = l^dim, when within budget
};

struct A0Report {
    bool ok = false;
    std::vector<A0Level> levels;
};

/// For m = 1..m_max: the kernel of Sp(Z/l^(m+1)) -> Sp(Z/l^m), realized
/// inside the group generated by elementary matrices, has Lie algebra prod sp.
A0Report check_A0(const std::vector<unsigned>& genera, std::uint32_t ell, unsigned m_max,
                  std::size_t orbit_budget = 200000);

} // namespace jacmax
