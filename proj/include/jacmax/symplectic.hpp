#pragma once

// Generators and orders of Sp_2g, GSp_2g and GSp^Delta over Z/m.

#include "jacmax/matrix_group.hpp"

#include <vector>

namespace jacmax {

/// Elementary symplectic matrices [[I,S],[0,I]] and [[I,0],[S,I]] for S in
/// the standard basis of symmetric g x g matrices. They generate Sp_2g(Z/m).
std::vector<ModMatrix> sp_generators(unsigned g, std::uint32_t m);

/// diag(c I_g, I_g), similitude c.
ModMatrix similitude_scaling(unsigned g, std::uint32_t m, std::uint64_t c);

/// A generating set of (Z/m)^x (empty for m = 2).
std::vector<std::uint32_t> unit_group_generators(std::uint32_t m);

/// sp_generators plus one scaling per unit group generator.
std::vector<ModMatrix> gsp_generators(unsigned g, std::uint32_t m);

BigInt sp_order(unsigned g, std::uint64_t m);
BigInt gsp_order(unsigned g, std::uint64_t m);

FiniteMatrixGroup symplectic_group(unsigned g, std::uint32_t m, GroupOptions options = {});
FiniteMatrixGroup general_symplectic_group(unsigned g, std::uint32_t m, GroupOptions options = {});

/// Block-diagonal embedding of per-block matrices (one block per genus).
ModMatrix embed_block(const ModMatrix& a, const std::vector<unsigned>& genera, std::size_t block);

/// Tuples in prod GSp_{2g_i}(F_l) with a common similitude: Sp generators of
/// each block plus one scaling acting in every block.
FiniteMatrixGroup build_gsp_delta(const std::vector<unsigned>& genera, std::uint32_t ell, GroupOptions options = {});
BigInt gsp_delta_order(const std::vector<unsigned>& genera, std::uint32_t ell);

/// Matrix over Z/(ma mb) congruent to a mod ma and to b mod mb (coprime moduli).
ModMatrix crt_combine(const ModMatrix& a, const ModMatrix& b);

} // namespace jacmax
