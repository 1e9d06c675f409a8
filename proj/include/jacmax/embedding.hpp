#pragma once

// S_{2g+2} acting on (1,...,1)^perp / <(1,...,1)> over F_2, in a fixed
// symplectic basis.

#include "jacmax/matrix_group.hpp"

#include <vector>

namespace jacmax {

/// sigma(i) = p[i] on {0, ..., n-1}.
using Permutation = std::vector<unsigned>;

Permutation compose(const Permutation& a, const Permutation& b); // (a b)(i) = a(b(i))
Permutation inverse(const Permutation& a);
int permutation_sign(const Permutation& a);
bool is_permutation(const Permutation& a);

/// Transposition (0 1) and the n-cycle.
std::vector<Permutation> symmetric_generators(unsigned n);
/// 3-cycles (0 1 k), k = 2..n-1.
std::vector<Permutation> alternating_generators(unsigned n);

/// Symplectic basis (a_1..a_g, b_1..b_g) of the quotient, as bit masks over
/// the 2g+2 coordinates. Deterministic; the pairing becomes Omega_g.
std::vector<std::uint64_t> embedding_basis(unsigned g);

/// Matrix over F_2 of sigma in the basis above. Requires g >= 2.
ModMatrix embed_permutation(const Permutation& sigma, unsigned g);

/// Sign of the permutation whose image is M; DomainError when M is not in
/// the image of the embedding.
int sign_character(const ModMatrix& m, unsigned g);

/// Preimage permutation of M; DomainError when M is not in the image.
Permutation recover_permutation(const ModMatrix& m, unsigned g);

FiniteMatrixGroup embedded_group(const std::vector<Permutation>& gens, unsigned g, GroupOptions options = {});

} // namespace jacmax
