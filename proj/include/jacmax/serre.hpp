#pragma once

// The index-2 kernel of (Delta'/lambda) * sign on the preimage of the
// embedded S_{2g+2} in GSp_2g(Z/M).

#include "jacmax/json_io.hpp"
#include "jacmax/matrix_group.hpp"
#include "jacmax/quadratic.hpp"

#include <vector>

namespace jacmax {

/// Generators of the preimage S(M) of the embedded S_{2g+2} under
/// GSp_2g(Z/M) -> Sp_2g(F_2); for odd M this is GSp_2g(Z/M).
std::vector<ModMatrix> serre_ambient_generators(unsigned g, std::uint32_t m);
BigInt serre_ambient_order(unsigned g, std::uint64_t m);

/// (D*/lambda(A)) * sign(A mod 2) for A in S(M), D* the fundamental discriminant.
int serre_character(const ModMatrix& a, const QuadDatum& q, unsigned g);

struct SerreResult {
    unsigned g = 0;
    BigInt delta;
    QuadDatum datum;
    std::uint32_t modulus = 0;
    BigInt ambient_order;
    BigInt kernel_order;
    BigInt index;
    FiniteMatrixGroup kernel;
    // proper divisors d > 1 of M and whether the kernel maps onto S(d)
    std::vector<std::pair<std::uint32_t, bool>> divisor_surjective;
};

/// Throws InconclusiveError (with a size estimate) when the point budget of
/// the stabilizer chain, sum over prime powers q || M of q^(2g), exceeds cap.
SerreResult serre_subgroup(unsigned g, const BigInt& delta, std::size_t cap = 200000);

Json to_json(const SerreResult& r);

} // namespace jacmax
