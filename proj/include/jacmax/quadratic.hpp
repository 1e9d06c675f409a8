#pragma once

// Squarefree part, conductor and the quadratic character of Q(sqrt(Delta)).

#include "jacmax/bigint_poly.hpp"

namespace jacmax {

struct QuadDatum {
    BigInt delta_prime; // squarefree part, signed
    BigInt D;           // conductor of Q(sqrt(delta_prime))
    BigInt M;           // lcm(D, 2)

    // Fundamental discriminant: delta_prime or 4 delta_prime.
    BigInt fundamental() const;
    // Quadratic character of Q(sqrt(delta_prime)) at an integer coprime to D.
    int character(const BigInt& a) const;
};

/// DomainError for delta = 0; InconclusiveError from squarefree_part.
QuadDatum quad_datum(const BigInt& delta, const FactorPolicy& policy = {});

} // namespace jacmax
