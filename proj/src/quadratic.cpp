#include "jacmax/quadratic.hpp"

#include "jacmax/errors.hpp"

namespace jacmax {

BigInt QuadDatum::fundamental() const
{
    return mpz_fdiv_ui(delta_prime.get_mpz_t(), 4) == 1 ? delta_prime : BigInt(4 * delta_prime);
}

int QuadDatum::character(const BigInt& a) const { return kronecker_symbol(fundamental(), a); }

QuadDatum quad_datum(const BigInt& delta, const FactorPolicy& policy)
{
    if (delta == 0)
        throw DomainError("quad_datum: delta = 0");
    QuadDatum q;
    q.delta_prime = squarefree_part(delta, policy);
    q.D = abs(q.fundamental());
    q.M = mpz_even_p(q.D.get_mpz_t()) ? q.D : BigInt(2 * q.D);
    return q;
}

} // namespace jacmax
