#pragma once

#include <cstdint>
#include <vector>

namespace jacmax {

/// All primes p with 2 <= p <= bound, ascending (sieve of Eratosthenes).
std::vector<std::uint32_t> primes_up_to(std::uint64_t bound);

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m);
/// Inverse of a modulo m; requires gcd(a, m) == 1.
std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t m);

/// Prime-power factorization of a 64-bit integer by trial division.
std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);

} // namespace jacmax
