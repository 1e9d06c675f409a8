#pragma once

// Exact integer and integer-polynomial arithmetic: resultants, discriminants,
// p-adic valuations, the Kronecker symbol, squarefree parts and the exact
// interpolation of a one-parameter family discriminant.
//
// All functions are pure; GMP supplies the multiprecision integers.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace jacmax {

using BigInt = mpz_class;
using BigRat = mpq_class;

/// Dense univariate polynomial over Z, coefficients in ascending degree.
///
/// The coefficient vector never carries trailing zeros, so the zero
/// polynomial is the empty vector and has degree kZeroDegree.
class IntPoly {
public:
    static constexpr int kZeroDegree = -1;

    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> coeffs);
    IntPoly(std::initializer_list<long> coeffs);

    static IntPoly constant(const BigInt& c);
    static IntPoly monomial(const BigInt& c, std::size_t power);

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }

    // Coefficient of x^k; zero beyond the degree.
    BigInt coeff(std::size_t k) const;
    // Leading coefficient; zero for the zero polynomial.
    BigInt leading() const;

    BigInt eval(const BigInt& x) const;
    IntPoly derivative() const;
    BigInt content() const;
    IntPoly primitive_part() const;

    // f(x) + c, the shape of a family member F_t = f + N*t.
    IntPoly shifted_constant(const BigInt& c) const;
    IntPoly scaled(const BigInt& c) const;
    // Divides every coefficient by c; throws ConsistencyError if inexact.
    IntPoly exact_div(const BigInt& c) const;

    IntPoly& operator+=(const IntPoly& o);
    IntPoly& operator-=(const IntPoly& o);
    friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
    friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }

    std::string to_string(std::string_view var = "x") const;

private:
    void trim();
    std::vector<BigInt> coeffs_;
};

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, computed over Z.
IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b);

/// Dense polynomial over Q; every coefficient kept canonical by GMP.
class RatPoly {
public:
    RatPoly() = default;
    explicit RatPoly(std::vector<BigRat> coeffs);

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<BigRat>& coeffs() const noexcept { return coeffs_; }
    BigRat eval(const BigRat& x) const;

    bool is_integral() const;
    // Throws ConsistencyError when some coefficient is not an integer.
    IntPoly to_int_poly() const;

private:
    std::vector<BigRat> coeffs_;
};

enum class ResultantMethod {
    Subresultant,   // production path
    Sylvester,      // fraction-free (Bareiss) determinant of the Sylvester matrix
};

/// Res(f, g). Both polynomials must be nonzero (DomainError otherwise).
BigInt resultant(const IntPoly& f, const IntPoly& g,
                 ResultantMethod method = ResultantMethod::Subresultant);

/// Determinant of an integer square matrix by Bareiss elimination.
BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m);

/// disc(f) = (-1)^(n(n-1)/2) * Res(f, f') / lc(f), n = deg f.
///
/// Degree 1 polynomials have discriminant 1 (empty product of root
/// differences). Degree <= 0 is a DomainError.
BigInt discriminant(const IntPoly& f,
                    ResultantMethod method = ResultantMethod::Subresultant);

/// Largest k with p^k | n. DomainError for n == 0 or p < 2.
unsigned long valuation(const BigInt& n, const BigInt& p);

/// Kronecker symbol (a/n) for arbitrary integers a, n.
int kronecker_symbol(const BigInt& a, const BigInt& n);

/// Bounded factoring policy shared by squarefree_part and its callers.
struct FactorPolicy {
    unsigned long trial_bound = 1'000'000;
    unsigned rho_attempts = 16;
    unsigned long rho_iterations = 1UL << 20;
    std::uint64_t seed = 0x5eed'1234'abcdULL;
};

/// Prime-power factorization found under a policy, plus whatever could not
/// be split. `cofactors` is empty when the factorization is complete.
struct BoundedFactorization {
    std::vector<std::pair<BigInt, unsigned long>> primes;   // ascending
    std::vector<std::pair<BigInt, unsigned long>> cofactors; // composite, unsplit
};

BoundedFactorization factor_bounded(const BigInt& n, const FactorPolicy& policy = {});

/// Squarefree part of a nonzero integer, carrying the sign of the input.
/// Throws InconclusiveError (detail = unfactored cofactor) when the policy
/// cannot decide the parity of some exponent.
BigInt squarefree_part(const BigInt& n, const FactorPolicy& policy = {});

bool is_probable_prime(const BigInt& n);

/// Delta(t) = disc_x(f(x) + N*t) as a polynomial in t, by exact Lagrange
/// interpolation through the 2n-1 nodes 0, 1, -1, 2, -2, ... (n = deg f).
IntPoly interpolate_family_discriminant(const IntPoly& f, const BigInt& N);

/// The interpolation nodes used above, in order.
std::vector<BigInt> family_interpolation_nodes(std::size_t count);

/// Newton-form interpolation through (xs[i], ys[i]); xs pairwise distinct.
RatPoly interpolate(const std::vector<BigInt>& xs, const std::vector<BigInt>& ys);

} // namespace jacmax
