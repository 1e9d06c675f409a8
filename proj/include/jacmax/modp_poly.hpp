#pragma once

// Polynomials over a prime field F_p with p < 2^63: squarefree
// decomposition, distinct/equal-degree factorization, roots, Frobenius
// factor shapes and the local analysis of a discriminant prime.

#include "jacmax/bigint_poly.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace jacmax {

class ModPoly {
public:
    using Coeff = std::uint64_t;
    static constexpr int kZeroDegree = -1;

    // p must be a prime below 2^63; coefficients are reduced on entry.
    explicit ModPoly(Coeff p);
    ModPoly(Coeff p, std::vector<Coeff> coeffs);

    static ModPoly constant(Coeff p, Coeff c);
    static ModPoly x(Coeff p);
    // x - a
    static ModPoly linear_root(Coeff p, Coeff a);

    Coeff modulus() const noexcept { return p_; }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
    const std::vector<Coeff>& coeffs() const noexcept { return c_; }
    Coeff coeff(std::size_t k) const noexcept { return k < c_.size() ? c_[k] : 0; }
    Coeff leading() const noexcept { return c_.empty() ? 0 : c_.back(); }

    Coeff eval(Coeff a) const;
    ModPoly derivative() const;
    ModPoly monic() const;

    ModPoly& operator+=(const ModPoly& o);
    ModPoly& operator-=(const ModPoly& o);
    friend ModPoly operator+(ModPoly a, const ModPoly& b) { return a += b; }
    friend ModPoly operator-(ModPoly a, const ModPoly& b) { return a -= b; }
    friend ModPoly operator*(const ModPoly& a, const ModPoly& b);
    friend bool operator==(const ModPoly& a, const ModPoly& b)
    {
        return a.p_ == b.p_ && a.c_ == b.c_;
    }
    ModPoly scaled(Coeff k) const;

    std::string to_string(const std::string& var = "x") const;

private:
    void trim();
    Coeff p_;
    std::vector<Coeff> c_;
};

// Quotient and remainder; b must be nonzero.
std::pair<ModPoly, ModPoly> divmod(const ModPoly& a, const ModPoly& b);
ModPoly operator%(const ModPoly& a, const ModPoly& b);
ModPoly operator/(const ModPoly& a, const ModPoly& b);
// Monic gcd (zero if both inputs are zero).
ModPoly gcd(const ModPoly& a, const ModPoly& b);
// base^e mod m
ModPoly powmod(const ModPoly& base, const BigInt& e, const ModPoly& m);

ModPoly reduce_mod(const IntPoly& f, std::uint64_t p);

struct SquarefreeFactor {
    ModPoly factor;   // monic, squarefree
    unsigned multiplicity;
};

/// f = lc(f) * prod factor_i^mult_i with the factors pairwise coprime and the
/// multiplicities distinct, sorted by multiplicity. f must be nonzero.
std::vector<SquarefreeFactor> squarefree_decomposition(const ModPoly& f);

/// Distinct-degree split of a monic squarefree polynomial: pairs
/// (product of all irreducible factors of degree d, d).
std::vector<std::pair<ModPoly, unsigned>> distinct_degree_factorization(const ModPoly& f);

/// Cantor-Zassenhaus split of a monic squarefree product of degree-d
/// irreducibles into its irreducible factors.
std::vector<ModPoly> equal_degree_factorization(const ModPoly& f, unsigned d, std::mt19937_64& rng);

struct ModFactorization {
    ModPoly::Coeff unit = 0;
    std::vector<std::pair<ModPoly, unsigned>> factors;   // monic irreducible, multiplicity
};

constexpr std::uint64_t kDefaultFactorSeed = 0x6a09e667f3bcc909ULL;

ModFactorization factor(const ModPoly& f, std::uint64_t seed = kDefaultFactorSeed);

/// Distinct roots in F_p, ascending.
std::vector<std::uint64_t> roots(const ModPoly& f, std::uint64_t seed = kDefaultFactorSeed);

/// Multiset of (degree, multiplicity) pairs of the irreducible factors,
/// sorted by degree descending then multiplicity descending.
struct FactorShape {
    std::vector<std::pair<unsigned, unsigned>> parts;

    unsigned total_degree() const;
    // Degrees with multiplicity expanded, descending.
    std::vector<unsigned> degrees() const;
    bool operator==(const FactorShape& o) const { return parts == o.parts; }
    std::string to_string() const;
};

FactorShape shape_of(const ModPoly& f);

/// Frobenius cycle type at an unramified prime: p must not divide lc(f) or
/// disc(f) (DomainError otherwise).
FactorShape factor_shape(const IntPoly& f, std::uint64_t p);

struct DoubleRootAnalysis {
    enum class Kind { UniqueDoubleRootInBase, Other };
    Kind kind = Kind::Other;
    std::uint64_t root = 0;            // valid for UniqueDoubleRootInBase
    unsigned long disc_valuation = 0;  // ord_l(disc f); 0 also for disc == 0
    bool disc_zero = false;
    std::string description;
};

/// Local structure of f at an odd prime l not dividing lc(f). When
/// ord_l(disc f) = 1 the reduction has exactly one repeated root, it is
/// double and lies in F_l; otherwise the repeated factors are described.
DoubleRootAnalysis double_root_analysis(const IntPoly& f, std::uint64_t ell);
// Same, reusing an already computed disc(f).
DoubleRootAnalysis double_root_analysis(const IntPoly& f, std::uint64_t ell, const BigInt& disc);

} // namespace jacmax
