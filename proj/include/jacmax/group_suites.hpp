#pragma once

// Randomized and structural checks on finite matrix groups: lifting from
// Z/l to Z/l^2, pairwise surjection in products, Goursat data, simplicity.

#include "jacmax/embedding.hpp"
#include "jacmax/json_io.hpp"
#include "jacmax/matrix_group.hpp"

#include <string>
#include <vector>

namespace jacmax {

struct LiftTrial {
    std::size_t index = 0;
    bool hypothesis = false; // reductions generate the full group mod l (mod 2: the embedded S_{2g+2})
    bool full = false;       // generated order equals the target
    BigInt order;
};

struct LiftingReport {
    unsigned g = 0;
    std::uint32_t ell = 0;   // l for check_lifting_lemma, 2 for the S_{2g+2} version
    std::uint32_t modulus = 0;
    std::uint64_t seed = 0;
    BigInt target;
    std::size_t trials = 0;
    std::size_t hypothesis_met = 0;
    std::size_t counterexamples = 0; // hypothesis met but not full
    std::vector<LiftTrial> details;
};

/// Random generator lifts mod l^2 of generating sets of Sp_2g(F_l); each
/// lift is compared with |Sp_2g(Z/l^2)|.
LiftingReport check_lifting_lemma(unsigned g, std::uint32_t ell, std::size_t trials, std::uint64_t seed,
                                  unsigned generators = 2);

/// Lifts mod 2^m of generating sets of the embedded S_{2g+2}; compared with
/// the full preimage of the embedded group in Sp_2g(Z/2^m). g = 2, m = 2 only.
LiftingReport check_S2m_lifting(unsigned g, unsigned m, std::size_t trials, std::uint64_t seed);

/// One lift of a permutation set; `kernel_noise` multiplies each generator by
/// a random element of ker(Sp(Z/2^m) -> Sp(F_2)).
std::vector<ModMatrix> lift_permutations(const std::vector<Permutation>& perms, unsigned g, unsigned m,
                                         std::mt19937_64* kernel_noise);

enum class PairBase { SL2F5, Sp4F3 };

struct PairTrial {
    std::size_t index = 0;
    bool pair_surjective = false;
    bool full = false;
    BigInt order;
};

struct PairSurjectionReport {
    unsigned copies = 0;
    PairBase base = PairBase::SL2F5;
    std::uint64_t seed = 0;
    BigInt factor_order;
    std::size_t trials = 0;
    std::size_t hypothesis_met = 0;
    std::size_t counterexamples = 0;
    std::vector<PairTrial> details;
};

/// Pair-surjection test on subgroups of base^n. Order computations only.
PairSurjectionReport check_pair_surjection(unsigned copies, PairBase base, std::size_t trials, std::uint64_t seed);

/// Block-diagonal generators of base^n from per-factor tuples.
std::vector<ModMatrix> product_generators(const std::vector<std::vector<ModMatrix>>& per_factor);

/// Is H = <gens> (block diagonal, equal blocks of size `block`) surjective
/// onto every pair of factors of order factor_order^2?
bool is_pair_surjective(const std::vector<ModMatrix>& gens, unsigned block, unsigned copies,
                        const BigInt& factor_order);

struct GoursatData {
    BigInt order;
    BigInt p1, p2; // projections
    BigInt k1, k2; // H meet (G1 x 1), H meet (1 x G2)
    BigInt quotient; // |p1| / |k1|
    bool consistent = false; // |H| = |p1| |k2| = |p2| |k1| and |p1|/|k1| = |p2|/|k2|
};

/// H inside GL_{d1} x GL_{d2} (block diagonal with the first block of size d1).
GoursatData goursat_decompose(const FiniteMatrixGroup& h, unsigned d1);

struct SimplicityResult {
    bool simple = false;
    BigInt quotient_order;
    std::size_t classes = 0;
    std::string reason;
};

/// Simplicity of G / <center>. G is enumerated (|G| <= cap); the trivial
/// quotient counts as not simple.
SimplicityResult simplicity_check(const FiniteMatrixGroup& g, const std::vector<ModMatrix>& center,
                                  std::size_t cap = 200000);

Json to_json(const LiftingReport& r);
Json to_json(const PairSurjectionReport& r);
Json to_json(const GoursatData& d);
Json to_json(const SimplicityResult& s);

} // namespace jacmax
