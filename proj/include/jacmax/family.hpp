#pragma once

// One-parameter families F_t = f + N*t and chains of pairs (t_i, l_i) whose
// members pairwise satisfy the witness-prime condition.

#include "jacmax/bigint_poly.hpp"
#include "jacmax/json_io.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace jacmax {

struct FamilySpec {
    IntPoly f;
    BigInt N;
    IntPoly delta_t;   // disc_x(f + N t) in Z[t]
    BigInt d;          // disc_t(delta_t)

    IntPoly member(const BigInt& t) const { return f.shifted_constant(N * t); }
    // Direct discriminant of F_t.
    BigInt delta_at(const BigInt& t) const;
    // deg f even and >= 6, i.e. F_t defines a hyperelliptic curve of genus >= 2.
    bool hyperelliptic_model() const;
};

/// Interpolates delta_t and computes d. DomainError when disc f = 0, N = 0
/// or d = 0.
FamilySpec build_family(const IntPoly& f, const BigInt& N);

struct ChainPair {
    std::int64_t t;
    std::uint64_t ell;
    bool operator==(const ChainPair& o) const { return t == o.t && ell == o.ell; }
};

struct FamilyChain {
    std::vector<ChainPair> pairs;
};

/// ord_l(delta(t)) >= 2 met during a scan, with l not dividing d.
struct CorrectionEvent {
    std::int64_t t;
    std::uint64_t ell;
    unsigned long ord_at_t;
    unsigned long ord_at_shift;   // ord_l(delta(t + l))
    bool ell_divides_lc;          // l | lc(delta_t)
};

struct ExtendOptions {
    std::int64_t t_bound = 1000;          // largest t examined
    std::uint64_t prime_bound = 100000;   // largest l examined
    std::optional<std::int64_t> resume_from;
    unsigned threads = 1;
};

struct ExtendOutcome {
    FamilyChain chain;                // input chain, plus the new pair on success
    std::optional<ChainPair> added;
    bool via_correction = false;      // the pair came from a t + l shift
    std::vector<CorrectionEvent> corrections;
    std::int64_t resume_from = 0;     // first t not yet examined
};

/// Appends the smallest (t, l) in lexicographic order with t beyond the
/// last chain entry (t >= 0 on an empty chain), 2 < l <= prime_bound, such
/// that ord_l(delta(t)) = 1, l does not divide d, l does not divide
/// delta(t_i) for any earlier t_i, and no earlier l_i divides delta(t).
/// Shifted candidates t + l from correction events are tried when the plain
/// scan is exhausted. On failure `added` is empty and `resume_from` marks
/// where to continue.
ExtendOutcome extend_chain(const FamilySpec& spec, const FamilyChain& chain, const ExtendOptions& opt);

struct ChainTable {
    // valuations[i][j] = ord_{l_i}(delta(t_j))
    std::vector<std::vector<unsigned long>> valuations;
    std::vector<std::vector<bool>> checks;
    bool all_pass = true;
    std::size_t passed() const;
};

ChainTable verify_chain(const FamilySpec& spec, const FamilyChain& chain);

/// Structural invariants: strictly increasing t, distinct l > 2, no l_i | d.
bool chain_is_well_formed(const FamilySpec& spec, const FamilyChain& chain);

/// {"family": {"f": poly, "N": "..."}, "pairs": [{"t": .., "ell": ..}, ...]}
Json chain_to_json(const FamilySpec& spec, const FamilyChain& chain);
struct ChainDocument {
    IntPoly f;
    BigInt N;
    FamilyChain chain;
};
ChainDocument chain_from_json(const Json& j);

} // namespace jacmax
