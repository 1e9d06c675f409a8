#pragma once

// Witness primes for the discriminant-valuation condition on a list of
// hyperelliptic curves, the verification table, and the mod-2 symmetric
// group certificate built from Frobenius factor shapes.

#include "jacmax/bigint_poly.hpp"
#include "jacmax/json_io.hpp"
#include "jacmax/modp_poly.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace jacmax {

/// y^2 = f(x) with f separable of even degree >= 6 (genus >= 2).
struct CurveInput {
    std::string label;
    IntPoly f;
    int genus = 0;
    BigInt disc;

    // Computes disc and genus; DomainError when f is not separable or the
    // degree is odd or below 6.
    static CurveInput make(std::string label, IntPoly f);
};

/// floor((deg f - 1) / 2)
int hyperelliptic_genus(const IntPoly& f);

enum class WitnessStatus { Certified, Inconclusive };

struct CurveWitness {
    std::size_t index = 0;
    std::string label;
    WitnessStatus status = WitnessStatus::Inconclusive;
    std::optional<std::uint64_t> ell;          // first witness
    std::vector<std::uint64_t> candidates;     // every witness <= bound, ascending
    std::vector<unsigned long> valuation_row;  // ord_ell(disc_j) for all j (empty if none)
};

struct PrimeWitnessSet {
    std::uint64_t bound = 0;
    std::vector<CurveWitness> curves;

    bool all_certified() const;
};

/// For each curve, the primes 2 < p <= bound with ord_p(disc_i) = 1 and
/// p not dividing disc_j for j != i. DomainError on duplicate labels or an
/// empty curve list.
PrimeWitnessSet find_witnesses(const std::vector<CurveInput>& curves, std::uint64_t bound);

struct ClaimedWitness {
    std::size_t index;
    BigInt ell;
};

struct WitnessTable {
    // rows follow the claims, columns the curves
    std::vector<std::vector<unsigned long>> valuations;
    std::vector<std::vector<bool>> checks;
    bool all_pass = false;
};

/// checks[r][j] is ord(disc_j) == 1 when j is the claim's curve, == 0
/// otherwise. DomainError for ell <= 2, a non-prime ell or a bad index.
WitnessTable verify_witnesses(const std::vector<CurveInput>& curves,
                              const std::vector<ClaimedWitness>& claimed);

enum class SnRoute {
    Jordan,         // n-cycle, {q,1,...,1} with n/2 < q < n-2 prime, odd shape
    Transposition,  // n-cycle, {n-1,1}, one 2-cycle with the rest odd
};

struct ShapeWitness {
    std::uint64_t prime = 0;
    FactorShape shape;
};

struct SnCertificate {
    SnRoute route = SnRoute::Jordan;
    ShapeWitness irreducible;
    ShapeWitness cycle;      // {q,1,...,1} or {n-1,1}
    ShapeWitness odd;        // odd sign, or one transposition times odd cycles
    std::uint64_t searched_bound = 0;
};

struct SnOutcome {
    std::optional<SnCertificate> certificate;
    // first prime at which each distinct shape was seen, ascending by prime
    std::vector<ShapeWitness> shapes_seen;
    std::uint64_t searched_bound = 0;
};

/// (-1)^(n - #factors) for a squarefree shape.
int shape_sign(const FactorShape& s);

/// Scans primes 2 < p <= prime_bound not dividing lc(f) disc(f) in ascending
/// order until the certificate is complete. Shapes of a block of primes may
/// be computed on several threads; the result does not depend on `threads`.
/// DomainError for deg f < 5 or disc f = 0.
SnOutcome sn_certificate(const IntPoly& f, std::uint64_t prime_bound, unsigned threads = 1);

/// Hypotheses of the maximal-image criterion that are assumed rather than
/// computed, echoed into every report.
std::vector<std::string> criterion_assumptions(std::size_t curve_count);

// JSON encodings; each *_from_json inverts the matching *_to_json.
Json to_json(const FactorShape& s);
FactorShape factor_shape_from_json(const Json& j);
Json to_json(const PrimeWitnessSet& w);
PrimeWitnessSet witness_set_from_json(const Json& j);
Json to_json(const SnCertificate& c);
SnCertificate sn_certificate_from_json(const Json& j);
Json to_json(const WitnessTable& t);

std::vector<CurveInput> curves_from_json(const Json& j);
Json curves_to_json(const std::vector<CurveInput>& curves);

/// {"curves", "witnesses", "table", "assumptions", "status"}
Json certify_report(const std::vector<CurveInput>& curves, const PrimeWitnessSet& w,
                    const WitnessTable& t);

} // namespace jacmax
