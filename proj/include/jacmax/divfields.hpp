#pragma once

// Abelian number fields as fixed fields of subgroups H of (Z/N)^x inside
// Q(zeta_N). Intersections of fields are joins of subgroups.

#include "jacmax/json_io.hpp"
#include "jacmax/quadratic.hpp"

#include <cstdint>
#include <vector>

namespace jacmax {

struct DivfieldOptions {
    // largest phi(N) for which unit groups are materialized
    std::uint64_t cap = std::uint64_t{1} << 20;
};

class AbelianField {
public:
    AbelianField() = default;

    /// Fixed field of <gens> in Q(zeta_N). Generators must be units mod N.
    static AbelianField from_generators(std::uint32_t n, const std::vector<std::uint32_t>& gens,
                                        const DivfieldOptions& opts = {});
    static AbelianField rationals();
    static AbelianField cyclotomic(std::uint32_t m, const DivfieldOptions& opts = {});

    std::uint32_t level() const noexcept { return n_; }
    const std::vector<std::uint32_t>& subgroup() const noexcept { return h_; }
    std::vector<std::uint32_t> generators() const;
    bool canonical() const noexcept { return canonical_; }
    std::uint64_t degree() const;

    /// Same field at the minimal level (the conductor).
    AbelianField canonicalize() const;
    /// Same field at level l, a multiple of level().
    AbelianField lift(std::uint32_t l, const DivfieldOptions& opts = {}) const;
    /// Whether the kernel of (Z/N)^x -> (Z/d)^x lies in H, i.e. the field sits in Q(zeta_d).
    bool inside_cyclotomic(std::uint32_t d) const;

    friend bool operator==(const AbelianField& a, const AbelianField& b)
    {
        return a.n_ == b.n_ && a.h_ == b.h_;
    }

private:
    std::uint32_t n_ = 1;
    std::vector<std::uint32_t> h_{0}; // sorted residues
    bool canonical_ = true;
};

/// Units of Z/n in increasing order; InconclusiveError beyond the cap.
std::vector<std::uint32_t> unit_residues(std::uint32_t n, const DivfieldOptions& opts = {});

/// Q(zeta_m)(sqrt(Delta_i^(m+1))), canonicalized.
AbelianField field_from_data(std::uint32_t m, const std::vector<BigInt>& deltas, const DivfieldOptions& opts = {});

/// Canonical descriptor of the intersection.
AbelianField intersect(const AbelianField& a, const AbelianField& b, const DivfieldOptions& opts = {});

AbelianField division_intersection(std::uint32_t m1, std::uint32_t m2, const std::vector<BigInt>& deltas_a,
                                   const std::vector<BigInt>& deltas_b, const DivfieldOptions& opts = {});

struct QuadraticSubfield {
    BigInt d; // squarefree
    bool in_cyclotomic = false; // contained in Q(zeta_c) below
};

struct FieldDescription {
    std::uint64_t degree = 1;
    std::uint32_t conductor = 1;
    // largest c with Q(zeta_c) inside the field, c not 2 mod 4
    std::uint32_t cyclotomic = 1;
    std::vector<QuadraticSubfield> quadratics;
    // Q(zeta_c) and the listed quadratic fields generate the whole field
    bool generated = true;
};

FieldDescription describe(const AbelianField& k);

Json to_json(const AbelianField& k);
Json to_json(const FieldDescription& d);

} // namespace jacmax
