#pragma once

// Finite subgroups of GL_D(Z/m) through a stabilizer chain on the natural
// action on (Z/m)^D.

#include "jacmax/bigint_poly.hpp"
#include "jacmax/mod_matrix.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

namespace jacmax {

using ModVector = std::vector<ModMatrix::Entry>;

struct GroupOptions {
    // Points forced to the front of the base, in this order. The pointwise
    // stabilizer of these points is then a level of the chain.
    std::vector<ModVector> base_prefix;
    // A known upper bound for |G|. When the chain reaches it, the
    // exhaustive Schreier test is skipped.
    std::optional<BigInt> order_bound;
    // Materialize the element list when |G| <= enumeration_cap.
    bool enumerate = false;
    std::size_t enumeration_cap = 200000;
    // InconclusiveError when a basic orbit grows past this.
    std::size_t max_orbit = std::size_t{1} << 21;
    std::uint64_t seed = 0x5eed;
};

class FiniteMatrixGroup {
public:
    FiniteMatrixGroup() = default;
    // Generators must be invertible D x D matrices mod m with m^D < 2^64.
    FiniteMatrixGroup(std::uint32_t modulus, unsigned dim, std::vector<ModMatrix> generators,
                      GroupOptions options = {});

    std::uint32_t modulus() const noexcept { return m_; }
    unsigned dim() const noexcept { return n_; }
    const std::vector<ModMatrix>& generators() const noexcept { return gens_; }
    const GroupOptions& options() const noexcept { return opt_; }

    const BigInt& order() const noexcept { return order_; }
    bool is_trivial() const { return order_ == 1; }
    bool contains(const ModMatrix& a) const;
    // Uniform random element.
    ModMatrix random_element(std::mt19937_64& rng) const;

    // Order of the pointwise stabilizer of the base prefix.
    BigInt prefix_stabilizer_order() const;
    std::vector<ModVector> base() const;
    std::vector<std::size_t> orbit_sizes() const;

    // Adds a generator and updates the chain; drops any cached element list.
    void add_generator(const ModMatrix& a);

    bool enumerated() const noexcept { return enumerated_; }
    // Element list; DomainError unless enumerated().
    const std::vector<ModMatrix>& elements() const;
    // Builds the element list if |G| <= cap. Returns enumerated().
    bool enumerate(std::size_t cap);

    ModMatrix identity() const { return ModMatrix::identity(m_, n_); }

private:
    using Point = std::uint64_t;

    struct Level {
        Point point = 0;
        std::vector<ModMatrix> gens, gens_inv;
        std::vector<Point> orbit;
        std::unordered_map<Point, std::uint32_t> index;
        std::vector<ModMatrix> u, u_inv;
        std::vector<std::size_t> tested;
    };

    struct SiftResult {
        ModMatrix residue;
        std::size_t level;
    };

    Point encode(const ModVector& v) const;
    ModVector decode(Point p) const;
    Point act(const ModMatrix& a, Point p) const;

    void check_matrix(const ModMatrix& a) const;
    void push_level(Point p);
    void add_to_level(std::size_t i, const ModMatrix& g, const ModMatrix& g_inv);
    void extend_orbit(std::size_t i, std::size_t first_new_gen);
    SiftResult sift(ModMatrix g, std::size_t from) const;
    // Deepest level touched, or nullopt when g sifted through.
    std::optional<std::size_t> absorb(const ModMatrix& g, std::size_t from);
    std::optional<Point> first_moved(const ModMatrix& h) const;
    void complete(std::size_t top);
    void random_phase();
    void refresh_order();
    bool reached_bound() const;

    std::uint32_t m_ = 0;
    unsigned n_ = 0;
    std::vector<ModMatrix> gens_;
    GroupOptions opt_;
    std::vector<Point> candidates_;
    std::size_t prefix_len_ = 0;
    std::vector<Level> levels_;
    BigInt order_ = 1;
    bool enumerated_ = false;
    std::vector<ModMatrix> elements_;
};

// Smallest subgroup containing X and normalized by G. X must lie in G.
FiniteMatrixGroup normal_closure(const FiniteMatrixGroup& g, const std::vector<ModMatrix>& x,
                                 GroupOptions options = {});

// Normal closure of the commutators of generator pairs.
FiniteMatrixGroup derived_subgroup(const FiniteMatrixGroup& g, GroupOptions options = {});

} // namespace jacmax
