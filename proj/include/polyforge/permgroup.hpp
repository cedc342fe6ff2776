#pragma once

#include <polyforge/polygon.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace polyforge {

/// Permutation of 0..n-1 by its image array. Groups act on the right:
/// (a * b)(x) = b(a(x)).
using Perm = std::vector<std::uint32_t>;

Perm identity_perm(std::size_t n);
Perm compose(const Perm & a, const Perm & b);
Perm inverse(const Perm & a);
bool is_identity(const Perm & a);

class GroupError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Permutation group with a deterministic Schreier-Sims stabilizer chain.
/// base_prefix fixes the first base points (they get levels even when their
/// basic orbits are trivial).
class PermGroup
{
public:
    PermGroup(std::size_t degree, std::vector<Perm> generators, std::vector<std::uint32_t> base_prefix = {});

    std::size_t degree() const { return degree_; }
    const std::vector<Perm> & generators() const { return gens_; }

    std::uint64_t order() const;
    bool contains(const Perm & g) const;

    /// Adds g to the generators and updates the chain.
    void add_generator(const Perm & g);

    std::size_t levels() const { return levels_.size(); }
    std::uint32_t base_point(std::size_t level) const { return levels_[level].base; }
    std::vector<std::uint32_t> base() const;
    const std::vector<std::uint32_t> & basic_orbit(std::size_t level) const { return levels_[level].orbit; }
    /// u with base_point(level)^u = orbit point, or nullptr.
    const Perm * transversal(std::size_t level, std::uint32_t point) const;
    bool in_basic_orbit(std::size_t level, std::uint32_t point) const { return levels_[level].pos[point] >= 0; }

    /// Calls f on every element (in a fixed order) until f returns false.
    void for_each_element(const std::function<bool(const Perm &)> & f) const;

    Perm random_element(std::mt19937_64 & rng) const;

private:
    struct Level
    {
        std::uint32_t base = 0;
        std::vector<std::int32_t> pos;
        std::vector<std::uint32_t> orbit;
        std::vector<Perm> trans;
        std::vector<Perm> trans_inv;
        std::vector<std::uint32_t> gens;
        std::vector<std::uint32_t> checked;
    };

    void add_level(std::uint32_t base);
    void extend_orbit(std::size_t level);
    std::pair<Perm, std::size_t> strip(Perm h, std::size_t from) const;
    void complete(std::size_t from);
    void insert_strong(const Perm & y, std::size_t from, std::size_t to);

    std::size_t degree_;
    std::vector<Perm> gens_;
    std::vector<Perm> strong_;
    std::vector<Level> levels_;
};

/// Orbits of the group on the whole domain, each sorted, ordered by least element.
std::vector<std::vector<std::uint32_t>> orbits(const PermGroup & g);

/// Orbits restricted to a subset (exact when the subset is invariant).
std::vector<std::vector<std::uint32_t>> orbits_on(const PermGroup & g, const std::vector<std::uint32_t> & subset);

/// Sorted orbit lengths on a subset.
std::vector<std::size_t> orbit_lengths(const PermGroup & g, const std::vector<std::uint32_t> & subset);

enum class StabilizerMethod { Auto, Exhaustive, Backtrack };

/// Setwise stabilizer. Auto filters all elements when |G| <= ceiling and
/// otherwise runs a chain backtrack; Exhaustive throws above the ceiling.
PermGroup set_stabilizer(const PermGroup & g, const std::vector<std::uint32_t> & set,
                         StabilizerMethod method = StabilizerMethod::Auto, std::uint64_t ceiling = 10'000'000);

std::vector<std::uint32_t> image_of(const Perm & g, const std::vector<std::uint32_t> & set);

/// All images of a set (sorted vectors); throws GroupError past the ceiling.
std::vector<std::vector<std::uint32_t>> set_orbit(const PermGroup & g, const std::vector<std::uint32_t> & set,
                                                  std::size_t ceiling = 10'000'000);

/// Lexicographically least image of a set.
std::vector<std::uint32_t> minimal_image(const PermGroup & g, const std::vector<std::uint32_t> & set,
                                         std::size_t ceiling = 10'000'000);

/// Permutation of points followed by lines induced by x -> m x
/// (followed by the field automorphism a -> a^(p^frob)).
Perm induced_permutation(const IncidencePolygon & poly, const Rows & m, int frob = 0);

bool preserves_incidence(const IncidencePolygon & poly, const Perm & g);

/// Collineation group of PG(2,q) or W(3,q) on points + lines. Every
/// generator is checked to preserve incidence.
PermGroup collineation_group(const IncidencePolygon & poly);

/// Permutation of the incidence graph swapping points and lines: the
/// standard polarity of PG(2,q), or for W(3,q) with q even the map sending
/// a line to its Pluecker coordinates (p02, p13, p03, p12). Empty when no
/// such map is available.
std::optional<Perm> duality_permutation(const IncidencePolygon & poly);

/// Graph automorphism check that allows points and lines to be swapped.
bool preserves_adjacency(const IncidencePolygon & poly, const Perm & g);

/// Collineations together with the duality, when one exists.
PermGroup correlation_group(const IncidencePolygon & poly);

/// |P Gamma Sp(4,q)| and |P Gamma L(3,q)|.
std::uint64_t expected_collineation_order(PolygonKind kind, unsigned q);

} // namespace polyforge
