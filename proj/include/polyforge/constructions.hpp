#pragma once

#include <polyforge/good.hpp>
#include <polyforge/polygon.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace polyforge {

class ConstructionError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

enum class PlanarKind { PointOnLine, PointOffLine, Baer };

std::string to_string(PlanarKind k);
PlanarKind planar_kind_from_string(const std::string & s);

/// 1-good structures of PG(2,q): all points of a line and all lines through
/// a point on it (size q+1); the same plus a point off the line and the line
/// itself, swapped roles (size q+2); a Baer subplane with its extended lines
/// (size q+sqrt(q)+1, q square). Point and line default to the first
/// admissible choice; for Baer the subplane is the canonical subfield one.
GoodStructure planar_one_good(const IncidencePolygon & plane, PlanarKind kind,
                              std::optional<std::size_t> point = std::nullopt,
                              std::optional<std::size_t> line = std::nullopt);

/// Points of PG(2,q) whose canonical coordinates lie in GF(sqrt q).
std::vector<std::uint32_t> baer_points(const IncidencePolygon & plane);

/// Linear map from the abstract plane PG(2,q) onto P^perp in W(3,q), given by
/// the images of the three unit vectors.
struct PlaneEmbedding
{
    std::size_t centre = 0;
    Rows columns;
};

/// Embedding of PG(2,q) onto P^perp sending the abstract point `anchor` to P.
PlaneEmbedding plane_embedding(const IncidencePolygon & w, std::size_t centre, const IncidencePolygon & plane,
                               std::size_t anchor);

Vec embed(const GaloisField & f, const PlaneEmbedding & e, const Vec & v);

/// Lift of a 1-good structure of P^perp to a 1-good structure of W(3,q).
GoodStructure lift_w3(const IncidencePolygon & w, const IncidencePolygon & plane, const GoodStructure & planar,
                      const PlaneEmbedding & emb);

/// Size predicted for the lift: q|P'| + 1 if P is in P', else q|P'| + q + 1.
std::size_t lift_size(unsigned q, std::size_t planar_size, bool centre_in_planar);

/// Every lift size obtainable from the three planar families.
std::set<std::size_t> lift_sizes(unsigned q);

// ---------------------------------------------------------------------------
// Hexagon construction.

enum class HexCase { A, B, CI, CII, DI, DII, Unknown };

std::string to_string(HexCase c);

struct HexCounts
{
    std::uint64_t x = 0;
    std::uint64_t y = 0;
    std::uint64_t l1 = 0;
    std::uint64_t l2 = 0;
    std::uint64_t l1l2 = 0;
    std::uint64_t alpha = 0;
    std::uint64_t beta = 0;
    std::uint64_t gamma = 0;
    std::uint64_t size = 0;
};

struct HexCaseReport
{
    HexCase hex_case = HexCase::Unknown;
    SectionTag section = SectionTag::OtherDegenerate;
    int dim_piA_meet_S = -1;
    /// Only meaningful in case (c): A lies in the hexagon plane of the cone vertex.
    bool A_in_piP = false;
    /// pi_A in S or S in T_A.
    bool containment_criterion = false;
    bool L2_subset_L1 = false;
    /// Identifier of the row of the |L1 cap L2| table used.
    std::string row;
    HexCounts counts;
    /// alpha/beta/gamma are only predicted when L2 is not contained in L1.
    bool has_abc = false;
};

/// A 4-space of PG(6,q) as the common kernel of two dual vectors.
struct FourSpace
{
    Subspace space;
    Rows dual;
};

FourSpace four_space_from_dual(const GaloisField & f, Rows dual);

/// All 4-spaces of PG(6,q) (one per line of the dual space).
std::vector<FourSpace> all_four_spaces(const GaloisField & f);

FourSpace random_four_space(const GaloisField & f, std::mt19937_64 & rng);

/// Precomputed data for many hexagon constructions on one H(q).
class HexagonContext
{
public:
    explicit HexagonContext(const Hexagon & hex);

    const Hexagon & hex() const { return *hex_; }
    const Graph & graph() const { return graph_; }
    /// Polygon distance between two points.
    int distance(std::size_t a, std::size_t b) const { return dist_[a][b]; }
    bool is_hexagon_line(const Subspace & l) const { return hex_->polygon.find_line(l).has_value(); }

private:
    const Hexagon * hex_;
    Graph graph_;
    std::vector<std::vector<int>> dist_;
};

/// Predictions: case analysis and the size tables.
HexCaseReport classify_case(const HexagonContext & ctx, const FourSpace & S, std::size_t A);

struct HexConstruction
{
    GoodStructure structure;
    /// Direct counts from the construction.
    HexCaseReport direct;
};

HexConstruction hexagon_good(const HexagonContext & ctx, const FourSpace & S, std::size_t A);

/// Sizes q^4+q^3+q^2+q+1+k over the listed k.
std::set<std::uint64_t> achievable_sizes(unsigned q);

} // namespace polyforge
