#pragma once

#include <polyforge/polygon.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace polyforge {

/// Point and line index sets of a t-good structure. Ids are kept sorted.
struct GoodStructure
{
    std::vector<std::uint32_t> points;
    std::vector<std::uint32_t> lines;
    unsigned t = 1;
    /// Construction name and parameters, free form.
    std::string provenance;

    std::size_t size() const { return points.size(); }
    void normalize();
    bool operator==(const GoodStructure & o) const { return points == o.points && lines == o.lines && t == o.t; }
};

struct GoodReport
{
    bool valid = false;
    bool sizes_equal = false;
    /// Outside points / lines with the wrong number of inside neighbours.
    std::size_t bad_points = 0;
    std::size_t bad_lines = 0;
    bool ids_in_range = true;
    std::size_t subgraph_vertices = 0;
    bool complement_regular = false;
    unsigned complement_degree = 0;
    std::optional<unsigned> complement_girth;
    std::vector<std::string> issues;
};

/// Complement subgraph: the points and lines outside the structure, with
/// vertex ids mapped to 0..k-1. `labels` receives the original ids
/// (points first, then lines offset by num_points).
Graph complement_subgraph(const IncidencePolygon & poly, const GoodStructure & g,
                          std::vector<std::uint32_t> * labels = nullptr);

/// Checks both defining conditions and the regularity of the complement;
/// girth is computed only when requested.
GoodReport verify_tgood(const IncidencePolygon & poly, const GoodStructure & g, bool with_girth = true);

/// Ids of the complement as one combined domain: points p, lines num_points + l.
std::vector<std::uint32_t> complement_domain(const IncidencePolygon & poly, const GoodStructure & g);
std::vector<std::uint32_t> structure_domain(const IncidencePolygon & poly, const GoodStructure & g);

/// Inverse of structure_domain.
GoodStructure structure_from_domain(const IncidencePolygon & poly, const std::vector<std::uint32_t> & ids,
                                    unsigned t = 1);

} // namespace polyforge
