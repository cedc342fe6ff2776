#pragma once

#include <polyforge/geometry.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace polyforge {

enum class PolygonKind { ProjectivePlane, Symplectic, Hexagon };

std::string to_string(PolygonKind k);
PolygonKind polygon_kind_from_string(const std::string & s);

/// Simple undirected graph as adjacency lists.
struct Graph
{
    std::vector<std::vector<std::uint32_t>> adj;

    std::size_t size() const { return adj.size(); }
};

/// Girth and diameter are empty when infinite (acyclic / disconnected).
struct GraphMetrics
{
    std::optional<unsigned> girth;
    std::optional<unsigned> diameter;
    std::map<std::size_t, std::size_t> degree_histogram;

    bool regular(std::size_t d) const
    {
        return degree_histogram.size() == 1 && degree_histogram.begin()->first == d;
    }
};

GraphMetrics graph_metrics(const Graph & g);

/// BFS distances; -1 for unreachable vertices.
std::vector<int> distances_from(const Graph & g, std::uint32_t source);

/// Cycle graph C_n.
Graph cycle_graph(std::size_t n);

/// A point-line geometry embedded in PG(n, q): points are canonical
/// coordinate vectors, lines are subspaces of projective dimension 1.
/// Graph vertices are the points 0..P-1 followed by the lines P..P+L-1.
class IncidencePolygon
{
public:
    IncidencePolygon(PolygonKind kind, unsigned gon, unsigned s, unsigned t, FieldPtr field, unsigned ambient,
                     std::vector<Vec> points, std::vector<Subspace> lines);

    PolygonKind kind() const { return kind_; }
    unsigned gon() const { return gon_; }
    unsigned s() const { return s_; }
    unsigned t() const { return t_; }
    unsigned q() const { return field_->q(); }
    const GaloisField & field() const { return *field_; }
    const FieldPtr & field_ptr() const { return field_; }
    unsigned ambient() const { return ambient_; }

    std::size_t num_points() const { return points_.size(); }
    std::size_t num_lines() const { return lines_.size(); }
    std::size_t num_vertices() const { return points_.size() + lines_.size(); }

    const std::vector<Vec> & points() const { return points_; }
    const std::vector<Subspace> & lines() const { return lines_; }
    const Vec & point(std::size_t i) const { return points_[i]; }
    const Subspace & line(std::size_t i) const { return lines_[i]; }

    const std::vector<std::uint32_t> & lines_on(std::size_t p) const { return point_lines_[p]; }
    const std::vector<std::uint32_t> & points_on(std::size_t l) const { return line_points_[l]; }
    bool incident(std::size_t p, std::size_t l) const;

    std::optional<std::size_t> find_point(const Vec & v) const;
    std::optional<std::size_t> find_line(const Subspace & s) const;
    std::size_t point_index(const Vec & v) const;
    std::size_t line_index(const Subspace & s) const;

    /// Bipartite incidence graph.
    Graph graph() const;

    /// Short descriptor such as "W(3,3)".
    std::string name() const;

private:
    PolygonKind kind_;
    unsigned gon_;
    unsigned s_;
    unsigned t_;
    FieldPtr field_;
    unsigned ambient_;
    std::vector<Vec> points_;
    std::vector<Subspace> lines_;
    std::vector<std::vector<std::uint32_t>> point_lines_;
    std::vector<std::vector<std::uint32_t>> line_points_;
    std::vector<std::uint64_t> incidence_;
    std::unordered_map<Vec, std::uint32_t, VecHash> point_lookup_;
    std::unordered_map<Vec, std::uint32_t, VecHash> line_lookup_;
};

struct PolygonCheck
{
    bool regular = false;
    GraphMetrics metrics;
    bool ok = false;
    std::string detail;
};

/// Regularity (s+1, t+1), girth 2n and diameter n.
PolygonCheck verify_polygon(const IncidencePolygon & poly);

/// Number of points of a generalized n-gon of order (q, q).
std::uint64_t polygon_point_count(unsigned gon, unsigned q);

IncidencePolygon build_pg2(unsigned q);
IncidencePolygon build_w3(unsigned q);

/// The symplectic form defining W(3, q).
SymplecticForm w3_form(const GaloisField & f);

struct HexagonAnnotations
{
    /// pi_P for each point index P.
    std::vector<Subspace> hex_planes;
    std::vector<Subspace> ideal_planes;
    std::vector<Subspace> ideal_lines;
    /// For each ideal line, the centre of the unique hexagon plane containing it.
    std::vector<std::uint32_t> ideal_line_centre;
};

struct Hexagon
{
    IncidencePolygon polygon;
    QuadraticForm quadric;
    std::vector<Subspace> quadric_lines;
    std::vector<Subspace> quadric_planes;
    HexagonAnnotations annotations;
};

class PolygonError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Split Cayley hexagon H(q) in Q(6, q); every structural property is
/// verified and a PolygonError is thrown on any failure.
Hexagon build_hexagon(unsigned q);

/// Points of H(q) collinear with x (excluding x).
std::vector<std::uint32_t> collinear_set(const IncidencePolygon & hex, std::size_t x);

/// Build a polygon of the given kind and order.
IncidencePolygon build_polygon(PolygonKind kind, unsigned q);

} // namespace polyforge
