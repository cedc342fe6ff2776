#include <polyforge/polygon.hpp>

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

namespace polyforge {

std::string to_string(PolygonKind k)
{
    switch (k) {
    case PolygonKind::ProjectivePlane: return "pg2";
    case PolygonKind::Symplectic: return "w3";
    case PolygonKind::Hexagon: return "hexagon";
    }
    return "?";
}

PolygonKind polygon_kind_from_string(const std::string & s)
{
    if (s == "pg2")
        return PolygonKind::ProjectivePlane;
    if (s == "w3")
        return PolygonKind::Symplectic;
    if (s == "hexagon" || s == "h")
        return PolygonKind::Hexagon;
    throw std::invalid_argument("unknown polygon kind '" + s + "' (expected pg2, w3 or hexagon)");
}

std::vector<int> distances_from(const Graph & g, std::uint32_t source)
{
    std::vector<int> dist(g.size(), -1);
    std::deque<std::uint32_t> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        auto u = queue.front();
        queue.pop_front();
        for (auto v : g.adj[u])
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
    }
    return dist;
}

GraphMetrics graph_metrics(const Graph & g)
{
    GraphMetrics m;
    for (const auto & nbrs : g.adj)
        ++m.degree_histogram[nbrs.size()];

    unsigned best = ~0u;
    unsigned diameter = 0;
    bool connected = true;
    std::vector<int> dist(g.size());
    std::vector<std::int64_t> parent(g.size());
    for (std::uint32_t root = 0; root < g.size(); ++root) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(parent.begin(), parent.end(), -1);
        std::deque<std::uint32_t> queue{root};
        dist[root] = 0;
        while (!queue.empty()) {
            auto u = queue.front();
            queue.pop_front();
            for (auto v : g.adj[u]) {
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                }
                else if (parent[u] != std::int64_t(v)) {
                    best = std::min(best, unsigned(dist[u] + dist[v] + 1));
                }
            }
        }
        for (auto d : dist) {
            if (d < 0)
                connected = false;
            else
                diameter = std::max(diameter, unsigned(d));
        }
    }
    if (best != ~0u)
        m.girth = best;
    if (connected && !g.adj.empty())
        m.diameter = diameter;
    return m;
}

Graph cycle_graph(std::size_t n)
{
    Graph g;
    g.adj.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        g.adj[i].push_back(std::uint32_t((i + 1) % n));
        g.adj[i].push_back(std::uint32_t((i + n - 1) % n));
    }
    return g;
}

IncidencePolygon::IncidencePolygon(PolygonKind kind, unsigned gon, unsigned s, unsigned t, FieldPtr field,
                                   unsigned ambient, std::vector<Vec> points, std::vector<Subspace> lines) :
    kind_(kind),
    gon_(gon),
    s_(s),
    t_(t),
    field_(std::move(field)),
    ambient_(ambient),
    points_(std::move(points)),
    lines_(std::move(lines))
{
    const auto & f = *field_;
    for (std::uint32_t i = 0; i < points_.size(); ++i) {
        if (points_[i].size() != ambient_ + 1)
            throw GeometryError("point " + std::to_string(i) + " has wrong coordinate length");
        if (normalize(f, points_[i]) != points_[i] || is_zero(points_[i]))
            throw GeometryError("point " + std::to_string(i) + " is not in canonical form");
        if (!point_lookup_.emplace(points_[i], i).second)
            throw GeometryError("duplicate point " + std::to_string(i));
    }
    point_lines_.resize(points_.size());
    line_points_.resize(lines_.size());
    const std::size_t words = (lines_.size() + 63) / 64;
    incidence_.assign(points_.size() * words, 0);
    for (std::uint32_t l = 0; l < lines_.size(); ++l) {
        if (lines_[l].dim() != 1 || lines_[l].ambient() != ambient_)
            throw GeometryError("line " + std::to_string(l) + " is not a line of PG(" + std::to_string(ambient_) +
                                ",q)");
        if (!line_lookup_.emplace(lines_[l].key(), l).second)
            throw GeometryError("duplicate line " + std::to_string(l));
        for (const auto & pt : lines_[l].points(f)) {
            auto it = point_lookup_.find(pt);
            if (it == point_lookup_.end())
                continue;
            const auto p = it->second;
            line_points_[l].push_back(p);
            point_lines_[p].push_back(l);
            incidence_[p * words + l / 64] |= std::uint64_t(1) << (l % 64);
        }
    }
    for (auto & v : line_points_)
        std::sort(v.begin(), v.end());
}

bool IncidencePolygon::incident(std::size_t p, std::size_t l) const
{
    const std::size_t words = (lines_.size() + 63) / 64;
    return (incidence_[p * words + l / 64] >> (l % 64)) & 1;
}

std::optional<std::size_t> IncidencePolygon::find_point(const Vec & v) const
{
    if (v.size() != ambient_ + 1 || is_zero(v))
        return std::nullopt;
    auto it = point_lookup_.find(normalize(*field_, v));
    if (it == point_lookup_.end())
        return std::nullopt;
    return it->second;
}

std::optional<std::size_t> IncidencePolygon::find_line(const Subspace & s) const
{
    auto it = line_lookup_.find(s.key());
    if (it == line_lookup_.end())
        return std::nullopt;
    return it->second;
}

std::size_t IncidencePolygon::point_index(const Vec & v) const
{
    auto i = find_point(v);
    if (!i)
        throw GeometryError("vector is not a point of " + name());
    return *i;
}

std::size_t IncidencePolygon::line_index(const Subspace & s) const
{
    auto i = find_line(s);
    if (!i)
        throw GeometryError("subspace is not a line of " + name());
    return *i;
}

Graph IncidencePolygon::graph() const
{
    Graph g;
    const auto np = std::uint32_t(points_.size());
    g.adj.resize(num_vertices());
    for (std::uint32_t p = 0; p < np; ++p)
        for (auto l : point_lines_[p])
            g.adj[p].push_back(np + l);
    for (std::uint32_t l = 0; l < lines_.size(); ++l)
        for (auto p : line_points_[l])
            g.adj[np + l].push_back(p);
    return g;
}

std::string IncidencePolygon::name() const
{
    const auto qs = std::to_string(q());
    switch (kind_) {
    case PolygonKind::ProjectivePlane: return "PG(2," + qs + ")";
    case PolygonKind::Symplectic: return "W(3," + qs + ")";
    case PolygonKind::Hexagon: return "H(" + qs + ")";
    }
    return "?";
}

std::uint64_t polygon_point_count(unsigned gon, unsigned q)
{
    const std::uint64_t Q = q;
    switch (gon) {
    case 3: return Q * Q + Q + 1;
    case 4: return (Q + 1) * (Q * Q + 1);
    case 6: return (Q + 1) * (Q * Q * Q * Q + Q * Q + 1);
    }
    throw std::invalid_argument("generalized polygons of order q exist only for n in {3,4,6}");
}

PolygonCheck verify_polygon(const IncidencePolygon & poly)
{
    PolygonCheck c;
    c.metrics = graph_metrics(poly.graph());
    c.regular = true;
    for (std::size_t p = 0; p < poly.num_points(); ++p)
        if (poly.lines_on(p).size() != poly.t() + 1)
            c.regular = false;
    for (std::size_t l = 0; l < poly.num_lines(); ++l)
        if (poly.points_on(l).size() != poly.s() + 1)
            c.regular = false;
    const bool girth_ok = c.metrics.girth && *c.metrics.girth == 2 * poly.gon();
    const bool diam_ok = c.metrics.diameter && *c.metrics.diameter == poly.gon();
    c.ok = c.regular && girth_ok && diam_ok;
    if (!c.regular)
        c.detail += "not (s+1,t+1)-regular; ";
    if (!girth_ok)
        c.detail += "girth is not " + std::to_string(2 * poly.gon()) + "; ";
    if (!diam_ok)
        c.detail += "diameter is not " + std::to_string(poly.gon()) + "; ";
    return c;
}

namespace {

std::vector<Subspace> sorted_unique(std::vector<Subspace> v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

} // namespace

IncidencePolygon build_pg2(unsigned q)
{
    auto field = GaloisField::of_order(q);
    const auto & f = *field;
    ProjectiveSpace space(2, field);
    std::vector<Subspace> lines;
    for (const auto & u : space.points())
        lines.push_back(Subspace::from_rows(f, 2, null_space(f, {u}, 3)));
    return IncidencePolygon(PolygonKind::ProjectivePlane, 3, q, q, field, 2, space.points(),
                            sorted_unique(std::move(lines)));
}

SymplecticForm w3_form(const GaloisField & f)
{
    return SymplecticForm::standard(f, 3);
}

IncidencePolygon build_w3(unsigned q)
{
    auto field = GaloisField::of_order(q);
    const auto & f = *field;
    ProjectiveSpace space(3, field);
    const auto form = w3_form(f);
    std::vector<Subspace> lines;
    const auto & pts = space.points();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (form(f, pts[i], pts[j]) == 0)
                lines.push_back(Subspace::from_rows(f, 3, {pts[i], pts[j]}));
    return IncidencePolygon(PolygonKind::Symplectic, 4, q, q, field, 3, pts, sorted_unique(std::move(lines)));
}

namespace {

// Linear Grassmann conditions selecting the hexagon lines among the lines of
// X0X4 + X1X5 + X2X6 = X3^2:
// p12 = p34, p54 = p32, p20 = p35, p65 = p30, p01 = p36, p46 = p31.
bool is_hexagon_line(const GaloisField & f, const Subspace & line)
{
    const Vec & x = line.basis()[0];
    const Vec & y = line.basis()[1];
    auto p = [&](unsigned i, unsigned j) { return f.sub(f.mul(x[i], y[j]), f.mul(x[j], y[i])); };
    return p(1, 2) == p(3, 4) && p(5, 4) == p(3, 2) && p(2, 0) == p(3, 5) && p(6, 5) == p(3, 0) &&
           p(0, 1) == p(3, 6) && p(4, 6) == p(3, 1);
}

void require(bool cond, const std::string & what)
{
    if (!cond)
        throw PolygonError("split Cayley hexagon verification failed: " + what);
}

} // namespace

Hexagon build_hexagon(unsigned q)
{
    auto field = GaloisField::of_order(q);
    const auto & f = *field;
    auto quadric = QuadraticForm::parabolic6(f);
    ProjectiveSpace space(6, field);

    std::vector<Vec> qpoints;
    for (const auto & pt : space.points())
        if (quadric.eval(f, pt) == 0)
            qpoints.push_back(pt);
    require(qpoints.size() == polygon_point_count(6, q), "point count of Q(6,q)");

    std::vector<Subspace> qlines;
    for (std::size_t i = 0; i < qpoints.size(); ++i)
        for (std::size_t j = i + 1; j < qpoints.size(); ++j)
            if (quadric.polar(f, qpoints[i], qpoints[j]) == 0)
                qlines.push_back(Subspace::from_rows(f, 6, {qpoints[i], qpoints[j]}));
    qlines = sorted_unique(std::move(qlines));

    std::vector<Subspace> hlines;
    std::vector<Subspace> ideal;
    for (const auto & l : qlines)
        (is_hexagon_line(f, l) ? hlines : ideal).push_back(l);

    IncidencePolygon poly(PolygonKind::Hexagon, 6, q, q, field, 6, qpoints, hlines);
    const auto check = verify_polygon(poly);
    require(check.ok, check.detail);

    HexagonAnnotations ann;
    std::unordered_map<Vec, std::uint32_t, VecHash> hex_plane_centre;
    for (std::uint32_t p = 0; p < poly.num_points(); ++p) {
        Rows rows;
        for (auto l : poly.lines_on(p))
            for (const auto & r : poly.line(l).basis())
                rows.push_back(r);
        auto plane = Subspace::from_rows(f, 6, std::move(rows));
        require(plane.dim() == 2, "lines through a point do not span a plane");
        require(quadric.points_in(f, plane).size() == std::size_t(q) * q + q + 1, "hexagon plane is not singular");
        require(hex_plane_centre.emplace(plane.key(), p).second, "two points share a hexagon plane");
        ann.hex_planes.push_back(std::move(plane));
    }

    // Planes of Q(6,q), collected through each quadric line.
    std::vector<Subspace> qplanes;
    for (const auto & l : qlines) {
        std::set<Subspace> through;
        for (const auto & x : qpoints) {
            if (quadric.polar(f, x, l.basis()[0]) != 0 || quadric.polar(f, x, l.basis()[1]) != 0)
                continue;
            if (l.contains_point(f, x))
                continue;
            through.insert(span(f, l, Subspace::point(f, x)));
        }
        require(through.size() == q + 1, "a quadric line is not on q+1 quadric planes");
        if (poly.find_line(l))
            for (const auto & pl : through)
                require(hex_plane_centre.count(pl.key()) == 1, "a plane on a hexagon line is not a hexagon plane");
        qplanes.insert(qplanes.end(), through.begin(), through.end());
    }
    qplanes = sorted_unique(std::move(qplanes));

    for (const auto & pl : qplanes) {
        if (hex_plane_centre.count(pl.key()))
            continue;
        for (const auto & l : hlines)
            require(!pl.contains(f, l), "a non-hexagon plane contains a hexagon line");
        ann.ideal_planes.push_back(pl);
    }

    for (const auto & l : ideal) {
        std::vector<std::uint32_t> centres;
        for (std::uint32_t p = 0; p < poly.num_points(); ++p)
            if (ann.hex_planes[p].contains(f, l))
                centres.push_back(p);
        require(centres.size() == 1, "an ideal line is not on a unique hexagon plane");
        ann.ideal_lines.push_back(l);
        ann.ideal_line_centre.push_back(centres.front());
    }

    // Points at distance <= 4 from P are the quadric points collinear with P.
    const auto g = poly.graph();
    for (std::uint32_t p = 0; p < poly.num_points(); ++p) {
        const auto dist = distances_from(g, p);
        for (std::uint32_t x = 0; x < poly.num_points(); ++x) {
            const bool near = dist[x] >= 0 && dist[x] <= 4;
            require(near == (quadric.polar(f, qpoints[p], qpoints[x]) == 0), "distance-4 neighbourhood is not P^perp");
        }
    }

    return Hexagon{std::move(poly), std::move(quadric), std::move(qlines), std::move(qplanes), std::move(ann)};
}

std::vector<std::uint32_t> collinear_set(const IncidencePolygon & hex, std::size_t x)
{
    std::vector<std::uint32_t> out;
    for (auto l : hex.lines_on(x))
        for (auto y : hex.points_on(l))
            if (y != x)
                out.push_back(y);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

IncidencePolygon build_polygon(PolygonKind kind, unsigned q)
{
    switch (kind) {
    case PolygonKind::ProjectivePlane: return build_pg2(q);
    case PolygonKind::Symplectic: return build_w3(q);
    case PolygonKind::Hexagon: return build_hexagon(q).polygon;
    }
    throw std::invalid_argument("unknown polygon kind");
}

} // namespace polyforge
