#include <polyforge/good.hpp>

#include <algorithm>

namespace polyforge {

void GoodStructure::normalize()
{
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    std::sort(lines.begin(), lines.end());
    lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
}

namespace {

std::vector<char> mask(std::size_t n, const std::vector<std::uint32_t> & ids)
{
    std::vector<char> m(n, 0);
    for (auto i : ids)
        if (i < n)
            m[i] = 1;
    return m;
}

} // namespace

Graph complement_subgraph(const IncidencePolygon & poly, const GoodStructure & g, std::vector<std::uint32_t> * labels)
{
    const auto np = poly.num_points();
    const auto in_p = mask(np, g.points);
    const auto in_l = mask(poly.num_lines(), g.lines);
    std::vector<std::int64_t> pid(np, -1);
    std::vector<std::int64_t> lid(poly.num_lines(), -1);
    std::vector<std::uint32_t> lab;
    for (std::size_t p = 0; p < np; ++p)
        if (!in_p[p]) {
            pid[p] = std::int64_t(lab.size());
            lab.push_back(std::uint32_t(p));
        }
    for (std::size_t l = 0; l < poly.num_lines(); ++l)
        if (!in_l[l]) {
            lid[l] = std::int64_t(lab.size());
            lab.push_back(std::uint32_t(np + l));
        }
    Graph h;
    h.adj.resize(lab.size());
    for (std::size_t p = 0; p < np; ++p) {
        if (pid[p] < 0)
            continue;
        for (auto l : poly.lines_on(p))
            if (lid[l] >= 0) {
                h.adj[pid[p]].push_back(std::uint32_t(lid[l]));
                h.adj[lid[l]].push_back(std::uint32_t(pid[p]));
            }
    }
    if (labels)
        *labels = std::move(lab);
    return h;
}

GoodReport verify_tgood(const IncidencePolygon & poly, const GoodStructure & g, bool with_girth)
{
    GoodReport r;
    for (auto p : g.points)
        if (p >= poly.num_points())
            r.ids_in_range = false;
    for (auto l : g.lines)
        if (l >= poly.num_lines())
            r.ids_in_range = false;
    if (!r.ids_in_range) {
        r.issues.push_back("element id out of range");
        return r;
    }
    const auto in_p = mask(poly.num_points(), g.points);
    const auto in_l = mask(poly.num_lines(), g.lines);
    r.sizes_equal = g.points.size() == g.lines.size();
    if (!r.sizes_equal)
        r.issues.push_back("point and line counts differ");
    for (std::size_t p = 0; p < poly.num_points(); ++p) {
        if (in_p[p])
            continue;
        unsigned c = 0;
        for (auto l : poly.lines_on(p))
            c += in_l[l];
        if (c != g.t)
            ++r.bad_points;
    }
    for (std::size_t l = 0; l < poly.num_lines(); ++l) {
        if (in_l[l])
            continue;
        unsigned c = 0;
        for (auto p : poly.points_on(l))
            c += in_p[p];
        if (c != g.t)
            ++r.bad_lines;
    }
    if (r.bad_points)
        r.issues.push_back(std::to_string(r.bad_points) + " outside points with a wrong count");
    if (r.bad_lines)
        r.issues.push_back(std::to_string(r.bad_lines) + " outside lines with a wrong count");

    const auto h = complement_subgraph(poly, g);
    r.subgraph_vertices = h.size();
    const unsigned k = poly.t() + 1 >= g.t ? poly.t() + 1 - g.t : 0;
    r.complement_degree = k;
    r.complement_regular = std::all_of(h.adj.begin(), h.adj.end(), [&](const auto & a) { return a.size() == k; });
    if (with_girth && h.size())
        r.complement_girth = graph_metrics(h).girth;
    r.valid = r.sizes_equal && r.bad_points == 0 && r.bad_lines == 0;
    return r;
}

std::vector<std::uint32_t> complement_domain(const IncidencePolygon & poly, const GoodStructure & g)
{
    std::vector<std::uint32_t> labels;
    complement_subgraph(poly, g, &labels);
    return labels;
}

std::vector<std::uint32_t> structure_domain(const IncidencePolygon & poly, const GoodStructure & g)
{
    std::vector<std::uint32_t> out(g.points.begin(), g.points.end());
    for (auto l : g.lines)
        out.push_back(std::uint32_t(poly.num_points() + l));
    std::sort(out.begin(), out.end());
    return out;
}

GoodStructure structure_from_domain(const IncidencePolygon & poly, const std::vector<std::uint32_t> & ids, unsigned t)
{
    GoodStructure g;
    g.t = t;
    for (auto i : ids) {
        if (i < poly.num_points())
            g.points.push_back(i);
        else
            g.lines.push_back(std::uint32_t(i - poly.num_points()));
    }
    g.normalize();
    return g;
}

} // namespace polyforge
