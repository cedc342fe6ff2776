#include <polyforge/constructions.hpp>

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_set>

namespace polyforge {

std::string to_string(PlanarKind k)
{
    switch (k) {
    case PlanarKind::PointOnLine: return "point-on-line";
    case PlanarKind::PointOffLine: return "point-off-line";
    case PlanarKind::Baer: return "baer";
    }
    return "?";
}

PlanarKind planar_kind_from_string(const std::string & s)
{
    if (s == "point-on-line")
        return PlanarKind::PointOnLine;
    if (s == "point-off-line")
        return PlanarKind::PointOffLine;
    if (s == "baer")
        return PlanarKind::Baer;
    throw std::invalid_argument("unknown planar kind '" + s + "' (expected point-on-line, point-off-line or baer)");
}

std::vector<std::uint32_t> baer_points(const IncidencePolygon & plane)
{
    const auto & f = plane.field();
    if (f.e() % 2 != 0)
        throw ConstructionError("Baer subplanes need a square order, got q = " + std::to_string(f.q()));
    std::vector<std::uint32_t> out;
    for (std::uint32_t p = 0; p < plane.num_points(); ++p) {
        const auto & v = plane.point(p);
        if (std::all_of(v.begin(), v.end(), [&](Elem c) { return f.in_subfield(c, f.e() / 2); }))
            out.push_back(p);
    }
    return out;
}

GoodStructure planar_one_good(const IncidencePolygon & plane, PlanarKind kind, std::optional<std::size_t> point,
                              std::optional<std::size_t> line)
{
    if (plane.kind() != PolygonKind::ProjectivePlane)
        throw ConstructionError("planar structures need PG(2,q)");
    if (point && *point >= plane.num_points())
        throw ConstructionError("point index out of range");
    if (line && *line >= plane.num_lines())
        throw ConstructionError("line index out of range");

    GoodStructure g;
    g.t = 1;
    if (kind == PlanarKind::Baer) {
        g.points = baer_points(plane);
        std::vector<char> in(plane.num_points(), 0);
        for (auto p : g.points)
            in[p] = 1;
        for (std::uint32_t l = 0; l < plane.num_lines(); ++l) {
            std::size_t c = 0;
            for (auto p : plane.points_on(l))
                c += in[p];
            if (c >= 2)
                g.lines.push_back(l);
        }
        g.provenance = "planar kind=baer";
        g.normalize();
        return g;
    }

    const bool on = kind == PlanarKind::PointOnLine;
    std::size_t l0 = 0;
    std::size_t p0 = 0;
    if (line && point) {
        l0 = *line;
        p0 = *point;
    }
    else if (line) {
        l0 = *line;
        p0 = 0;
        while (plane.incident(p0, l0) != on)
            ++p0;
    }
    else {
        p0 = point.value_or(0);
        l0 = 0;
        while (plane.incident(p0, l0) != on)
            ++l0;
    }
    if (plane.incident(p0, l0) != on)
        throw ConstructionError(on ? "point must lie on the line" : "point must not lie on the line");

    g.points.assign(plane.points_on(l0).begin(), plane.points_on(l0).end());
    g.lines.assign(plane.lines_on(p0).begin(), plane.lines_on(p0).end());
    if (!on) {
        g.points.push_back(std::uint32_t(p0));
        g.lines.push_back(std::uint32_t(l0));
    }
    g.normalize();
    g.provenance = "planar kind=" + to_string(kind) + " point=" + std::to_string(p0) + " line=" + std::to_string(l0);
    return g;
}

Vec embed(const GaloisField & f, const PlaneEmbedding & e, const Vec & v)
{
    Vec out(e.columns.front().size(), 0);
    for (std::size_t j = 0; j < 3; ++j)
        if (v[j])
            out = axpy(f, out, v[j], e.columns[j]);
    return normalize(f, out);
}

PlaneEmbedding plane_embedding(const IncidencePolygon & w, std::size_t centre, const IncidencePolygon & plane,
                               std::size_t anchor)
{
    if (w.kind() != PolygonKind::Symplectic)
        throw ConstructionError("lift needs W(3,q)");
    if (plane.kind() != PolygonKind::ProjectivePlane || plane.q() != w.q())
        throw ConstructionError("lift needs PG(2,q) of the same order");
    if (centre >= w.num_points() || anchor >= plane.num_points())
        throw ConstructionError("embedding: index out of range");
    const auto & f = w.field();
    const Vec & P = w.point(centre);
    const auto pi = perp(f, w3_form(f), Subspace::point(f, P));

    Rows others;
    for (const auto & r : pi.basis()) {
        Rows trial{P};
        trial.insert(trial.end(), others.begin(), others.end());
        trial.push_back(r);
        if (rank(f, trial) == trial.size())
            others.push_back(r);
    }
    const Vec & a = plane.point(anchor);
    std::size_t lead = 0;
    while (a[lead] == 0)
        ++lead;
    PlaneEmbedding e;
    e.centre = centre;
    e.columns.assign(3, Vec{});
    std::size_t next = 0;
    Vec col = P;
    for (std::size_t j = 0; j < 3; ++j) {
        if (j == lead)
            continue;
        e.columns[j] = others[next++];
        col = axpy(f, col, f.neg(a[j]), e.columns[j]);
    }
    e.columns[lead] = col; // a[lead] == 1
    return e;
}

GoodStructure lift_w3(const IncidencePolygon & w, const IncidencePolygon & plane, const GoodStructure & planar,
                      const PlaneEmbedding & emb)
{
    const auto & f = w.field();
    if (!verify_tgood(plane, planar, false).valid || planar.t != 1)
        throw ConstructionError("planar structure is not 1-good");
    const auto P = emb.centre;
    const auto form = w3_form(f);
    const auto pi = perp(f, form, Subspace::point(f, w.point(P)));

    std::vector<char> in_planar(w.num_points(), 0);
    for (auto p : planar.points)
        in_planar[w.point_index(embed(f, emb, plane.point(p)))] = 1;
    std::unordered_set<Vec, VecHash> planar_lines;
    for (auto l : planar.lines) {
        Rows rows;
        for (const auto & r : plane.line(l).basis())
            rows.push_back(embed(f, emb, r));
        planar_lines.insert(Subspace::from_rows(f, 3, rows).key());
    }

    GoodStructure g;
    g.t = 1;
    for (std::uint32_t x = 0; x < w.num_points(); ++x) {
        if (x == P || in_planar[x]) {
            g.points.push_back(x);
            continue;
        }
        const auto trace = meet(f, perp(f, form, Subspace::point(f, w.point(x))), pi);
        if (trace.dim() == 1 && planar_lines.count(trace.key()))
            g.points.push_back(x);
    }
    for (std::uint32_t l = 0; l < w.num_lines(); ++l) {
        if (w.incident(P, l)) {
            g.lines.push_back(l);
            continue;
        }
        const auto & line = w.line(l);
        if (pi.contains(f, line))
            continue;
        const auto m = meet(f, line, pi);
        if (in_planar[w.point_index(m.basis().front())])
            g.lines.push_back(l);
    }
    g.normalize();
    g.provenance = "lift centre=" + std::to_string(P);
    std::istringstream params(planar.provenance);
    std::string token;
    params >> token;
    while (params >> token)
        g.provenance += " planar." + token;
    return g;
}

std::size_t lift_size(unsigned q, std::size_t planar_size, bool centre_in_planar)
{
    return q * planar_size + 1 + (centre_in_planar ? 0 : q);
}

std::set<std::size_t> lift_sizes(unsigned q)
{
    std::vector<std::size_t> planar{q + 1, q + 2};
    auto [p, e] = prime_power(q);
    if (e % 2 == 0) {
        unsigned r = 1;
        for (unsigned i = 0; i < e / 2; ++i)
            r *= p;
        planar.push_back(q + r + 1);
    }
    std::set<std::size_t> out;
    for (auto s : planar) {
        out.insert(lift_size(q, s, true));
        out.insert(lift_size(q, s, false));
    }
    return out;
}

// ---------------------------------------------------------------------------

std::string to_string(HexCase c)
{
    switch (c) {
    case HexCase::A: return "a";
    case HexCase::B: return "b";
    case HexCase::CI: return "c(i)";
    case HexCase::CII: return "c(ii)";
    case HexCase::DI: return "d(i)";
    case HexCase::DII: return "d(ii)";
    case HexCase::Unknown: return "unknown";
    }
    return "?";
}

FourSpace four_space_from_dual(const GaloisField & f, Rows dual)
{
    if (dual.empty() || dual.front().size() != 7)
        throw GeometryError("a 4-space of PG(6,q) needs two dual vectors of length 7");
    if (rref(f, dual) != 2)
        throw GeometryError("dual vectors of a 4-space must be independent");
    auto s = Subspace::from_rows(f, 6, null_space(f, dual, 7));
    return FourSpace{std::move(s), std::move(dual)};
}

std::vector<FourSpace> all_four_spaces(const GaloisField & f)
{
    ProjectiveSpace dual(6, GaloisField::of_order(f.q()));
    std::set<Rows> lines;
    const auto & pts = dual.points();
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            Rows r{pts[i], pts[j]};
            rref(f, r);
            lines.insert(std::move(r));
        }
    std::vector<FourSpace> out;
    out.reserve(lines.size());
    for (const auto & r : lines)
        out.push_back(four_space_from_dual(f, r));
    return out;
}

FourSpace random_four_space(const GaloisField & f, std::mt19937_64 & rng)
{
    std::uniform_int_distribution<unsigned> coord(0, f.q() - 1);
    for (;;) {
        Rows r(2, Vec(7));
        for (auto & row : r)
            for (auto & c : row)
                c = Elem(coord(rng));
        if (rank(f, r) == 2)
            return four_space_from_dual(f, std::move(r));
    }
}

HexagonContext::HexagonContext(const Hexagon & hex) : hex_(&hex), graph_(hex.polygon.graph())
{
    dist_.reserve(hex.polygon.num_points());
    for (std::uint32_t p = 0; p < hex.polygon.num_points(); ++p)
        dist_.push_back(distances_from(graph_, p));
}

namespace {

bool in_space(const GaloisField & f, const FourSpace & S, const Vec & v)
{
    return dot(f, S.dual[0], v) == 0 && dot(f, S.dual[1], v) == 0;
}

std::vector<char> point_mask(const HexagonContext & ctx, const FourSpace & S)
{
    const auto & poly = ctx.hex().polygon;
    std::vector<char> m(poly.num_points(), 0);
    for (std::size_t p = 0; p < poly.num_points(); ++p)
        m[p] = in_space(poly.field(), S, poly.point(p));
    return m;
}

bool line_inside(const IncidencePolygon & poly, const std::vector<char> & mask, std::size_t l)
{
    const auto & pts = poly.points_on(l);
    return std::all_of(pts.begin(), pts.end(), [&](auto p) { return mask[p] != 0; });
}

} // namespace

HexCaseReport classify_case(const HexagonContext & ctx, const FourSpace & S, std::size_t A)
{
    const auto & hex = ctx.hex();
    const auto & poly = hex.polygon;
    const auto & f = poly.field();
    const std::uint64_t q = f.q();
    if (A >= poly.num_points())
        throw ConstructionError("A is not a point of the quadric");
    if (!in_space(f, S, poly.point(A)))
        throw ConstructionError("A does not lie in S");

    HexCaseReport r;
    const auto sec = classify_section(f, hex.quadric, S.space);
    r.section = sec.tag;
    const auto & piA = hex.annotations.hex_planes[A];
    r.dim_piA_meet_S = meet(f, piA, S.space).dim();

    std::optional<std::size_t> vertex_point;
    switch (sec.tag) {
    case SectionTag::NondegenerateParabolic: r.hex_case = HexCase::A; break;
    case SectionTag::ConePoint:
        vertex_point = poly.point_index(sec.vertex->basis().front());
        if (sec.base == QuadricKind::Elliptic)
            r.hex_case = HexCase::B;
        else if (sec.base == QuadricKind::Hyperbolic)
            r.hex_case = S.space.contains(f, hex.annotations.hex_planes[*vertex_point]) ? HexCase::CI : HexCase::CII;
        break;
    case SectionTag::ConeLine: r.hex_case = ctx.is_hexagon_line(*sec.vertex) ? HexCase::DII : HexCase::DI; break;
    default: break;
    }
    if (vertex_point && (r.hex_case == HexCase::CI || r.hex_case == HexCase::CII))
        r.A_in_piP = hex.annotations.hex_planes[*vertex_point].contains_point(f, poly.point(A));

    const auto TA = perp(f, hex.quadric, Subspace::point(f, poly.point(A)));
    r.containment_criterion = S.space.contains(f, piA) || TA.contains(f, S.space);
    r.L2_subset_L1 = r.containment_criterion;

    const std::uint64_t q2 = q * q, q3 = q2 * q, q4 = q3 * q;
    auto & c = r.counts;
    switch (r.hex_case) {
    case HexCase::A:
        c.x = q3 + q2 + q + 1;
        c.y = q + 1;
        break;
    case HexCase::B:
        c.x = q3 + q + 1;
        c.y = 1;
        break;
    case HexCase::CI:
        c.x = q3 + 2 * q2 + q + 1;
        c.y = (q + 1) * (q + 1);
        break;
    case HexCase::CII:
        c.x = q3 + 2 * q2 + q + 1;
        c.y = 2 * q + 1;
        break;
    case HexCase::DI:
        c.x = q3 + q2 + q + 1;
        c.y = q + 1;
        break;
    case HexCase::DII:
        c.x = q3 + q2 + q + 1;
        c.y = q2 + q + 1;
        break;
    case HexCase::Unknown: return r;
    }
    // Lemma-style table values for |L1|.
    switch (r.hex_case) {
    case HexCase::B:
    case HexCase::DII: c.l1 = q4 + q3 + q2 + q + 1; break;
    case HexCase::CII: c.l1 = q4 + 3 * q3 + q2 + q + 1; break;
    default: c.l1 = q4 + 2 * q3 + q2 + q + 1; break;
    }
    c.l2 = q3 + q2 + q + 1;

    if (r.L2_subset_L1) {
        r.row = "contained";
        c.l1l2 = c.l2;
    }
    else {
        const bool line = r.dim_piA_meet_S == 1;
        auto set = [&](std::uint64_t a, std::uint64_t g, std::uint64_t b, const char * row) {
            c.alpha = a;
            c.gamma = g;
            c.beta = b;
            r.row = row;
            r.has_abc = true;
        };
        switch (r.hex_case) {
        case HexCase::A:
            line ? set(q2, q, q2, "a/line") : set(0, q + 1, q2 + q, "a/point");
            break;
        case HexCase::B: line ? set(q2, 0, 0, "b/line") : set(0, 1, q, "b/point"); break;
        case HexCase::CI:
        case HexCase::CII:
            if (!line)
                set(0, 2 * q + 1, 2 * q2 + q, "c/point");
            else if (!r.A_in_piP)
                set(q2, 2 * q, q2, "c/line/A-off-piP");
            else
                set(q2, 0, 0, "c/line/A-on-piP");
            break;
        default: line ? set(q2, 0, 0, "d/line") : set(0, q + 1, q2 + q, "d/point"); break;
        }
        c.l1l2 = q + 1 + c.alpha + c.beta;
    }
    c.size = c.l1 + c.l2 - c.l1l2;
    return r;
}

HexConstruction hexagon_good(const HexagonContext & ctx, const FourSpace & S, std::size_t A)
{
    const auto & hex = ctx.hex();
    const auto & poly = hex.polygon;
    const auto & f = poly.field();
    const auto np = poly.num_points();

    HexConstruction out;
    out.direct = classify_case(ctx, S, A);
    auto & c = out.direct.counts;
    c = HexCounts{};
    out.direct.has_abc = false;

    const auto inS = point_mask(ctx, S);
    std::vector<char> in_p(np, 0);
    for (std::size_t x = 0; x < np; ++x) {
        const int d = ctx.distance(A, x);
        if (d >= 0 && d <= 4)
            in_p[x] = 1; // P1
        if (inS[x])
            in_p[x] = 1; // P2
        else {
            std::size_t seen = 0;
            for (auto l : poly.lines_on(x))
                for (auto y : poly.points_on(l))
                    if (y != x && inS[y])
                        ++seen;
            if (seen != 1)
                in_p[x] = 1; // P3
        }
        c.x += inS[x];
    }

    std::vector<char> l1(poly.num_lines(), 0), l2(poly.num_lines(), 0);
    for (std::size_t l = 0; l < poly.num_lines(); ++l) {
        for (auto p : poly.points_on(l))
            if (inS[p])
                l1[l] = 1;
        const int d = ctx.distance(A, np + l);
        l2[l] = d >= 0 && d <= 3;
        c.l1 += l1[l];
        c.l2 += l2[l];
        c.l1l2 += l1[l] && l2[l];
        c.y += line_inside(poly, inS, l);
    }
    out.direct.L2_subset_L1 = c.l1l2 == c.l2;

    // alpha, beta, gamma from the three types of lines in L1 cap L2.
    std::vector<std::uint32_t> through_A_in_S;
    for (auto l : poly.lines_on(A))
        if (line_inside(poly, inS, l))
            through_A_in_S.push_back(l);
    std::vector<char> type1(poly.num_lines(), 0), type2(poly.num_lines(), 0);
    for (auto l : poly.lines_on(A))
        type1[l] = 1;
    if (!through_A_in_S.empty()) {
        for (std::size_t n = 0; n < poly.num_lines(); ++n) {
            bool all = true;
            for (auto t : through_A_in_S) {
                bool meets = false;
                for (auto p : poly.points_on(n))
                    meets = meets || poly.incident(p, t);
                all = all && meets;
            }
            type2[n] = all;
        }
    }
    std::vector<char> type3(poly.num_lines(), 0);
    for (std::size_t x = 0; x < np; ++x) {
        if (!inS[x] || ctx.distance(A, x) != 4)
            continue;
        for (auto l : poly.lines_on(x))
            if (ctx.distance(A, np + l) == 3)
                type3[l] = 1;
    }
    for (std::size_t l = 0; l < poly.num_lines(); ++l) {
        c.alpha += type2[l] && !type1[l];
        c.beta += type3[l] && !type2[l];
    }
    std::set<Subspace> ideal_through_A;
    const Vec & a = poly.point(A);
    for (std::size_t x = 0; x < np; ++x) {
        if (x == A || !inS[x] || hex.quadric.polar(f, a, poly.point(x)) != 0)
            continue;
        auto l = Subspace::from_rows(f, 6, {a, poly.point(x)});
        if (!ctx.is_hexagon_line(l))
            ideal_through_A.insert(std::move(l));
    }
    c.gamma = ideal_through_A.size();
    out.direct.has_abc = !out.direct.L2_subset_L1;

    auto & g = out.structure;
    g.t = 1;
    for (std::uint32_t x = 0; x < np; ++x)
        if (in_p[x])
            g.points.push_back(x);
    for (std::uint32_t l = 0; l < poly.num_lines(); ++l)
        if (l1[l] || l2[l])
            g.lines.push_back(l);
    c.size = g.lines.size();
    std::string dual;
    for (const auto & row : S.dual) {
        dual += dual.empty() ? "" : ";";
        for (std::size_t i = 0; i < row.size(); ++i)
            dual += (i ? "," : "") + std::to_string(row[i]);
    }
    g.provenance = "hexagon A=" + std::to_string(A) + " S=" + dual + " case=" + to_string(out.direct.hex_case);
    return out;
}

std::set<std::uint64_t> achievable_sizes(unsigned q)
{
    const std::int64_t Q = q, Q2 = Q * Q, Q3 = Q2 * Q, Q4 = Q3 * Q;
    const std::int64_t base = Q4 + Q3 + Q2 + Q + 1;
    std::set<std::uint64_t> out;
    for (std::int64_t k : {std::int64_t(0), Q3 - Q, Q3, Q3 + Q2 - Q, 2 * Q3 - Q2 - Q, 2 * Q3 - Q2, 2 * Q3 - Q, 2 * Q3,
                           3 * Q3 - Q2 - Q, 3 * Q3 - Q2, 3 * Q3})
        out.insert(std::uint64_t(base + k));
    return out;
}

} // namespace polyforge
