#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <polyforge/constructions.hpp>
#include <polyforge/permgroup.hpp>

#include <algorithm>
#include <random>

using namespace polyforge;

namespace {

// Counts point permutations preserving collinear pairs and triples, by plain
// backtracking; independent of the group machinery.
std::uint64_t count_collineations(const IncidencePolygon & poly)
{
    const std::size_t n = poly.num_points();
    std::vector<std::vector<int>> line_of(n, std::vector<int>(n, -1));
    for (std::size_t l = 0; l < poly.num_lines(); ++l)
        for (auto a : poly.points_on(l))
            for (auto b : poly.points_on(l))
                if (a != b)
                    line_of[a][b] = int(l);
    auto triple = [&](std::size_t a, std::size_t b, std::size_t c) {
        return line_of[a][b] >= 0 && poly.incident(c, std::size_t(line_of[a][b]));
    };
    std::vector<std::size_t> img(n);
    std::vector<char> used(n, 0);
    std::uint64_t count = 0;
    std::function<void(std::size_t)> go = [&](std::size_t k) {
        if (k == n) {
            ++count;
            return;
        }
        for (std::size_t y = 0; y < n; ++y) {
            if (used[y])
                continue;
            bool ok = true;
            for (std::size_t a = 0; a < k && ok; ++a) {
                ok = (line_of[a][k] >= 0) == (line_of[img[a]][y] >= 0);
                for (std::size_t b = a + 1; b < k && ok; ++b)
                    ok = triple(a, b, k) == triple(img[a], img[b], y);
            }
            if (!ok)
                continue;
            used[y] = 1;
            img[k] = y;
            go(k + 1);
            used[y] = 0;
        }
    };
    go(0);
    return count;
}

std::vector<std::uint32_t> random_set(std::size_t degree, double p, std::mt19937_64 & rng)
{
    std::bernoulli_distribution coin(p);
    std::vector<std::uint32_t> s;
    for (std::uint32_t i = 0; i < degree; ++i)
        if (coin(rng))
            s.push_back(i);
    return s;
}

} // namespace

TEST_CASE("permutation basics")
{
    const Perm a{1, 2, 0, 3};
    const Perm b{0, 1, 3, 2};
    CHECK(compose(a, b) == Perm{1, 3, 0, 2});
    CHECK(is_identity(compose(a, inverse(a))));
    CHECK(identity_perm(3) == Perm{0, 1, 2});
    CHECK(image_of(a, {0, 2}) == std::vector<std::uint32_t>{0, 1});
    const PermGroup s4(4, {Perm{1, 0, 2, 3}, Perm{1, 2, 3, 0}});
    CHECK(s4.order() == 24);
    CHECK(s4.contains(a));
    const PermGroup c3(4, {a});
    CHECK(c3.order() == 3);
    CHECK_FALSE(c3.contains(b));
    std::size_t n = 0;
    s4.for_each_element([&](const Perm &) { return ++n < 100; });
    CHECK(n == 24);
    CHECK_THROWS_AS(PermGroup(4, {Perm{0, 1, 2}}), GroupError);
}

TEST_CASE("collineation group orders")
{
    const std::vector<std::pair<IncidencePolygon, std::uint64_t>> cases{
        {build_pg2(2), 168},    {build_pg2(3), 5616},     {build_pg2(4), 120960},
        {build_w3(2), 720},     {build_w3(3), 51840},     {build_w3(4), 1958400},
    };
    for (const auto & [poly, order] : cases) {
        CAPTURE(poly.name());
        const auto g = collineation_group(poly);
        CHECK(g.order() == order);
        CHECK(expected_collineation_order(poly.kind(), poly.field().q()) == order);
        CHECK(orbits(g).size() == 2);
    }
    CHECK(count_collineations(build_pg2(2)) == 168);
    CHECK(count_collineations(build_pg2(3)) == 5616);
    CHECK(count_collineations(build_w3(2)) == 720);
}

TEST_CASE("orbits on W(3,3)")
{
    const auto w = build_w3(3);
    const auto g = collineation_group(w);
    const auto o = orbits(g);
    REQUIRE(o.size() == 2);
    CHECK(o[0].size() == 40);
    CHECK(o[1].size() == 40);
    CHECK(o[0].front() == 0);
    CHECK(o[1].front() == 40);
    std::vector<std::uint32_t> all(80);
    for (std::uint32_t i = 0; i < 80; ++i)
        all[i] = i;
    CHECK(orbit_lengths(g, all) == std::vector<std::size_t>{40, 40});
}

TEST_CASE("random elements preserve incidence")
{
    const auto w = build_w3(3);
    const auto g = collineation_group(w);
    std::mt19937_64 rng(99);
    for (int i = 0; i < 1000; ++i) {
        const auto x = g.random_element(rng);
        CHECK(preserves_incidence(w, x));
        CHECK(g.contains(x));
    }
    Perm swap = identity_perm(80);
    std::swap(swap[0], swap[1]);
    CHECK_FALSE(preserves_incidence(w, swap));
    CHECK_FALSE(g.contains(swap));
}

TEST_CASE("set stabilizers and orbit-stabilizer")
{
    const auto w = build_w3(3);
    const auto g = collineation_group(w);
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 12; ++rep) {
        const auto s = random_set(80, rep < 6 ? 0.1 : 0.5, rng);
        const auto ex = set_stabilizer(g, s, StabilizerMethod::Exhaustive);
        const auto bt = set_stabilizer(g, s, StabilizerMethod::Backtrack);
        CHECK(ex.order() == bt.order());
        for (const auto & gen : bt.generators())
            CHECK(image_of(gen, s) == s);
        CHECK(set_orbit(g, s).size() * ex.order() == g.order());
    }
}

TEST_CASE("orbit-stabilizer on W(3,2)")
{
    const auto w = build_w3(2);
    const auto g = collineation_group(w);
    std::mt19937_64 rng(6);
    for (int rep = 0; rep < 50; ++rep) {
        const auto s = random_set(30, 0.4, rng);
        const auto bt = set_stabilizer(g, s, StabilizerMethod::Backtrack);
        CHECK(set_stabilizer(g, s, StabilizerMethod::Exhaustive).order() == bt.order());
        CHECK(set_orbit(g, s).size() * bt.order() == g.order());
    }
}

TEST_CASE("minimal images")
{
    const auto w = build_w3(2);
    const auto g = collineation_group(w);
    std::mt19937_64 rng(8);
    for (int rep = 0; rep < 50; ++rep) {
        const auto s = random_set(30, 0.3, rng);
        const auto m = minimal_image(g, s);
        const auto orbit = set_orbit(g, s);
        CHECK(m == *std::min_element(orbit.begin(), orbit.end()));
        CHECK(minimal_image(g, image_of(g.random_element(rng), s)) == m);
    }
}

TEST_CASE("stabilizers of lifted structures in W(3,3)")
{
    const auto w = build_w3(3);
    const auto plane = build_pg2(3);
    const auto g = collineation_group(w);
    struct Row
    {
        PlanarKind kind;
        std::size_t anchor;
        std::size_t subgraph;
        std::uint64_t stabilizer;
        std::vector<std::size_t> structure_orbits;
    };
    // Subgraph size, stabilizer order and orbits on the structure for the
    // three sizes of lift.
    auto outside = [&](const GoodStructure & g) {
        std::uint32_t x = 0;
        while (std::binary_search(g.points.begin(), g.points.end(), x))
            ++x;
        return std::size_t(x);
    };
    const auto on = planar_one_good(plane, PlanarKind::PointOnLine);
    const auto off = planar_one_good(plane, PlanarKind::PointOffLine);
    const std::vector<Row> rows{
        {PlanarKind::PointOnLine, on.points.front(), 54, 324, {1, 1, 3, 3, 9, 9}},
        {PlanarKind::PointOnLine, outside(on), 48, 144, {1, 3, 4, 4, 8, 12}},
        {PlanarKind::PointOffLine, outside(off), 42, 36, {1, 1, 1, 2, 3, 6, 6, 9, 9}},
    };
    for (const auto & r : rows) {
        const auto planar = planar_one_good(plane, r.kind);
        const auto s = lift_w3(w, plane, planar, plane_embedding(w, 0, plane, r.anchor));
        CHECK(80 - 2 * s.size() == r.subgraph);
        const auto ids = structure_domain(w, s);
        const auto stab = set_stabilizer(g, ids);
        CHECK(stab.order() == r.stabilizer);
        CHECK(orbit_lengths(stab, ids) == r.structure_orbits);
    }
}

TEST_CASE("dualities")
{
    const auto pg = build_pg2(3);
    const auto d = duality_permutation(pg);
    REQUIRE(d.has_value());
    CHECK(preserves_adjacency(pg, *d));
    CHECK_FALSE(preserves_incidence(pg, *d));
    CHECK(is_identity(compose(*d, *d)));
    CHECK(correlation_group(pg).order() == 2 * 5616);

    const auto w4 = build_w3(4);
    const auto d4 = duality_permutation(w4);
    REQUIRE(d4.has_value());
    CHECK(preserves_adjacency(w4, *d4));
    CHECK((*d4)[0] >= w4.num_points());
    const auto col = collineation_group(w4);
    CHECK(col.contains(compose(*d4, *d4)));
    CHECK(correlation_group(w4).order() == 2 * col.order());

    const auto w3 = build_w3(3);
    CHECK_FALSE(duality_permutation(w3).has_value());
    CHECK(correlation_group(w3).order() == 51840);
}
