#include <polyforge/permgroup.hpp>

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_set>

namespace polyforge {

Perm identity_perm(std::size_t n)
{
    Perm p(n);
    std::iota(p.begin(), p.end(), 0u);
    return p;
}

Perm compose(const Perm & a, const Perm & b)
{
    Perm c(a.size());
    for (std::size_t x = 0; x < a.size(); ++x)
        c[x] = b[a[x]];
    return c;
}

Perm inverse(const Perm & a)
{
    Perm c(a.size());
    for (std::size_t x = 0; x < a.size(); ++x)
        c[a[x]] = std::uint32_t(x);
    return c;
}

bool is_identity(const Perm & a)
{
    for (std::size_t x = 0; x < a.size(); ++x)
        if (a[x] != x)
            return false;
    return true;
}

PermGroup::PermGroup(std::size_t degree, std::vector<Perm> generators, std::vector<std::uint32_t> base_prefix) :
    degree_(degree)
{
    for (auto b : base_prefix) {
        if (b >= degree)
            throw GroupError("base point out of range");
        bool seen = false;
        for (const auto & l : levels_)
            seen = seen || l.base == b;
        if (!seen)
            add_level(b);
    }
    for (const auto & g : generators)
        add_generator(g);
}

void PermGroup::add_level(std::uint32_t base)
{
    Level l;
    l.base = base;
    l.pos.assign(degree_, -1);
    l.pos[base] = 0;
    l.orbit.push_back(base);
    l.trans.push_back(identity_perm(degree_));
    l.trans_inv.push_back(identity_perm(degree_));
    l.checked.push_back(0);
    levels_.push_back(std::move(l));
}

std::vector<std::uint32_t> PermGroup::base() const
{
    std::vector<std::uint32_t> b;
    for (const auto & l : levels_)
        b.push_back(l.base);
    return b;
}

const Perm * PermGroup::transversal(std::size_t level, std::uint32_t point) const
{
    const auto p = levels_[level].pos[point];
    return p < 0 ? nullptr : &levels_[level].trans[p];
}

void PermGroup::extend_orbit(std::size_t li)
{
    auto & l = levels_[li];
    for (std::size_t p = 0; p < l.orbit.size(); ++p) {
        for (auto gi : l.gens) {
            const auto & s = strong_[gi];
            const auto img = s[l.orbit[p]];
            if (l.pos[img] >= 0)
                continue;
            l.pos[img] = std::int32_t(l.orbit.size());
            l.orbit.push_back(img);
            l.trans.push_back(compose(l.trans[p], s));
            l.trans_inv.push_back(inverse(l.trans.back()));
            l.checked.push_back(0);
        }
    }
}

std::pair<Perm, std::size_t> PermGroup::strip(Perm h, std::size_t from) const
{
    for (std::size_t li = from; li < levels_.size(); ++li) {
        const auto & l = levels_[li];
        const auto beta = h[l.base];
        const auto p = l.pos[beta];
        if (p < 0)
            return {std::move(h), li};
        if (p != 0)
            h = compose(h, l.trans_inv[p]);
    }
    return {std::move(h), levels_.size()};
}

void PermGroup::insert_strong(const Perm & y, std::size_t from, std::size_t to)
{
    if (to == levels_.size()) {
        std::uint32_t moved = 0;
        while (y[moved] == moved)
            ++moved;
        add_level(moved);
    }
    strong_.push_back(y);
    const auto idx = std::uint32_t(strong_.size() - 1);
    for (std::size_t li = from; li <= to; ++li) {
        levels_[li].gens.push_back(idx);
        extend_orbit(li);
    }
}

void PermGroup::complete(std::size_t from)
{
    std::ptrdiff_t i = std::ptrdiff_t(from);
    while (i >= 0) {
        bool restarted = false;
        for (std::size_t p = 0; p < levels_[i].orbit.size() && !restarted; ++p) {
            while (levels_[i].checked[p] < levels_[i].gens.size()) {
                auto & l = levels_[i];
                const auto gi = l.gens[l.checked[p]++];
                const auto & s = strong_[gi];
                const auto img = s[l.orbit[p]];
                Perm h = compose(compose(l.trans[p], s), l.trans_inv[l.pos[img]]);
                auto [y, j] = strip(std::move(h), std::size_t(i) + 1);
                if (j < levels_.size() || !is_identity(y)) {
                    insert_strong(y, std::size_t(i) + 1, j);
                    i = std::ptrdiff_t(j);
                    restarted = true;
                    break;
                }
            }
        }
        if (!restarted)
            --i;
    }
}

void PermGroup::add_generator(const Perm & g)
{
    if (g.size() != degree_)
        throw GroupError("generator has the wrong degree");
    {
        std::vector<char> seen(degree_, 0);
        for (auto x : g) {
            if (x >= degree_ || seen[x])
                throw GroupError("generator is not a permutation");
            seen[x] = 1;
        }
    }
    gens_.push_back(g);
    auto [y, j] = strip(g, 0);
    if (j == levels_.size() && is_identity(y))
        return;
    insert_strong(y, 0, j);
    complete(std::min(j, levels_.size() - 1));
}

std::uint64_t PermGroup::order() const
{
    unsigned __int128 n = 1;
    for (const auto & l : levels_) {
        n *= l.orbit.size();
        if (n > std::numeric_limits<std::uint64_t>::max())
            throw GroupError("group order overflows 64 bits");
    }
    return std::uint64_t(n);
}

bool PermGroup::contains(const Perm & g) const
{
    if (g.size() != degree_)
        return false;
    auto [y, j] = strip(g, 0);
    return j == levels_.size() && is_identity(y);
}

void PermGroup::for_each_element(const std::function<bool(const Perm &)> & f) const
{
    std::vector<Perm> stack{identity_perm(degree_)};
    std::function<bool(std::size_t)> rec = [&](std::size_t li) {
        if (li == levels_.size())
            return f(stack.back());
        const auto & l = levels_[li];
        for (std::size_t p = 0; p < l.orbit.size(); ++p) {
            stack.push_back(compose(l.trans[p], stack.back()));
            const bool go = rec(li + 1);
            stack.pop_back();
            if (!go)
                return false;
        }
        return true;
    };
    rec(0);
}

Perm PermGroup::random_element(std::mt19937_64 & rng) const
{
    Perm q = identity_perm(degree_);
    for (const auto & l : levels_) {
        std::uniform_int_distribution<std::size_t> d(0, l.orbit.size() - 1);
        q = compose(l.trans[d(rng)], q);
    }
    return q;
}

std::vector<std::vector<std::uint32_t>> orbits(const PermGroup & g)
{
    const auto n = g.degree();
    std::vector<char> seen(n, 0);
    std::vector<std::vector<std::uint32_t>> out;
    for (std::uint32_t x = 0; x < n; ++x) {
        if (seen[x])
            continue;
        std::vector<std::uint32_t> orb{x};
        seen[x] = 1;
        for (std::size_t i = 0; i < orb.size(); ++i)
            for (const auto & s : g.generators())
                if (!seen[s[orb[i]]]) {
                    seen[s[orb[i]]] = 1;
                    orb.push_back(s[orb[i]]);
                }
        std::sort(orb.begin(), orb.end());
        out.push_back(std::move(orb));
    }
    return out;
}

std::vector<std::vector<std::uint32_t>> orbits_on(const PermGroup & g, const std::vector<std::uint32_t> & subset)
{
    std::vector<char> in(g.degree(), 0);
    for (auto x : subset)
        in[x] = 1;
    std::vector<std::vector<std::uint32_t>> out;
    for (auto & orb : orbits(g)) {
        std::vector<std::uint32_t> part;
        for (auto x : orb)
            if (in[x])
                part.push_back(x);
        if (!part.empty())
            out.push_back(std::move(part));
    }
    return out;
}

std::vector<std::size_t> orbit_lengths(const PermGroup & g, const std::vector<std::uint32_t> & subset)
{
    std::vector<std::size_t> out;
    for (const auto & o : orbits_on(g, subset))
        out.push_back(o.size());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::uint32_t> image_of(const Perm & g, const std::vector<std::uint32_t> & set)
{
    std::vector<std::uint32_t> out;
    out.reserve(set.size());
    for (auto x : set)
        out.push_back(g[x]);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

PermGroup stabilizer_exhaustive(const PermGroup & g, const std::vector<char> & in)
{
    PermGroup k(g.degree(), {}, g.base());
    g.for_each_element([&](const Perm & e) {
        for (std::uint32_t x = 0; x < g.degree(); ++x)
            if (in[x] && !in[e[x]])
                return true;
        if (!k.contains(e))
            k.add_generator(e);
        return true;
    });
    return k;
}

struct StabilizerSearch
{
    const PermGroup & h;
    const std::vector<char> & in;
    PermGroup & k;

    // Returns true once an element is found in find-one mode.
    bool dfs(std::size_t li, const Perm & q, bool identity_path, bool find_one)
    {
        if (li == h.levels()) {
            if (!k.contains(q))
                k.add_generator(q);
            return true;
        }
        const auto b = h.base_point(li);
        const auto & orbit = h.basic_orbit(li);
        // On the identity path the base point itself is explored first.
        for (std::size_t idx = 0; idx < orbit.size(); ++idx) {
            const auto beta = orbit[idx];
            if (in[b] != in[q[beta]])
                continue;
            Perm next = compose(*h.transversal(li, beta), q);
            if (identity_path) {
                if (beta == b)
                    dfs(li + 1, next, true, false);
                else if (!k.in_basic_orbit(li, beta))
                    dfs(li + 1, next, false, true);
            }
            else if (dfs(li + 1, next, false, true))
                return true;
            if (find_one && identity_path)
                return true;
        }
        return false;
    }
};

} // namespace

PermGroup set_stabilizer(const PermGroup & g, const std::vector<std::uint32_t> & set, StabilizerMethod method,
                         std::uint64_t ceiling)
{
    std::vector<char> in(g.degree(), 0);
    for (auto x : set) {
        if (x >= g.degree())
            throw GroupError("set element out of range");
        in[x] = 1;
    }
    const bool small = g.order() <= ceiling;
    if (method == StabilizerMethod::Exhaustive && !small)
        throw GroupError("group order exceeds the exhaustive stabilizer ceiling");
    if (method == StabilizerMethod::Exhaustive || (method == StabilizerMethod::Auto && small))
        return stabilizer_exhaustive(g, in);

    std::vector<std::uint32_t> prefix(set.begin(), set.end());
    std::sort(prefix.begin(), prefix.end());
    PermGroup h(g.degree(), g.generators(), prefix);
    PermGroup k(g.degree(), {}, h.base());
    StabilizerSearch search{h, in, k};
    search.dfs(0, identity_perm(g.degree()), true, false);
    return k;
}

namespace {

struct VecU32Hash
{
    std::size_t operator()(const std::vector<std::uint32_t> & v) const noexcept
    {
        std::size_t h = 1469598103934665603ull;
        for (auto x : v)
            h = (h ^ x) * 1099511628211ull;
        return h;
    }
};

} // namespace

std::vector<std::vector<std::uint32_t>> set_orbit(const PermGroup & g, const std::vector<std::uint32_t> & set,
                                                  std::size_t ceiling)
{
    auto start = set;
    std::sort(start.begin(), start.end());
    std::unordered_set<std::vector<std::uint32_t>, VecU32Hash> seen{start};
    std::vector<std::vector<std::uint32_t>> orbit{start};
    for (std::size_t i = 0; i < orbit.size(); ++i) {
        for (const auto & s : g.generators()) {
            auto img = image_of(s, orbit[i]);
            if (seen.insert(img).second) {
                orbit.push_back(std::move(img));
                if (orbit.size() > ceiling)
                    throw GroupError("set orbit exceeds the configured ceiling");
            }
        }
    }
    return orbit;
}

std::vector<std::uint32_t> minimal_image(const PermGroup & g, const std::vector<std::uint32_t> & set,
                                         std::size_t ceiling)
{
    auto orbit = set_orbit(g, set, ceiling);
    return *std::min_element(orbit.begin(), orbit.end());
}

Perm induced_permutation(const IncidencePolygon & poly, const Rows & m, int frob)
{
    const auto & f = poly.field();
    auto map = [&](const Vec & v) {
        Vec w = mat_vec(f, m, v);
        if (frob)
            for (auto & c : w)
                c = f.frobenius(c, frob);
        return w;
    };
    const auto np = poly.num_points();
    Perm p(poly.num_vertices());
    for (std::size_t x = 0; x < np; ++x) {
        auto img = poly.find_point(map(poly.point(x)));
        if (!img)
            throw GroupError("map does not preserve the point set");
        p[x] = std::uint32_t(*img);
    }
    for (std::size_t l = 0; l < poly.num_lines(); ++l) {
        Rows rows;
        for (const auto & r : poly.line(l).basis())
            rows.push_back(map(r));
        auto img = poly.find_line(Subspace::from_rows(f, poly.ambient(), rows));
        if (!img)
            throw GroupError("map does not preserve the line set");
        p[np + l] = std::uint32_t(np + *img);
    }
    return p;
}

bool preserves_incidence(const IncidencePolygon & poly, const Perm & g)
{
    const auto np = poly.num_points();
    if (g.size() != poly.num_vertices())
        return false;
    for (std::size_t x = 0; x < np; ++x)
        if (g[x] >= np)
            return false;
    for (std::size_t l = 0; l < poly.num_lines(); ++l) {
        if (g[np + l] < np)
            return false;
        for (auto x : poly.points_on(l))
            if (!poly.incident(g[x], g[np + l] - np))
                return false;
    }
    return true;
}

namespace {

Rows identity_matrix(std::size_t n)
{
    Rows m(n, Vec(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

std::vector<Elem> additive_basis(const GaloisField & f)
{
    std::vector<Elem> b;
    Elem w = 1;
    for (unsigned i = 0; i < f.e(); ++i) {
        b.push_back(w);
        w = f.mul(w, f.primitive());
    }
    return b;
}

} // namespace

PermGroup collineation_group(const IncidencePolygon & poly)
{
    const auto & f = poly.field();
    const std::size_t n = poly.ambient() + 1;
    std::vector<Rows> mats;
    if (poly.kind() == PolygonKind::ProjectivePlane) {
        for (auto a : additive_basis(f))
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (i != j) {
                        auto m = identity_matrix(n);
                        m[i][j] = a;
                        mats.push_back(std::move(m));
                    }
        auto d = identity_matrix(n);
        d[0][0] = f.primitive();
        mats.push_back(std::move(d));
    }
    else if (poly.kind() == PolygonKind::Symplectic) {
        const auto form = w3_form(f);
        std::vector<Vec> vs;
        for (std::size_t i = 0; i < n; ++i) {
            Vec v(n, 0);
            v[i] = 1;
            vs.push_back(v);
        }
        for (auto [i, j] : {std::pair{0, 2}, {1, 3}, {0, 3}, {1, 2}}) {
            Vec v(n, 0);
            v[i] = v[j] = 1;
            vs.push_back(v);
        }
        for (const auto & v : vs)
            for (auto a : additive_basis(f)) {
                // x -> x + a B(x, v) v
                Rows m = identity_matrix(n);
                for (std::size_t c = 0; c < n; ++c) {
                    Vec ec(n, 0);
                    ec[c] = 1;
                    const Elem coef = f.mul(a, form(f, ec, v));
                    for (std::size_t r = 0; r < n; ++r)
                        m[r][c] = f.add(m[r][c], f.mul(coef, v[r]));
                }
                mats.push_back(std::move(m));
            }
        auto d = identity_matrix(n);
        d[1][1] = d[3][3] = f.primitive();
        mats.push_back(std::move(d));
    }
    else {
        throw GroupError("collineation generators are implemented for PG(2,q) and W(3,q) only");
    }

    std::vector<Perm> gens;
    for (const auto & m : mats)
        gens.push_back(induced_permutation(poly, m));
    if (f.e() > 1)
        gens.push_back(induced_permutation(poly, identity_matrix(n), 1));
    for (const auto & g : gens)
        if (!preserves_incidence(poly, g))
            throw GroupError("collineation generator does not preserve incidence");
    return PermGroup(poly.num_vertices(), std::move(gens));
}

std::optional<Perm> duality_permutation(const IncidencePolygon & poly)
{
    const auto & f = poly.field();
    const auto np = poly.num_points();
    const auto nl = poly.num_lines();
    if (np != nl)
        return std::nullopt;
    Perm g(np + nl);
    if (poly.kind() == PolygonKind::ProjectivePlane) {
        // Point x goes to the line x^perp and back (standard dot product).
        for (std::size_t x = 0; x < np; ++x) {
            const auto l = Subspace::from_rows(f, 2, null_space(f, {poly.point(x)}, 3));
            g[x] = static_cast<std::uint32_t>(np + poly.line_index(l));
        }
        for (std::size_t l = 0; l < nl; ++l) {
            const auto x = null_space(f, poly.line(l).basis(), 3);
            g[np + l] = static_cast<std::uint32_t>(poly.point_index(normalize(f, x.front())));
        }
    } else if (poly.kind() == PolygonKind::Symplectic && f.p() == 2) {
        auto pl = [&](const Vec & x, const Vec & y, int i, int j) {
            return f.sub(f.mul(x[i], y[j]), f.mul(x[j], y[i]));
        };
        std::vector<std::uint32_t> line_image(nl);
        for (std::size_t l = 0; l < nl; ++l) {
            const auto & b = poly.line(l).basis();
            Vec v{pl(b[0], b[1], 0, 2), pl(b[0], b[1], 1, 3), pl(b[0], b[1], 0, 3), pl(b[0], b[1], 1, 2)};
            line_image[l] = static_cast<std::uint32_t>(poly.point_index(normalize(f, v)));
            g[np + l] = line_image[l];
        }
        for (std::size_t x = 0; x < np; ++x) {
            Rows rows;
            for (auto l : poly.lines_on(x))
                rows.push_back(poly.point(line_image[l]));
            const auto s = Subspace::from_rows(f, 3, rows);
            if (s.dim() != 1)
                throw GroupError("duality: images of a pencil are not collinear");
            g[x] = static_cast<std::uint32_t>(np + poly.line_index(s));
        }
    } else {
        return std::nullopt;
    }
    if (!preserves_adjacency(poly, g))
        throw GroupError("duality does not preserve incidence");
    return g;
}

bool preserves_adjacency(const IncidencePolygon & poly, const Perm & g)
{
    const auto np = poly.num_points();
    if (g.size() != poly.num_vertices())
        return false;
    std::vector<char> seen(g.size(), 0);
    for (auto y : g) {
        if (y >= g.size() || seen[y])
            return false;
        seen[y] = 1;
    }
    auto adjacent = [&](std::uint32_t a, std::uint32_t b) {
        if ((a < np) == (b < np))
            return false;
        return a < np ? poly.incident(a, b - np) : poly.incident(b, a - np);
    };
    for (std::size_t l = 0; l < poly.num_lines(); ++l)
        for (auto x : poly.points_on(l))
            if (!adjacent(g[x], g[np + l]))
                return false;
    return true;
}

PermGroup correlation_group(const IncidencePolygon & poly)
{
    auto g = collineation_group(poly);
    if (auto d = duality_permutation(poly))
        g.add_generator(*d);
    return g;
}

std::uint64_t expected_collineation_order(PolygonKind kind, unsigned q)
{
    const std::uint64_t Q = q;
    const auto e = prime_power(q).second;
    switch (kind) {
    case PolygonKind::ProjectivePlane: return e * Q * Q * Q * (Q * Q * Q - 1) * (Q * Q - 1);
    case PolygonKind::Symplectic: return e * Q * Q * Q * Q * (Q * Q - 1) * (Q * Q * Q * Q - 1);
    default: throw GroupError("no order formula for this polygon kind");
    }
}

} // namespace polyforge
