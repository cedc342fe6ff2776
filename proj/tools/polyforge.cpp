#include <polyforge/constructions.hpp>
#include <polyforge/good.hpp>
#include <polyforge/io.hpp>
#include <polyforge/permgroup.hpp>
#include <polyforge/polygon.hpp>
#include <polyforge/search.hpp>
#include <polyforge/spectral.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>

using namespace polyforge;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

constexpr std::uint64_t kDefaultSeed = 20240601;

struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

unsigned default_jobs()
{
    if (const char * env = std::getenv("POLYFORGE_JOBS")) {
        try {
            const int v = std::stoi(env);
            if (v > 0)
                return static_cast<unsigned>(v);
        } catch (const std::exception &) {
        }
        throw UsageError("POLYFORGE_JOBS must be a positive integer");
    }
    return 1;
}

std::string fixed(double x, int digits = 9)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

/// Host polygon given either as a JSON file or as kind + order.
struct HostArgs
{
    std::string file;
    std::string kind;
    unsigned q = 0;

    void add(CLI::App * app)
    {
        app->add_option("--host", file, "Polygon JSON file");
        app->add_option("--polygon", kind, "Polygon kind (pg2, w3, hexagon) when no --host is given");
        app->add_option("--q", q, "Order of the polygon");
    }

    IncidencePolygon load(RunManifest * manifest = nullptr) const
    {
        if (!file.empty()) {
            if (manifest)
                manifest->add_input(file);
            return polygon_from_json(read_json_file(file));
        }
        if (kind.empty() || q == 0)
            throw UsageError("either --host or --polygon with --q is required");
        try {
            return build_polygon(polygon_kind_from_string(kind), q);
        } catch (const PolygonError &) {
            throw;
        } catch (const std::exception & e) {
            throw UsageError(e.what());
        }
    }
};

void emit_json(const Json & j, const std::string & out, RunManifest & manifest)
{
    const auto text = j.dump(2) + "\n";
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    write_text_file(out, text);
    manifest.add_output(out);
}

void finish_manifest(RunManifest & m, std::chrono::steady_clock::time_point start)
{
    m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!m.outputs.empty())
        m.write();
}

std::vector<Perm> read_generators(const Json & j, std::size_t degree)
{
    std::vector<Perm> gens;
    const auto & arr = j.is_object() ? j.at("generators") : j;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        auto g = arr[i].get<Perm>();
        if (g.size() != degree)
            throw IoError("generators[" + std::to_string(i) + "]: wrong degree");
        gens.push_back(std::move(g));
    }
    return gens;
}

/// --group: "full", "trivial", "stabilizer:<structure.json>" or "gens:<file.json>".
std::optional<PermGroup> parse_group(const std::string & spec, const IncidencePolygon & poly, RunManifest & manifest)
{
    if (spec.empty())
        return std::nullopt;
    const auto n = poly.num_vertices();
    if (spec == "trivial")
        return PermGroup(n, {});
    if (spec == "full")
        return collineation_group(poly);
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw UsageError("unknown --group spec '" + spec + "'");
    const auto kind = spec.substr(0, colon);
    const auto path = spec.substr(colon + 1);
    manifest.add_input(path);
    if (kind == "gens")
        return PermGroup(n, read_generators(read_json_file(path), n));
    if (kind == "stabilizer") {
        const auto g = structure_from_json(read_json_file(path), poly);
        return set_stabilizer(collineation_group(poly), structure_domain(poly, g));
    }
    throw UsageError("unknown --group kind '" + kind + "'");
}

// --- build -----------------------------------------------------------------

int cmd_build(HostArgs & host, const std::string & out, bool verify)
{
    const auto start = std::chrono::steady_clock::now();
    RunManifest m;
    m.command = "build";
    m.parameters = {{"polygon", host.kind}, {"q", host.q}};
    host.file.clear();
    const auto poly = host.load();
    if (verify) {
        const auto check = verify_polygon(poly);
        std::cerr << poly.name() << ": " << (check.ok ? "ok" : "FAILED " + check.detail) << "\n";
        if (!check.ok)
            return kFailed;
    }
    emit_json(polygon_to_json(poly), out, m);
    std::cerr << poly.name() << ": " << poly.num_points() << " points, " << poly.num_lines() << " lines\n";
    finish_manifest(m, start);
    return kOk;
}

// --- verify-polygon ----------------------------------------------------------

int cmd_verify_polygon(const HostArgs & host)
{
    const auto poly = host.load();
    const auto check = verify_polygon(poly);
    std::cout << "polygon    " << poly.name() << "\n";
    std::cout << "points     " << poly.num_points() << "\n";
    std::cout << "lines      " << poly.num_lines() << "\n";
    std::cout << "girth      " << (check.metrics.girth ? std::to_string(*check.metrics.girth) : "inf") << " (want "
              << 2 * poly.gon() << ")\n";
    std::cout << "diameter   " << (check.metrics.diameter ? std::to_string(*check.metrics.diameter) : "inf")
              << " (want " << poly.gon() << ")\n";
    std::cout << "regular    " << (check.regular ? "yes" : "no") << "\n";
    std::cout << "result     " << (check.ok ? "ok" : "FAILED " + check.detail) << "\n";
    return check.ok ? kOk : kFailed;
}

// --- construct ---------------------------------------------------------------

struct ConstructArgs
{
    std::string method;
    std::string planar_kind = "point-on-line";
    std::optional<std::size_t> point;
    std::optional<std::size_t> line;
    std::size_t centre = 0;
    std::size_t anchor = 0;
    std::optional<std::size_t> hex_point;
    std::string dual;
    std::uint64_t seed = kDefaultSeed;
    std::string out;
};

Rows parse_dual(const std::string & spec, const GaloisField & f)
{
    Rows rows;
    std::istringstream in(spec);
    std::string row;
    while (std::getline(in, row, ';')) {
        Vec v;
        std::istringstream rs(row);
        std::string x;
        while (std::getline(rs, x, ',')) {
            const auto c = std::stoul(x);
            if (c >= f.q())
                throw UsageError("--dual: coordinate outside the field");
            v.push_back(static_cast<Elem>(c));
        }
        if (v.size() != 7)
            throw UsageError("--dual: each row needs 7 coordinates");
        rows.push_back(std::move(v));
    }
    if (rows.size() != 2)
        throw UsageError("--dual: expected two rows separated by ';'");
    return rows;
}

int cmd_construct(HostArgs & host, const ConstructArgs & a)
{
    const auto start = std::chrono::steady_clock::now();
    RunManifest m;
    m.command = "construct";
    m.parameters = {{"method", a.method}, {"polygon", host.kind}, {"q", host.q}};
    m.seed = a.seed;
    GoodStructure g;
    std::optional<IncidencePolygon> poly;
    if (a.method == "planar") {
        poly = host.load(&m);
        if (poly->kind() != PolygonKind::ProjectivePlane)
            throw UsageError("planar constructions need PG(2,q)");
        g = planar_one_good(*poly, planar_kind_from_string(a.planar_kind), a.point, a.line);
    } else if (a.method == "lift") {
        poly = host.load(&m);
        if (poly->kind() != PolygonKind::Symplectic)
            throw UsageError("the lift needs W(3,q)");
        const auto plane = build_pg2(poly->q());
        const auto planar = planar_one_good(plane, planar_kind_from_string(a.planar_kind), a.point, a.line);
        g = lift_w3(*poly, plane, planar, plane_embedding(*poly, a.centre, plane, a.anchor));
        m.parameters["centre"] = a.centre;
        m.parameters["anchor"] = a.anchor;
        m.parameters["planar"] = a.planar_kind;
    } else if (a.method == "hexagon") {
        if (host.q == 0)
            throw UsageError("the hexagon construction needs --q");
        const auto hex = build_hexagon(host.q);
        const HexagonContext ctx(hex);
        const auto & f = hex.polygon.field();
        std::mt19937_64 rng(a.seed);
        FourSpace S = a.dual.empty() ? random_four_space(f, rng) : four_space_from_dual(f, parse_dual(a.dual, f));
        std::size_t A = 0;
        if (a.hex_point) {
            A = *a.hex_point;
        } else {
            std::vector<std::size_t> cands;
            for (std::size_t x = 0; x < hex.polygon.num_points(); ++x)
                if (S.space.contains_point(f, hex.polygon.point(x)))
                    cands.push_back(x);
            if (cands.empty())
                throw UsageError("the 4-space contains no hexagon point");
            A = cands[std::uniform_int_distribution<std::size_t>(0, cands.size() - 1)(rng)];
        }
        const auto res = hexagon_good(ctx, S, A);
        g = res.structure;
        poly = hex.polygon;
        m.parameters["case"] = to_string(res.direct.hex_case);
        std::cerr << "case " << to_string(res.direct.hex_case) << ", |L1| " << res.direct.counts.l1 << ", |L2| "
                  << res.direct.counts.l2 << ", |L1 cap L2| " << res.direct.counts.l1l2 << "\n";
    } else {
        throw UsageError("unknown --method '" + a.method + "' (planar, lift, hexagon)");
    }
    const auto rep = verify_tgood(*poly, g);
    std::cerr << poly->name() << ": structure of size " << g.size() << ", " << (rep.valid ? "1-good" : "INVALID")
              << ", complement " << rep.subgraph_vertices << " vertices\n";
    emit_json(structure_to_json(*poly, g), a.out, m);
    finish_manifest(m, start);
    return rep.valid ? kOk : kFailed;
}

// --- verify-good -------------------------------------------------------------

int cmd_verify_good(const HostArgs & host, const std::string & in, bool girth)
{
    const auto poly = host.load();
    const auto g = structure_from_json(read_json_file(in), poly);
    const auto r = verify_tgood(poly, g, girth);
    std::cout << "host              " << poly.name() << "\n";
    std::cout << "t                 " << g.t << "\n";
    std::cout << "points / lines    " << g.points.size() << " / " << g.lines.size() << "\n";
    std::cout << "bad points        " << r.bad_points << "\n";
    std::cout << "bad lines         " << r.bad_lines << "\n";
    std::cout << "subgraph vertices " << r.subgraph_vertices << "\n";
    std::cout << "subgraph regular  " << (r.complement_regular ? "yes" : "no") << " (degree "
              << r.complement_degree << ")\n";
    if (girth)
        std::cout << "subgraph girth    " << (r.complement_girth ? std::to_string(*r.complement_girth) : "inf")
                  << "\n";
    const auto bound = tgood_upper_bound(poly.gon(), poly.q(), g.t);
    std::cout << "size bound        " << fixed(bound.tgood_bound, 6) << " (floor " << bound.tgood_floor << ")\n";
    for (const auto & issue : r.issues)
        std::cout << "issue             " << issue << "\n";
    std::cout << "result            " << (r.valid ? "valid" : "INVALID") << "\n";
    return r.valid ? kOk : kFailed;
}

// --- bound ---------------------------------------------------------------------

struct BoundArgs
{
    bool tgood = false;
    bool ratio = false;
    bool cage = false;
    bool moore = false;
    bool compare = false;
    unsigned n = 4;
    unsigned q = 0;
    unsigned t = 1;
    unsigned g = 8;
    unsigned k = 0;
    double d = 0;
    double kk = 0;
    double lambda = 0;
};

int cmd_bound(const BoundArgs & a)
{
    if (!(a.tgood || a.ratio || a.cage || a.moore))
        throw UsageError("choose one of --tgood, --ratio, --cage, --moore");
    if (a.tgood) {
        if (a.q == 0)
            throw UsageError("--tgood needs --q");
        const auto b = tgood_upper_bound(a.n, a.q, a.t);
        std::cout << "n  q  t  bound        floor  exact\n";
        std::printf("%-2u %-2u %-2u %-12s %-6llu %s\n", a.n, a.q, a.t, fixed(b.tgood_bound, 9).c_str(),
                    static_cast<unsigned long long>(b.tgood_floor), b.exact ? "yes" : "no");
        if (a.compare) {
            std::optional<std::uint64_t> best;
            if (a.n == 4 && a.t == 1 && !lift_sizes(a.q).empty())
                best = *lift_sizes(a.q).rbegin();
            if (a.n == 6 && a.t == 1)
                best = *achievable_sizes(a.q).rbegin();
            if (a.n == 3 && a.t == 1)
                best = exact_sqrt(a.q) ? a.q + *exact_sqrt(a.q) + 1 : a.q + 2;
            if (best)
                std::cout << "largest constructed: " << *best << "\n";
            else
                std::cout << "largest constructed: n/a\n";
        }
    }
    if (a.ratio) {
        const auto b = subgraph_ratio_bounds(a.d, a.kk, a.lambda);
        std::cout << "d  k  lambda       lower        upper        lower>0\n";
        std::printf("%-2s %-2s %-12s %-12s %-12s %s\n", fixed(a.d, 0).c_str(), fixed(a.kk, 0).c_str(),
                    fixed(a.lambda, 9).c_str(), fixed(b.lower_ratio, 9).c_str(), fixed(b.upper_ratio, 9).c_str(),
                    b.lower_positive ? "yes" : "no");
    }
    if (a.cage) {
        if (a.q == 0)
            throw UsageError("--cage needs --q");
        std::cout << "c(" << a.q + 1 << "," << a.g << ") <= " << cage_bounds(a.q, a.g) << "\n";
    }
    if (a.moore) {
        if (a.k == 0)
            throw UsageError("--moore needs --k");
        std::cout << "moore(" << a.k << "," << a.g << ") = " << moore_bound(a.k, a.g) << "\n";
    }
    return kOk;
}

// --- spectrum ------------------------------------------------------------------

int cmd_spectrum(const HostArgs & host, bool full)
{
    const auto poly = host.load();
    const auto r = incidence_spectrum(poly);
    std::cout << "polygon  " << poly.name() << "\n";
    std::cout << "lambda1  " << fixed(r.lambda1) << "\n";
    std::cout << "lambda2  " << fixed(r.lambda2) << "\n";
    if (full) {
        std::map<std::string, std::size_t> mult;
        for (double x : r.gram_spectrum)
            ++mult[fixed(std::sqrt(std::max(0.0, x)), 6)];
        std::cout << "singular values of N (multiplicity):\n";
        for (auto it = mult.rbegin(); it != mult.rend(); ++it)
            std::cout << "  " << it->first << "  x" << it->second << "\n";
    }
    return kOk;
}

// --- search / classify -----------------------------------------------------------

struct SearchArgs
{
    unsigned t = 1;
    std::string group;
    unsigned jobs = 0;
    std::string checkpoint;
    bool classify = false;
    bool no_symmetry = false;
    bool collineations_only = false;
    std::uint64_t node_limit = 0;
    std::size_t target_items = 64;
    std::string out;
    std::optional<std::size_t> min_size;
    std::optional<std::size_t> max_size;
};

int report_classes(const IncidencePolygon & poly, const std::vector<GoodStructure> & sols, bool collineations_only,
                   const std::string & out, RunManifest & m)
{
    const auto g = collineation_group(poly);
    std::optional<PermGroup> eq;
    ClassifyOptions co;
    if (!collineations_only && duality_permutation(poly)) {
        eq = correlation_group(poly);
        co.equivalence = &*eq;
    }
    const auto classes = classify_solutions(poly, sols, g, co);
    std::string lines;
    for (const auto & c : classes)
        lines += class_to_json(poly, c).dump() + "\n";
    if (!out.empty() && out != "-") {
        write_text_file(out, lines);
        m.add_output(out);
    }
    std::size_t under_collineations = 0;
    for (const auto & c : classes)
        under_collineations += c.merged;
    std::cout << poly.name() << ": " << under_collineations << " classes under collineations";
    if (co.equivalence)
        std::cout << ", " << classes.size() << " up to duality";
    std::cout << "\n";
    std::cout << class_table(classes);
    return kOk;
}

std::vector<GoodStructure> read_solutions(const std::string & path, const IncidencePolygon & poly)
{
    std::ifstream in(path);
    if (!in)
        throw IoError(path + ": cannot open");
    std::vector<GoodStructure> sols;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        try {
            auto j = Json::parse(line);
            if (j.contains("representative"))
                j = j.at("representative");
            sols.push_back(structure_from_json(j, poly));
        } catch (const std::exception & e) {
            throw IoError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return sols;
}

int cmd_search(const HostArgs & host, SearchArgs a)
{
    const auto start = std::chrono::steady_clock::now();
    RunManifest m;
    m.command = "search";
    const auto poly = host.load(&m);
    auto h = parse_group(a.group, poly, m);
    if (a.jobs == 0)
        a.jobs = default_jobs();
    m.parameters = {{"t", a.t},         {"group", a.group},         {"jobs", a.jobs},
                    {"symmetry", !a.no_symmetry && !h}, {"node_limit", a.node_limit}, {"target_items", a.target_items}};

    SearchOptions opts;
    opts.t = a.t;
    opts.jobs = a.jobs;
    opts.checkpoint = a.checkpoint;
    opts.node_limit = a.node_limit;
    opts.target_items = a.target_items;
    opts.min_size = a.min_size;
    opts.max_size = a.max_size;
    std::optional<PermGroup> sym;
    SearchResult res;
    if (h) {
        res = enumerate_with_group(poly, *h, opts);
    } else {
        if (!a.no_symmetry && (poly.kind() == PolygonKind::Symplectic || poly.kind() == PolygonKind::ProjectivePlane)) {
            sym = collineation_group(poly);
            opts.symmetry = &*sym;
        }
        res = enumerate_one_good(poly, opts);
    }
    std::cerr << "search: " << res.solutions.size() << " solutions, " << res.stats.nodes << " nodes, "
              << res.stats.items << " work items (" << res.stats.items_resumed << " resumed)"
              << (res.stats.complete ? "" : ", INCOMPLETE") << "\n";

    int status = kOk;
    if (a.classify) {
        if (a.t != 1)
            throw UsageError("--classify supports t = 1 only");
        status = report_classes(poly, res.solutions, a.collineations_only, a.out, m);
    } else {
        std::string lines;
        for (const auto & g : res.solutions) {
            auto s = g;
            s.provenance = "search";
            lines += structure_to_json(poly, s).dump() + "\n";
        }
        if (a.out.empty() || a.out == "-") {
            std::cout << lines;
        } else {
            write_text_file(a.out, lines);
            m.add_output(a.out);
        }
    }
    finish_manifest(m, start);
    if (!res.stats.complete)
        return kFailed;
    return status;
}

int cmd_classify(const HostArgs & host, const std::string & in, bool collineations_only, const std::string & out)
{
    const auto start = std::chrono::steady_clock::now();
    RunManifest m;
    m.command = "classify";
    const auto poly = host.load(&m);
    m.add_input(in);
    const auto sols = read_solutions(in, poly);
    for (std::size_t i = 0; i < sols.size(); ++i)
        if (!verify_tgood(poly, sols[i], false).valid) {
            std::cerr << in << ": solution " << i + 1 << " is not a valid structure\n";
            return kFailed;
        }
    const auto status = report_classes(poly, sols, collineations_only, out, m);
    finish_manifest(m, start);
    return status;
}

// --- report ------------------------------------------------------------------

int cmd_report(const HostArgs & host)
{
    const auto poly = host.load();
    const auto check = verify_polygon(poly);
    const auto spec = incidence_spectrum(poly);
    const auto bound = tgood_upper_bound(poly.gon(), poly.q(), 1);
    std::cout << "polygon           " << poly.name() << " (" << poly.num_points() << " points, " << poly.num_lines()
              << " lines)\n";
    std::cout << "axioms            " << (check.ok ? "ok" : "FAILED " + check.detail) << "\n";
    std::cout << "lambda2           " << fixed(spec.lambda2) << "\n";
    std::cout << "1-good bound      " << fixed(bound.tgood_bound, 6) << " (floor " << bound.tgood_floor << ")\n";
    if (poly.kind() == PolygonKind::ProjectivePlane || poly.kind() == PolygonKind::Symplectic) {
        const auto g = collineation_group(poly);
        std::cout << "collineations     " << g.order() << "\n";
    }
    if (poly.kind() == PolygonKind::Symplectic) {
        std::cout << "lift sizes        ";
        for (auto s : lift_sizes(poly.q()))
            std::cout << s << " ";
        std::cout << "\n";
    }
    if (poly.kind() == PolygonKind::Hexagon) {
        std::cout << "hexagon sizes     ";
        for (auto s : achievable_sizes(poly.q()))
            std::cout << s << " ";
        std::cout << "\n";
    }
    if (poly.kind() == PolygonKind::Symplectic && (poly.q() == 4 || poly.q() == 9))
        std::cout << "cage bound        c(" << poly.q() + 1 << ",8) <= " << cage_bounds(poly.q(), 8) << "\n";
    return check.ok ? kOk : kFailed;
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Generalized polygons, t-good structures and their classification"};
    app.require_subcommand(1);

    HostArgs host;
    std::string out;

    auto * build = app.add_subcommand("build", "Build a polygon and write it as JSON");
    bool build_verify = false;
    build->add_option("--polygon", host.kind, "pg2, w3 or hexagon")->required();
    build->add_option("--q", host.q, "Order")->required();
    build->add_option("--out", out, "Output file (default stdout)");
    build->add_flag("--verify", build_verify, "Check the polygon axioms first");

    auto * vpoly = app.add_subcommand("verify-polygon", "Check regularity, girth and diameter");
    host.add(vpoly);

    auto * construct = app.add_subcommand("construct", "Build a 1-good structure");
    ConstructArgs ca;
    host.add(construct);
    construct->add_option("--method", ca.method, "planar, lift or hexagon")->required();
    construct->add_option("--kind", ca.planar_kind, "Planar family: point-on-line, point-off-line, baer");
    construct->add_option("--point", ca.point, "Planar point id");
    construct->add_option("--line", ca.line, "Planar line id");
    construct->add_option("--centre", ca.centre, "Lift centre (point of W(3,q))");
    construct->add_option("--anchor", ca.anchor, "Plane point sent to the centre");
    construct->add_option("--A", ca.hex_point, "Hexagon point in the 4-space");
    construct->add_option("--dual", ca.dual, "4-space as two dual vectors 'a,b,..;c,d,..'");
    construct->add_option("--seed", ca.seed, "Seed for random choices");
    construct->add_option("--out", ca.out, "Output file (default stdout)");

    auto * vgood = app.add_subcommand("verify-good", "Verify a structure against its host polygon");
    std::string vgood_in;
    bool vgood_girth = false;
    host.add(vgood);
    vgood->add_option("--in", vgood_in, "Structure JSON")->required();
    vgood->add_flag("--girth", vgood_girth, "Also compute the girth of the complement");

    auto * bound = app.add_subcommand("bound", "Evaluate spectral and cage bounds");
    BoundArgs ba;
    bound->add_flag("--tgood", ba.tgood, "Upper bound on t-good structures");
    bound->add_flag("--ratio", ba.ratio, "Vertex-ratio window for a k-regular induced subgraph");
    bound->add_flag("--cage", ba.cage, "Cage bound from the constructions");
    bound->add_flag("--moore", ba.moore, "Moore bound");
    bound->add_flag("--compare", ba.compare, "Also print the largest constructed structure");
    bound->add_option("--n", ba.n, "Polygon gonality (3, 4 or 6)");
    bound->add_option("--q", ba.q, "Order");
    bound->add_option("--t", ba.t, "Goodness parameter");
    bound->add_option("--g", ba.g, "Girth");
    bound->add_option("--k", ba.k, "Degree for the Moore bound");
    bound->add_option("--degree", ba.d, "Host degree d for --ratio");
    bound->add_option("--sub-degree", ba.kk, "Subgraph degree k for --ratio");
    bound->add_option("--lambda", ba.lambda, "Second eigenvalue for --ratio");

    auto * spectrum = app.add_subcommand("spectrum", "Incidence-graph eigenvalues");
    bool spectrum_full = false;
    host.add(spectrum);
    spectrum->add_flag("--full", spectrum_full, "Print the whole spectrum");

    auto * search = app.add_subcommand("search", "Exhaustive search for t-good structures");
    SearchArgs sa;
    host.add(search);
    search->add_option("--t", sa.t, "Goodness parameter");
    search->add_option("--group", sa.group, "Prescribed automorphisms: full, trivial, stabilizer:FILE, gens:FILE");
    search->add_option("--jobs", sa.jobs, "Worker threads (default $POLYFORGE_JOBS or 1)");
    search->add_option("--checkpoint", sa.checkpoint, "JSON-lines checkpoint of finished work items");
    search->add_flag("--classify", sa.classify, "Classify the solutions");
    search->add_flag("--no-symmetry", sa.no_symmetry, "Disable root symmetry breaking");
    search->add_flag("--collineations-only", sa.collineations_only, "Do not merge classes related by a duality");
    search->add_option("--node-limit", sa.node_limit, "Abort after this many nodes");
    search->add_option("--items", sa.target_items, "Number of root work items");
    search->add_option("--min-size", sa.min_size, "Smallest structure size");
    search->add_option("--max-size", sa.max_size, "Largest structure size");
    search->add_option("--out", sa.out, "JSON-lines output (default stdout)");

    auto * classify = app.add_subcommand("classify", "Classify structures from a JSON-lines file");
    std::string classify_in;
    bool classify_colls = false;
    host.add(classify);
    classify->add_option("--in", classify_in, "JSON-lines structures")->required();
    classify->add_flag("--collineations-only", classify_colls, "Do not merge classes related by a duality");
    classify->add_option("--out", out, "JSON-lines class output");

    auto * report = app.add_subcommand("report", "Summary of a polygon");
    host.add(report);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError & e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*build)
            return cmd_build(host, out, build_verify);
        if (*vpoly)
            return cmd_verify_polygon(host);
        if (*construct)
            return cmd_construct(host, ca);
        if (*vgood)
            return cmd_verify_good(host, vgood_in, vgood_girth);
        if (*bound)
            return cmd_bound(ba);
        if (*spectrum)
            return cmd_spectrum(host, spectrum_full);
        if (*search)
            return cmd_search(host, sa);
        if (*classify)
            return cmd_classify(host, classify_in, classify_colls, out);
        if (*report)
            return cmd_report(host);
    } catch (const UsageError & e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const IoError & e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument & e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailed;
    }
    return kUsage;
}
