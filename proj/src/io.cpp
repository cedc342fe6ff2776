#include <polyforge/io.hpp>

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

namespace polyforge {

namespace {

template <typename T>
T field_at(const Json & j, const char * key, const std::string & where)
{
    if (!j.is_object() || !j.contains(key))
        throw IoError(where + ": missing field '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception & e) {
        throw IoError(where + "." + key + ": " + e.what());
    }
}

Vec to_vec(const Json & j, unsigned q, const std::string & where)
{
    Vec v;
    try {
        for (const auto & x : j) {
            const auto c = x.get<unsigned>();
            if (c >= q)
                throw IoError(where + ": coordinate " + std::to_string(c) + " outside the field");
            v.push_back(static_cast<Elem>(c));
        }
    } catch (const Json::exception & e) {
        throw IoError(where + ": " + e.what());
    }
    return v;
}

Json vec_json(const Vec & v)
{
    Json a = Json::array();
    for (auto x : v)
        a.push_back(unsigned(x));
    return a;
}

} // namespace

Json polygon_to_json(const IncidencePolygon & poly)
{
    const auto & f = poly.field();
    Json j;
    j["kind"] = to_string(poly.kind());
    j["name"] = poly.name();
    j["gon"] = poly.gon();
    j["order"] = {poly.s(), poly.t()};
    j["ambient"] = poly.ambient();
    j["field"] = {{"p", f.p()},
                  {"e", f.e()},
                  {"modulus", std::vector<unsigned>(f.modulus().begin(), f.modulus().end())}};
    Json pts = Json::array();
    for (const auto & p : poly.points())
        pts.push_back(vec_json(p));
    j["points"] = std::move(pts);
    Json lines = Json::array();
    for (const auto & l : poly.lines()) {
        Json rows = Json::array();
        for (const auto & r : l.basis())
            rows.push_back(vec_json(r));
        lines.push_back(std::move(rows));
    }
    j["lines"] = std::move(lines);
    Json inc = Json::array();
    for (std::uint32_t l = 0; l < poly.num_lines(); ++l)
        for (auto p : poly.points_on(l))
            inc.push_back({p, l});
    std::sort(inc.begin(), inc.end());
    j["incidences"] = std::move(inc);
    return j;
}

IncidencePolygon polygon_from_json(const Json & j)
{
    const std::string where = "polygon";
    const auto kind_name = field_at<std::string>(j, "kind", where);
    PolygonKind kind;
    try {
        kind = polygon_kind_from_string(kind_name);
    } catch (const std::exception &) {
        throw IoError(where + ".kind: unknown polygon kind '" + kind_name + "'");
    }
    const auto & fj = j.contains("field") ? j.at("field") : Json();
    const auto p = field_at<unsigned>(fj, "p", where + ".field");
    const auto e = field_at<unsigned>(fj, "e", where + ".field");
    const auto modulus = field_at<std::vector<unsigned>>(fj, "modulus", where + ".field");
    FieldPtr f;
    try {
        f = GaloisField::make(p, e);
    } catch (const std::exception & ex) {
        throw IoError(where + ".field: " + ex.what());
    }
    if (std::vector<unsigned>(f->modulus().begin(), f->modulus().end()) != modulus)
        throw IoError(where + ".field.modulus: does not match the built-in table for GF(" + std::to_string(f->q()) + ")");

    const auto gon = field_at<unsigned>(j, "gon", where);
    const auto order = field_at<std::vector<unsigned>>(j, "order", where);
    if (order.size() != 2)
        throw IoError(where + ".order: expected [s, t]");
    const auto ambient = field_at<unsigned>(j, "ambient", where);

    std::vector<Vec> points;
    const auto pts = field_at<Json>(j, "points", where);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        auto v = to_vec(pts[i], f->q(), where + ".points[" + std::to_string(i) + "]");
        if (v.size() != ambient + 1)
            throw IoError(where + ".points[" + std::to_string(i) + "]: wrong length");
        points.push_back(std::move(v));
    }
    std::vector<Subspace> lines;
    const auto ls = field_at<Json>(j, "lines", where);
    for (std::size_t i = 0; i < ls.size(); ++i) {
        const auto at = where + ".lines[" + std::to_string(i) + "]";
        Rows rows;
        for (std::size_t r = 0; r < ls[i].size(); ++r) {
            auto v = to_vec(ls[i][r], f->q(), at + "[" + std::to_string(r) + "]");
            if (v.size() != ambient + 1)
                throw IoError(at + ": wrong row length");
            rows.push_back(std::move(v));
        }
        lines.push_back(Subspace::from_rows(*f, ambient, std::move(rows)));
    }
    try {
        IncidencePolygon poly(kind, gon, order[0], order[1], f, ambient, std::move(points), std::move(lines));
        if (j.contains("incidences")) {
            std::size_t count = 0;
            for (const auto & pair : j.at("incidences")) {
                const auto pi = pair.at(0).get<std::size_t>();
                const auto li = pair.at(1).get<std::size_t>();
                if (pi >= poly.num_points() || li >= poly.num_lines() || !poly.incident(pi, li))
                    throw IoError(where + ".incidences: pair [" + std::to_string(pi) + "," + std::to_string(li) +
                                  "] is not an incidence");
                ++count;
            }
            std::size_t expected = 0;
            for (std::size_t l = 0; l < poly.num_lines(); ++l)
                expected += poly.points_on(l).size();
            if (count != expected)
                throw IoError(where + ".incidences: incomplete list");
        }
        return poly;
    } catch (const IoError &) {
        throw;
    } catch (const std::exception & ex) {
        throw IoError(where + ": " + ex.what());
    }
}

Json provenance_to_json(const std::string & provenance)
{
    std::istringstream in(provenance);
    std::string name, token;
    in >> name;
    Json params = Json::object();
    while (in >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos)
            params[token] = true;
        else
            params[token.substr(0, eq)] = token.substr(eq + 1);
    }
    return {{"construction", name}, {"parameters", params}};
}

std::string provenance_from_json(const Json & j)
{
    std::string out = field_at<std::string>(j, "construction", "provenance");
    if (j.contains("parameters"))
        for (const auto & [k, v] : j.at("parameters").items())
            out += " " + k + (v.is_boolean() ? std::string() : "=" + v.get<std::string>());
    return out;
}

Json host_descriptor(const IncidencePolygon & poly)
{
    return {{"kind", to_string(poly.kind())},
            {"q", poly.q()},
            {"name", poly.name()},
            {"points", poly.num_points()},
            {"lines", poly.num_lines()}};
}

Json structure_to_json(const IncidencePolygon & poly, const GoodStructure & g)
{
    return {{"host", host_descriptor(poly)},
            {"t", g.t},
            {"points", g.points},
            {"lines", g.lines},
            {"size", g.size()},
            {"provenance", provenance_to_json(g.provenance)}};
}

GoodStructure structure_from_json(const Json & j, const IncidencePolygon & poly)
{
    const std::string where = "structure";
    const auto host = field_at<Json>(j, "host", where);
    if (field_at<std::string>(host, "kind", where + ".host") != to_string(poly.kind()) ||
        field_at<unsigned>(host, "q", where + ".host") != poly.q())
        throw IoError(where + ".host: structure belongs to a different polygon");
    GoodStructure g;
    g.t = field_at<unsigned>(j, "t", where);
    g.points = field_at<std::vector<std::uint32_t>>(j, "points", where);
    g.lines = field_at<std::vector<std::uint32_t>>(j, "lines", where);
    for (auto p : g.points)
        if (p >= poly.num_points())
            throw IoError(where + ".points: id " + std::to_string(p) + " out of range");
    for (auto l : g.lines)
        if (l >= poly.num_lines())
            throw IoError(where + ".lines: id " + std::to_string(l) + " out of range");
    if (j.contains("provenance"))
        g.provenance = provenance_from_json(j.at("provenance"));
    g.normalize();
    return g;
}

std::string multiset_string(const std::vector<std::size_t> & values)
{
    std::map<std::size_t, std::size_t> counts;
    for (auto v : values)
        ++counts[v];
    std::string out = "{";
    bool first = true;
    for (auto [v, c] : counts) {
        out += first ? "" : ",";
        first = false;
        out += std::to_string(v);
        if (c > 1)
            out += "^" + std::to_string(c);
    }
    return out + "}";
}

Json class_to_json(const IncidencePolygon & poly, const SolutionClass & c)
{
    return {{"subgraph_size", c.subgraph_size},
            {"stabilizer_order", c.stabilizer_order},
            {"orbits_subgraph", c.orbits_subgraph},
            {"orbits_structure", c.orbits_structure},
            {"from_lift", c.from_lift},
            {"merged_by_duality", c.merged > 1},
            {"solutions_seen", c.hits},
            {"representative", structure_to_json(poly, c.representative)}};
}

std::string class_table(const std::vector<SolutionClass> & classes)
{
    std::vector<std::array<std::string, 5>> rows;
    rows.push_back({"Size", "Stabiliser", "Orbits (subgraph)", "Orbits (structure)", "Lift"});
    for (const auto & c : classes)
        rows.push_back({std::to_string(c.subgraph_size), std::to_string(c.stabilizer_order),
                        multiset_string(c.orbits_subgraph), multiset_string(c.orbits_structure),
                        c.from_lift ? "yes" : ""});
    std::array<std::size_t, 5> width{};
    for (const auto & r : rows)
        for (std::size_t i = 0; i < 5; ++i)
            width[i] = std::max(width[i], r[i].size());
    std::ostringstream os;
    for (const auto & r : rows) {
        std::string line;
        for (std::size_t i = 0; i < 5; ++i) {
            std::string cell = r[i];
            if (i < 2)
                cell = std::string(width[i] - cell.size(), ' ') + cell;
            else if (i < 4)
                cell += std::string(width[i] - cell.size(), ' ');
            line += (i ? "  " : "") + cell;
        }
        while (!line.empty() && line.back() == ' ')
            line.pop_back();
        os << line << '\n';
    }
    return os.str();
}

Json read_json_file(const std::string & path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError(path + ": cannot open");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error & e) {
        throw IoError(path + ": " + e.what());
    }
}

void write_text_file(const std::string & path, const std::string & text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError(path + ": cannot write");
    out << text;
}

namespace {

std::string sha256_hex(const std::string & data)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
        throw IoError("sha256 failed");
    std::ostringstream os;
    for (unsigned i = 0; i < len; ++i)
        os << std::hex << std::setw(2) << std::setfill('0') << unsigned(md[i]);
    return os.str();
}

} // namespace

std::string text_digest(const std::string & text) { return sha256_hex(text); }

std::string file_digest(const std::string & path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError(path + ": cannot open");
    std::ostringstream buf;
    buf << in.rdbuf();
    return sha256_hex(buf.str());
}

Json RunManifest::to_json() const
{
    auto files = [](const std::vector<std::pair<std::string, std::string>> & v) {
        Json a = Json::array();
        for (const auto & [path, digest] : v)
            a.push_back({{"path", path}, {"sha256", digest}});
        return a;
    };
    return {{"command", command},
            {"parameters", parameters},
            {"version", version.empty() ? library_version() : version},
            {"inputs", files(inputs)},
            {"outputs", files(outputs)},
            {"wall_seconds", wall_seconds},
            {"seed", seed}};
}

void RunManifest::write() const
{
    const auto text = to_json().dump(2) + "\n";
    for (const auto & [path, digest] : outputs)
        write_text_file(path + ".manifest.json", text);
}

std::string library_version() { return "polyforge 1.0.0"; }

} // namespace polyforge
