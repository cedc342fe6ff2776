#pragma once

#include <polyforge/good.hpp>
#include <polyforge/polygon.hpp>
#include <polyforge/search.hpp>

#include <json.hpp>

#include <chrono>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polyforge {

using Json = nlohmann::json;

/// Malformed input; the message names the offending field.
class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Field spec, point coordinates, line bases and incidence pairs.
Json polygon_to_json(const IncidencePolygon & poly);
/// Rebuilds the polygon and checks the stored incidence pairs against it.
IncidencePolygon polygon_from_json(const Json & j);

/// "name k=v k=v" <-> {"construction": name, "parameters": {k: v}}.
Json provenance_to_json(const std::string & provenance);
std::string provenance_from_json(const Json & j);

Json host_descriptor(const IncidencePolygon & poly);
Json structure_to_json(const IncidencePolygon & poly, const GoodStructure & g);
/// Reads a structure and checks that its host descriptor matches `poly`.
GoodStructure structure_from_json(const Json & j, const IncidencePolygon & poly);

Json class_to_json(const IncidencePolygon & poly, const SolutionClass & c);
/// Aligned text table with the columns Size, Stabiliser, Orbits (subgraph),
/// Orbits (structure), Lift.
std::string class_table(const std::vector<SolutionClass> & classes);

/// Multiset {a^k, ...} in the compact notation used by the tables.
std::string multiset_string(const std::vector<std::size_t> & sorted_values);

Json read_json_file(const std::string & path);
/// Writes `text` to the file (creating or truncating it).
void write_text_file(const std::string & path, const std::string & text);

/// Hex SHA-256 of a file's bytes.
std::string file_digest(const std::string & path);
std::string text_digest(const std::string & text);

struct RunManifest
{
    std::string command;
    Json parameters = Json::object();
    std::string version;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<std::pair<std::string, std::string>> outputs;
    double wall_seconds = 0;
    std::uint64_t seed = 0;

    void add_input(const std::string & path) { inputs.emplace_back(path, file_digest(path)); }
    void add_output(const std::string & path) { outputs.emplace_back(path, file_digest(path)); }
    Json to_json() const;
    /// Writes the manifest next to every output as <output>.manifest.json.
    void write() const;
};

std::string library_version();

} // namespace polyforge
