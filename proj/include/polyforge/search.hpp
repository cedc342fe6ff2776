#pragma once

#include <polyforge/good.hpp>
#include <polyforge/permgroup.hpp>
#include <polyforge/polygon.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace polyforge {

enum class VarStatus : std::uint8_t { Undecided, In, Out };

/// Boolean CSP for t-good structures. A variable is a single element or an
/// orbit of a group; neighbour weights count incidences from one element of
/// a variable into another variable.
class SearchModel
{
public:
    struct Neighbour
    {
        std::uint32_t var;
        /// Elements of `var` incident with one element of this variable.
        std::uint32_t fwd;
        /// Elements of this variable incident with one element of `var`.
        std::uint32_t rev;
    };

    struct Variable
    {
        bool is_line = false;
        std::vector<std::uint32_t> elements;
        std::vector<Neighbour> adj;
        std::uint32_t total = 0;
    };

    /// One variable per point and per line.
    static SearchModel elements(const IncidencePolygon & poly, unsigned t);

    /// One variable per orbit of h; throws GroupError if h does not preserve incidence.
    static SearchModel orbits(const IncidencePolygon & poly, const PermGroup & h, unsigned t);

    const IncidencePolygon & polygon() const { return *poly_; }
    unsigned t() const { return t_; }
    std::size_t size() const { return vars_.size(); }
    const Variable & var(std::size_t i) const { return vars_[i]; }
    /// Variable containing a point (is_line false) or line.
    std::uint32_t var_of(bool is_line, std::uint32_t id) const;

private:
    const IncidencePolygon * poly_ = nullptr;
    unsigned t_ = 1;
    std::vector<Variable> vars_;
    std::vector<std::uint32_t> point_var_;
    std::vector<std::uint32_t> line_var_;
};

struct SearchStats
{
    std::uint64_t nodes = 0;
    std::uint64_t propagations = 0;
    std::uint64_t solutions = 0;
    std::size_t items = 0;
    std::size_t items_resumed = 0;
    bool complete = true;
};

/// Search state with counters and an undo trail.
class SearchState
{
public:
    explicit SearchState(const SearchModel & model);

    VarStatus status(std::size_t v) const { return status_[v]; }
    /// Weight of In / Undecided neighbours seen from an element of v.
    std::uint32_t chosen(std::size_t v) const { return chosen_[v]; }
    std::uint32_t undecided(std::size_t v) const { return undec_[v]; }

    /// Decision without propagation; false if v is already decided otherwise.
    bool assign(std::size_t v, VarStatus s);

    /// Runs the rules to a fixpoint; false on conflict.
    bool propagate();

    std::size_t trail_size() const { return trail_.size(); }
    void undo(std::size_t mark);

    /// Fail-first branching variable, or none if all are decided.
    std::optional<std::uint32_t> pick_branch() const;

    /// Point weight currently In and In-or-Undecided.
    std::uint64_t points_in() const { return points_in_; }
    std::uint64_t points_possible() const { return points_possible_; }

    GoodStructure structure() const;

    SearchStats stats;

private:
    void set(std::uint32_t v, VarStatus s);

    const SearchModel * model_;
    std::vector<VarStatus> status_;
    std::vector<std::uint32_t> chosen_;
    std::vector<std::uint32_t> undec_;
    std::vector<std::uint32_t> trail_;
    std::vector<std::uint32_t> queue_;
    std::vector<char> queued_;
    std::uint64_t points_in_ = 0;
    std::uint64_t points_possible_ = 0;
};

/// A root-level subproblem: variables forced In (true) or Out (false).
struct WorkItem
{
    std::vector<std::pair<std::uint32_t, bool>> forced;
};

struct SearchOptions
{
    unsigned t = 1;
    /// Collineation group used for root symmetry breaking (not owned).
    const PermGroup * symmetry = nullptr;
    std::optional<std::size_t> min_size;
    std::optional<std::size_t> max_size;
    /// Abort after this many nodes (0 = unlimited); the result is marked incomplete.
    std::uint64_t node_limit = 0;
    unsigned jobs = 1;
    /// JSON-lines file of finished work items; resumed when present.
    std::string checkpoint;
    /// Root subproblems are split until at least this many exist.
    std::size_t target_items = 1;
    /// Also report the vacuous structure containing every element.
    bool include_trivial = false;
};

struct SearchResult
{
    std::vector<GoodStructure> solutions;
    SearchStats stats;
};

/// Work items of the root symmetry-breaking split (one empty item without a group).
std::vector<WorkItem> root_items(const SearchModel & model, const PermGroup * symmetry);

/// Runs the search over the given work items.
SearchResult run_search(const SearchModel & model, std::vector<WorkItem> items, const SearchOptions & opts);

SearchResult enumerate_one_good(const IncidencePolygon & poly, const SearchOptions & opts);
SearchResult enumerate_with_group(const IncidencePolygon & poly, const PermGroup & h, const SearchOptions & opts);

struct SolutionClass
{
    GoodStructure representative;
    std::size_t subgraph_size = 0;
    std::uint64_t stabilizer_order = 0;
    std::vector<std::size_t> orbits_subgraph;
    std::vector<std::size_t> orbits_structure;
    bool from_lift = false;
    /// Number of input solutions falling in this class.
    std::size_t hits = 0;
    std::uint64_t orbit_size = 0;
    /// Classes under g merged into this one by the equivalence group.
    std::size_t merged = 1;
};

struct ClassifyOptions
{
    /// Tag classes containing a lift of a planar 1-good structure (W(3,q) only).
    bool tag_lifts = true;
    std::size_t orbit_ceiling = 50'000'000;
    /// Group whose orbits define the classes (defaults to g); stabilizers
    /// and orbit data are always taken in g.
    const PermGroup * equivalence = nullptr;
};

/// Splits verified solutions into collineation classes, sorted by subgraph
/// size, then stabilizer order, then representative.
std::vector<SolutionClass> classify_solutions(const IncidencePolygon & poly, const std::vector<GoodStructure> & sols,
                                              const PermGroup & g, const ClassifyOptions & opts = {});

/// Orbit-size data of one structure under its stabilizer.
SolutionClass describe_structure(const IncidencePolygon & poly, const GoodStructure & s, const PermGroup & g);

/// All lifts from point 0 of all planar 1-good structures of PG(2,q).
std::vector<GoodStructure> all_lifts(const IncidencePolygon & w);

} // namespace polyforge
