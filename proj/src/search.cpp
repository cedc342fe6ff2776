#include <polyforge/constructions.hpp>
#include <polyforge/search.hpp>

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace polyforge {

namespace {

using json = nlohmann::json;

} // namespace

SearchModel SearchModel::elements(const IncidencePolygon & poly, unsigned t)
{
    SearchModel m;
    m.poly_ = &poly;
    m.t_ = t;
    const auto np = poly.num_points();
    const auto nl = poly.num_lines();
    m.vars_.resize(np + nl);
    m.point_var_.resize(np);
    m.line_var_.resize(nl);
    for (std::uint32_t p = 0; p < np; ++p) {
        auto & v = m.vars_[p];
        v.elements = {p};
        for (auto l : poly.lines_on(p))
            v.adj.push_back({static_cast<std::uint32_t>(np + l), 1, 1});
        v.total = static_cast<std::uint32_t>(v.adj.size());
        m.point_var_[p] = p;
    }
    for (std::uint32_t l = 0; l < nl; ++l) {
        auto & v = m.vars_[np + l];
        v.is_line = true;
        v.elements = {l};
        for (auto p : poly.points_on(l))
            v.adj.push_back({p, 1, 1});
        v.total = static_cast<std::uint32_t>(v.adj.size());
        m.line_var_[l] = static_cast<std::uint32_t>(np + l);
    }
    return m;
}

SearchModel SearchModel::orbits(const IncidencePolygon & poly, const PermGroup & h, unsigned t)
{
    const auto np = poly.num_points();
    const auto nl = poly.num_lines();
    if (h.degree() != np + nl)
        throw GroupError("group degree does not match the polygon");
    for (const auto & g : h.generators())
        if (!preserves_incidence(poly, g))
            throw GroupError("group does not preserve incidence");

    SearchModel m;
    m.poly_ = &poly;
    m.t_ = t;
    m.point_var_.resize(np);
    m.line_var_.resize(nl);
    for (const auto & orb : polyforge::orbits(h)) {
        const bool is_line = orb.front() >= np;
        for (auto x : orb)
            if ((x >= np) != is_line)
                throw GroupError("group mixes points and lines");
        Variable v;
        v.is_line = is_line;
        for (auto x : orb) {
            const auto id = is_line ? static_cast<std::uint32_t>(x - np) : x;
            v.elements.push_back(id);
            (is_line ? m.line_var_[id] : m.point_var_[id]) = static_cast<std::uint32_t>(m.vars_.size());
        }
        m.vars_.push_back(std::move(v));
    }
    // Incidences from one representative into each other orbit.
    std::vector<std::map<std::uint32_t, std::uint32_t>> counts(m.vars_.size());
    for (std::uint32_t i = 0; i < m.vars_.size(); ++i) {
        const auto & v = m.vars_[i];
        const auto rep = v.elements.front();
        const auto & nbrs = v.is_line ? poly.points_on(rep) : poly.lines_on(rep);
        for (auto y : nbrs)
            ++counts[i][v.is_line ? m.point_var_[y] : m.line_var_[y]];
    }
    for (std::uint32_t i = 0; i < m.vars_.size(); ++i) {
        for (auto [j, c] : counts[i]) {
            m.vars_[i].adj.push_back({j, c, counts[j].at(i)});
            m.vars_[i].total += c;
        }
    }
    return m;
}

std::uint32_t SearchModel::var_of(bool is_line, std::uint32_t id) const
{
    return is_line ? line_var_.at(id) : point_var_.at(id);
}

SearchState::SearchState(const SearchModel & model)
    : model_(&model)
    , status_(model.size(), VarStatus::Undecided)
    , chosen_(model.size(), 0)
    , undec_(model.size(), 0)
    , queued_(model.size(), 0)
{
    for (std::size_t i = 0; i < model.size(); ++i) {
        undec_[i] = model.var(i).total;
        if (!model.var(i).is_line)
            points_possible_ += model.var(i).elements.size();
    }
}

void SearchState::set(std::uint32_t v, VarStatus s)
{
    status_[v] = s;
    trail_.push_back(v);
    const auto & var = model_->var(v);
    const auto w = var.elements.size();
    if (!var.is_line) {
        if (s == VarStatus::In)
            points_in_ += w;
        else
            points_possible_ -= w;
    }
    for (const auto & n : var.adj) {
        undec_[n.var] -= n.rev;
        if (s == VarStatus::In)
            chosen_[n.var] += n.rev;
        if (!queued_[n.var]) {
            queued_[n.var] = 1;
            queue_.push_back(n.var);
        }
    }
    if (!queued_[v]) {
        queued_[v] = 1;
        queue_.push_back(v);
    }
}

bool SearchState::assign(std::size_t v, VarStatus s)
{
    if (status_[v] != VarStatus::Undecided)
        return status_[v] == s;
    set(static_cast<std::uint32_t>(v), s);
    return true;
}

bool SearchState::propagate()
{
    const auto t = model_->t();
    bool ok = true;
    std::size_t head = 0;
    while (ok && head < queue_.size()) {
        const auto v = queue_[head++];
        queued_[v] = 0;
        ++stats.propagations;
        const auto st = status_[v];
        if (st == VarStatus::In)
            continue;
        if (st == VarStatus::Undecided) {
            if (chosen_[v] > t || chosen_[v] + undec_[v] < t)
                set(v, VarStatus::In);
            continue;
        }
        if (chosen_[v] > t || chosen_[v] + undec_[v] < t) {
            ok = false;
            break;
        }
        if (undec_[v] == 0)
            continue;
        for (const auto & n : model_->var(v).adj) {
            if (status_[n.var] != VarStatus::Undecided)
                continue;
            if (chosen_[v] + n.fwd > t)
                set(n.var, VarStatus::Out);
            else if (chosen_[v] + undec_[v] - n.fwd < t)
                set(n.var, VarStatus::In);
            if (chosen_[v] > t || chosen_[v] + undec_[v] < t) {
                ok = false;
                break;
            }
        }
    }
    for (std::size_t i = head; i < queue_.size(); ++i)
        queued_[queue_[i]] = 0;
    queue_.clear();
    return ok;
}

void SearchState::undo(std::size_t mark)
{
    while (trail_.size() > mark) {
        const auto v = trail_.back();
        trail_.pop_back();
        const auto & var = model_->var(v);
        const bool in = status_[v] == VarStatus::In;
        for (const auto & n : var.adj) {
            undec_[n.var] += n.rev;
            if (in)
                chosen_[n.var] -= n.rev;
        }
        if (!var.is_line) {
            if (in)
                points_in_ -= var.elements.size();
            else
                points_possible_ += var.elements.size();
        }
        status_[v] = VarStatus::Undecided;
    }
}

std::optional<std::uint32_t> SearchState::pick_branch() const
{
    std::optional<std::uint32_t> best;
    std::uint32_t best_score = 0;
    for (std::uint32_t v = 0; v < status_.size(); ++v) {
        if (status_[v] != VarStatus::Undecided)
            continue;
        if (!best || undec_[v] < best_score) {
            best = v;
            best_score = undec_[v];
        }
    }
    return best;
}

GoodStructure SearchState::structure() const
{
    GoodStructure g;
    g.t = model_->t();
    for (std::size_t v = 0; v < status_.size(); ++v) {
        if (status_[v] != VarStatus::In)
            continue;
        const auto & var = model_->var(v);
        auto & dst = var.is_line ? g.lines : g.points;
        dst.insert(dst.end(), var.elements.begin(), var.elements.end());
    }
    g.normalize();
    return g;
}

std::vector<WorkItem> root_items(const SearchModel & model, const PermGroup * symmetry)
{
    if (!symmetry)
        return {WorkItem{}};
    const auto & poly = model.polygon();
    const auto np = static_cast<std::uint32_t>(poly.num_points());
    if (symmetry->degree() != poly.num_vertices())
        throw GroupError("symmetry group degree does not match the polygon");

    auto var_p = [&](std::uint32_t p) { return model.var_of(false, p); };
    auto var_l = [&](std::uint32_t l) { return model.var_of(true, l); };

    // Branch i puts the representative of orbit i in and the earlier orbits
    // out; the final branch puts every candidate out. Any structure meeting
    // the candidates is mapped by the (pointwise) stabilizer onto exactly
    // one branch, so the split is complete.
    std::vector<WorkItem> items;
    std::vector<std::uint32_t> all_points(np);
    for (std::uint32_t p = 0; p < np; ++p)
        all_points[p] = p;

    WorkItem level0;
    for (const auto & orb1 : orbits_on(*symmetry, all_points)) {
        const auto p = orb1.front();
        WorkItem item1 = level0;
        item1.forced.emplace_back(var_p(p), true);
        const auto k1 = set_stabilizer(*symmetry, {p});

        std::vector<std::uint32_t> lines_p;
        for (auto l : poly.lines_on(p))
            lines_p.push_back(np + l);
        WorkItem level1 = item1;
        for (const auto & orb2 : orbits_on(k1, lines_p)) {
            const auto l = orb2.front() - np;
            WorkItem item2 = level1;
            item2.forced.emplace_back(var_l(l), true);
            const auto k2 = set_stabilizer(k1, {np + l});

            std::vector<std::uint32_t> pts_l;
            for (auto x : poly.points_on(l))
                if (x != p)
                    pts_l.push_back(x);
            WorkItem level2 = item2;
            for (const auto & orb3 : orbits_on(k2, pts_l)) {
                WorkItem item3 = level2;
                item3.forced.emplace_back(var_p(orb3.front()), true);
                items.push_back(std::move(item3));
                for (auto x : orb3)
                    level2.forced.emplace_back(var_p(x), false);
            }
            items.push_back(std::move(level2));
            for (auto x : orb2)
                level1.forced.emplace_back(var_l(x - np), false);
        }
        items.push_back(std::move(level1));
        for (auto x : orb1)
            level0.forced.emplace_back(var_p(x), false);
    }
    items.push_back(std::move(level0));
    return items;
}

namespace {

bool apply_forced(SearchState & st, const WorkItem & item)
{
    for (auto [v, in] : item.forced)
        if (!st.assign(v, in ? VarStatus::In : VarStatus::Out))
            return false;
    return st.propagate();
}

struct Runner
{
    const SearchModel & model;
    const SearchOptions & opts;
    std::atomic<std::uint64_t> & nodes_total;
    std::atomic<bool> & aborted;

    bool size_ok(const SearchState & st) const
    {
        if (opts.max_size && st.points_in() > *opts.max_size)
            return false;
        if (opts.min_size && st.points_possible() < *opts.min_size)
            return false;
        return true;
    }

    void emit(const SearchState & st, std::vector<GoodStructure> & out) const
    {
        auto g = st.structure();
        const auto & poly = model.polygon();
        if (!opts.include_trivial && g.points.size() == poly.num_points() && g.lines.size() == poly.num_lines())
            return;
        if (!verify_tgood(poly, g, false).valid)
            throw std::logic_error("search emitted an invalid structure");
        out.push_back(std::move(g));
    }

    void dfs(SearchState & st, std::vector<GoodStructure> & out) const
    {
        if (aborted.load(std::memory_order_relaxed))
            return;
        ++st.stats.nodes;
        if (opts.node_limit && nodes_total.fetch_add(1, std::memory_order_relaxed) + 1 > opts.node_limit) {
            aborted = true;
            return;
        }
        if (!size_ok(st))
            return;
        const auto v = st.pick_branch();
        if (!v) {
            emit(st, out);
            return;
        }
        for (auto s : {VarStatus::In, VarStatus::Out}) {
            const auto mark = st.trail_size();
            st.assign(*v, s);
            if (st.propagate())
                dfs(st, out);
            st.undo(mark);
        }
    }
};

std::vector<WorkItem> split_items(const SearchModel & model, std::vector<WorkItem> items, std::size_t target)
{
    while (items.size() < target) {
        std::vector<WorkItem> next;
        bool grew = false;
        for (auto & item : items) {
            SearchState st(model);
            if (!apply_forced(st, item))
                continue;
            const auto v = st.pick_branch();
            if (!v || next.size() + 2 > 2 * target) {
                next.push_back(std::move(item));
                continue;
            }
            for (bool in : {true, false}) {
                WorkItem child = item;
                child.forced.emplace_back(*v, in);
                next.push_back(std::move(child));
            }
            grew = true;
        }
        items = std::move(next);
        if (!grew)
            break;
    }
    return items;
}

std::string item_key(const WorkItem & item)
{
    std::ostringstream os;
    for (auto [v, in] : item.forced)
        os << (in ? '+' : '-') << v;
    return os.str();
}

json structure_json(const GoodStructure & g)
{
    return json{{"points", g.points}, {"lines", g.lines}};
}

struct ItemResult
{
    bool done = false;
    bool resumed = false;
    std::vector<GoodStructure> solutions;
    SearchStats stats;
};

} // namespace

SearchResult run_search(const SearchModel & model, std::vector<WorkItem> items, const SearchOptions & opts)
{
    if (opts.t != model.t())
        throw std::invalid_argument("search options and model disagree on t");
    items = split_items(model, std::move(items), std::max<std::size_t>(opts.target_items, 1));

    std::vector<ItemResult> results(items.size());
    std::vector<std::string> keys(items.size());
    for (std::size_t i = 0; i < items.size(); ++i)
        keys[i] = item_key(items[i]);

    if (!opts.checkpoint.empty()) {
        std::ifstream in(opts.checkpoint);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty())
                continue;
            json j;
            try {
                j = json::parse(line);
            } catch (const json::exception &) {
                continue; // torn final line
            }
            const auto idx = j.at("item").get<std::size_t>();
            if (idx >= items.size() || j.at("key").get<std::string>() != keys[idx])
                throw std::runtime_error("checkpoint does not match this search");
            auto & r = results[idx];
            r.done = r.resumed = true;
            r.stats.nodes = j.at("nodes").get<std::uint64_t>();
            for (const auto & s : j.at("solutions")) {
                GoodStructure g;
                g.t = model.t();
                g.points = s.at("points").get<std::vector<std::uint32_t>>();
                g.lines = s.at("lines").get<std::vector<std::uint32_t>>();
                r.solutions.push_back(std::move(g));
            }
        }
    }

    std::atomic<std::uint64_t> nodes_total{0};
    std::atomic<bool> aborted{false};
    std::atomic<std::size_t> next{0};
    std::mutex io_mutex;
    std::ofstream ckpt;
    if (!opts.checkpoint.empty())
        ckpt.open(opts.checkpoint, std::ios::app);
    std::exception_ptr failure;

    auto worker = [&] {
        Runner runner{model, opts, nodes_total, aborted};
        SearchState st(model);
        for (;;) {
            const auto i = next.fetch_add(1);
            if (i >= items.size() || aborted)
                return;
            auto & r = results[i];
            if (r.done)
                continue;
            try {
                st.stats = {};
                if (apply_forced(st, items[i]))
                    runner.dfs(st, r.solutions);
                st.undo(0);
            } catch (...) {
                std::lock_guard lock(io_mutex);
                failure = std::current_exception();
                aborted = true;
                return;
            }
            r.stats = st.stats;
            if (aborted)
                return;
            r.done = true;
            if (ckpt.is_open()) {
                json j{{"item", i}, {"key", keys[i]}, {"nodes", r.stats.nodes}, {"solutions", json::array()}};
                for (const auto & g : r.solutions)
                    j["solutions"].push_back(structure_json(g));
                std::lock_guard lock(io_mutex);
                ckpt << j.dump() << '\n';
                ckpt.flush();
            }
        }
    };

    const unsigned jobs = std::max(1u, opts.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j)
            pool.emplace_back(worker);
        for (auto & th : pool)
            th.join();
    }
    if (failure)
        std::rethrow_exception(failure);

    SearchResult out;
    out.stats.items = items.size();
    for (auto & r : results) {
        out.stats.nodes += r.stats.nodes;
        out.stats.propagations += r.stats.propagations;
        if (r.resumed)
            ++out.stats.items_resumed;
        if (!r.done)
            out.stats.complete = false;
        for (auto & g : r.solutions)
            out.solutions.push_back(std::move(g));
    }
    std::sort(out.solutions.begin(), out.solutions.end(), [](const GoodStructure & a, const GoodStructure & b) {
        return std::tie(a.points, a.lines) < std::tie(b.points, b.lines);
    });
    out.solutions.erase(std::unique(out.solutions.begin(), out.solutions.end()), out.solutions.end());
    out.stats.solutions = out.solutions.size();
    return out;
}

SearchResult enumerate_one_good(const IncidencePolygon & poly, const SearchOptions & opts)
{
    const auto model = SearchModel::elements(poly, opts.t);
    return run_search(model, root_items(model, opts.symmetry), opts);
}

SearchResult enumerate_with_group(const IncidencePolygon & poly, const PermGroup & h, const SearchOptions & opts)
{
    const auto model = SearchModel::orbits(poly, h, opts.t);
    if (opts.symmetry)
        throw std::invalid_argument("symmetry breaking is not available in orbit mode");
    return run_search(model, {WorkItem{}}, opts);
}

namespace {

std::string domain_key(const std::vector<std::uint32_t> & ids, std::size_t n)
{
    std::string key((n + 7) / 8, '\0');
    for (auto x : ids)
        key[x / 8] = static_cast<char>(key[x / 8] | (1 << (x % 8)));
    return key;
}

} // namespace

SolutionClass describe_structure(const IncidencePolygon & poly, const GoodStructure & s, const PermGroup & g)
{
    SolutionClass c;
    c.representative = s;
    const auto comp = complement_domain(poly, s);
    const auto dom = structure_domain(poly, s);
    c.subgraph_size = comp.size();
    const auto stab = set_stabilizer(g, dom);
    c.stabilizer_order = stab.order();
    c.orbit_size = g.order() / c.stabilizer_order;
    c.orbits_subgraph = orbit_lengths(stab, comp);
    c.orbits_structure = orbit_lengths(stab, dom);
    return c;
}

std::vector<GoodStructure> all_lifts(const IncidencePolygon & w)
{
    const auto plane = build_pg2(w.q());
    SearchOptions opts;
    const auto planar = enumerate_one_good(plane, opts);
    const auto emb = plane_embedding(w, 0, plane, 0);
    std::vector<GoodStructure> out;
    out.reserve(planar.solutions.size());
    for (const auto & p : planar.solutions)
        out.push_back(lift_w3(w, plane, p, emb));
    return out;
}

std::vector<SolutionClass> classify_solutions(const IncidencePolygon & poly, const std::vector<GoodStructure> & sols,
                                              const PermGroup & g, const ClassifyOptions & opts)
{
    const auto & eq = opts.equivalence ? *opts.equivalence : g;
    const auto n = poly.num_vertices();
    std::unordered_map<std::string, std::size_t> seen;
    std::vector<SolutionClass> classes;
    for (const auto & s : sols) {
        const auto dom = structure_domain(poly, s);
        const auto key = domain_key(dom, n);
        if (auto it = seen.find(key); it != seen.end()) {
            ++classes[it->second].hits;
            continue;
        }
        auto c = describe_structure(poly, s, g);
        const auto idx = classes.size();
        const auto orbit = set_orbit(eq, dom, opts.orbit_ceiling);
        c.merged = orbit.size() / c.orbit_size;
        for (const auto & img : orbit)
            seen.emplace(domain_key(img, n), idx);
        c.hits = 1;
        classes.push_back(std::move(c));
    }
    if (opts.tag_lifts && poly.kind() == PolygonKind::Symplectic && !sols.empty()) {
        for (const auto & lift : all_lifts(poly)) {
            const auto it = seen.find(domain_key(structure_domain(poly, lift), n));
            if (it != seen.end())
                classes[it->second].from_lift = true;
        }
    }
    for (auto & c : classes) {
        auto dom = minimal_image(eq, structure_domain(poly, c.representative), opts.orbit_ceiling);
        auto rep = structure_from_domain(poly, dom, c.representative.t);
        rep.provenance = c.from_lift ? "lift" : "search";
        const auto merged = c.merged;
        const auto hits = c.hits;
        const auto from_lift = c.from_lift;
        c = describe_structure(poly, rep, g);
        c.merged = merged;
        c.hits = hits;
        c.from_lift = from_lift;
    }
    std::sort(classes.begin(), classes.end(), [](const SolutionClass & a, const SolutionClass & b) {
        return std::tie(a.subgraph_size, a.stabilizer_order, a.representative.points, a.representative.lines) <
               std::tie(b.subgraph_size, b.stabilizer_order, b.representative.points, b.representative.lines);
    });
    return classes;
}

} // namespace polyforge
