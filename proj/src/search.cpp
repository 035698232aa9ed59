#include <stargrid/search.hpp>
#include <stargrid/verify.hpp>

#include "dynamic_search.hpp"
#include "learning_search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <climits>
#include <mutex>
#include <set>
#include <thread>

namespace stargrid {

const char* to_string(SearchStatus s) noexcept
{
    switch (s) {
    case SearchStatus::found:
        return "found";
    case SearchStatus::exhausted:
        return "exhausted";
    case SearchStatus::budget_exceeded:
        return "budget-exceeded";
    }
    return "?";
}

std::vector<EdgeId> get_edge_ordering(const GridGraph& g, std::span<const char> precolored)
{
    const int ne = g.edge_count();
    std::vector<int> pre(static_cast<std::size_t>(ne), 0);
    std::vector<int> ordered(static_cast<std::size_t>(ne), 0);
    std::vector<char> taken(static_cast<std::size_t>(ne), 0);
    int remaining = 0;
    for (EdgeId e = 0; e < ne; ++e) {
        if (precolored[e]) {
            taken[e] = 1;
            continue;
        }
        ++remaining;
        for (EdgeId f : g.adjacent(e))
            if (precolored[f])
                ++pre[e];
    }

    std::vector<EdgeId> order;
    order.reserve(static_cast<std::size_t>(remaining));
    while (remaining-- > 0) {
        EdgeId best = -1;
        for (EdgeId e = 0; e < ne; ++e) {
            if (taken[e])
                continue;
            if (best < 0 || pre[e] > pre[best] || (pre[e] == pre[best] && ordered[e] > ordered[best]))
                best = e;
        }
        taken[best] = 1;
        order.push_back(best);
        for (EdgeId f : g.adjacent(best))
            ++ordered[f];
    }
    return order;
}

std::vector<EdgeId> get_edge_ordering(const EdgeColoring& partial)
{
    std::vector<char> pre(partial.colors().size());
    for (std::size_t e = 0; e < pre.size(); ++e)
        pre[e] = partial.colors()[e] != kUnset;
    return get_edge_ordering(partial.graph(), pre);
}

std::vector<EdgeId> fiber_sweep_ordering(const EdgeColoring& partial)
{
    const GridGraph& g = partial.graph();
    std::vector<EdgeId> order;
    auto take = [&](EdgeId e) {
        if (partial[e] == kUnset)
            order.push_back(e);
    };
    for (int j = 0; j < g.right().size(); ++j) {
        for (int a = 0; a < g.left().edge_count(); ++a)
            take(g.left_edge(a, j));
        // Right-factor edge j joins fibers j and j+1 (the wrap closes the last one).
        if (j < g.right().edge_count())
            for (int i = 0; i < g.left().size(); ++i)
                take(g.right_edge(i, j));
    }
    return order;
}

std::optional<Violation> conflict(const EdgeColoring& partial, EdgeId e, Color c)
{
    const GridGraph& g = partial.graph();
    for (EdgeId f : g.adjacent(e))
        if (partial[f] == c)
            return Violation{ViolationKind::adjacent_same_color, {std::min(e, f), std::max(e, f)}};
    auto color_of = [&](EdgeId x) { return x == e ? c : partial[x]; };
    for (auto si : g.structures_through(e)) {
        const Structure& s = g.structures()[static_cast<std::size_t>(si)];
        const auto& x = s.edges;
        Color c0 = color_of(x[0]), c1 = color_of(x[1]), c2 = color_of(x[2]), c3 = color_of(x[3]);
        if (c0 == kUnset || c1 == kUnset || c2 == kUnset || c3 == kUnset)
            continue;
        if (c0 == c2 && c1 == c3)
            return Violation{s.kind == StructureKind::path ? ViolationKind::bichromatic_path
                                                           : ViolationKind::bichromatic_cycle,
                             {x.begin(), x.end()}};
    }
    return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;

/// Shared stop signals for one star_color call.
struct Control {
    const SearchLimits* limits = nullptr;
    Clock::time_point start;
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> budget_hit{false};
    std::atomic<std::size_t> best_task{SIZE_MAX};

    bool over_budget(std::uint64_t delta)
    {
        if (budget_hit.load(std::memory_order_relaxed))
            return true;
        auto total = nodes.fetch_add(delta, std::memory_order_relaxed) + delta;
        if (limits->max_nodes && total > limits->max_nodes)
            budget_hit = true;
        if (limits->max_time.count() && Clock::now() - start > limits->max_time)
            budget_hit = true;
        return budget_hit.load(std::memory_order_relaxed);
    }
};

enum class DfsResult { completed, stopped, aborted };

/// Mutable search state: colors plus per-vertex color masks for O(1)
/// properness checks. Copied once per worker.
class Engine {
public:
    Engine(const GridGraph& g, int k, const std::vector<ConstraintPtr>& constraints, bool ordered_new_colors,
           bool forward_check)
        : g_(&g), k_(k), constraints_(&constraints), ordered_new_(ordered_new_colors),
          colors_(static_cast<std::size_t>(g.edge_count()), kUnset), vmask_(static_cast<std::size_t>(g.vertex_count()), 0)
    {
        ends_.reserve(static_cast<std::size_t>(g.edge_count()));
        for (const auto& ge : g.edges())
            ends_.push_back({g.vertex_index(ge.u), g.vertex_index(ge.v)});
        if (forward_check) {
            // Edges whose admissible colors can shrink when e is colored.
            affected_.resize(static_cast<std::size_t>(g.edge_count()));
            for (EdgeId e = 0; e < g.edge_count(); ++e) {
                auto& list = affected_[e];
                list.assign(g.adjacent(e).begin(), g.adjacent(e).end());
                for (auto si : g.structures_through(e))
                    for (EdgeId f : g.structures()[static_cast<std::size_t>(si)].edges)
                        if (f != e)
                            list.push_back(f);
                std::sort(list.begin(), list.end());
                list.erase(std::unique(list.begin(), list.end()), list.end());
            }
        }
    }

    void set_order(std::vector<EdgeId> order)
    {
        order_ = std::move(order);
        next_.assign(order_.size() + 1, 0);
    }
    const std::vector<EdgeId>& order() const noexcept { return order_; }
    std::span<const Color> colors() const noexcept { return colors_; }

    bool admissible(EdgeId e, Color c)
    {
        const std::uint32_t bit = 1u << c;
        const auto [u, v] = ends_[e];
        if ((vmask_[u] | vmask_[v]) & bit)
            return false;
        if (ordered_new_ && !(used_mask_ & bit) && c != std::countr_one(used_mask_))
            return false;
        for (const QuadEntry& q : g_->quad_entries(e)) {
            if (colors_[q.opposite] != c)
                continue;
            Color a = colors_[q.first];
            if (a != kUnset && a == colors_[q.second])
                return false;
        }
        if (!constraints_->empty()) {
            colors_[e] = c;
            bool ok = std::all_of(constraints_->begin(), constraints_->end(),
                                  [&](const ConstraintPtr& p) { return p->admits(colors_, e); });
            colors_[e] = kUnset;
            return ok;
        }
        return true;
    }

    /// False if coloring e left some uncolored edge nearby with no color
    /// compatible with its colored surroundings.
    bool lookahead(EdgeId e) const
    {
        if (affected_.empty())
            return true;
        const std::uint32_t all = (1u << k_) - 1;
        for (EdgeId f : affected_[e]) {
            if (colors_[f] != kUnset)
                continue;
            std::uint32_t banned = vmask_[ends_[f].first] | vmask_[ends_[f].second];
            for (const QuadEntry& q : g_->quad_entries(f)) {
                Color a = colors_[q.first];
                Color o = colors_[q.opposite];
                if (a != kUnset && o != kUnset && a == colors_[q.second])
                    banned |= 1u << o;
            }
            if ((banned & all) == all)
                return false;
        }
        return true;
    }

    void assign(EdgeId e, Color c)
    {
        const std::uint32_t bit = 1u << c;
        colors_[e] = c;
        vmask_[ends_[e].first] |= bit;
        vmask_[ends_[e].second] |= bit;
        if (use_count_[c]++ == 0)
            used_mask_ |= bit;
    }

    void unassign(EdgeId e)
    {
        const Color c = colors_[e];
        const std::uint32_t bit = 1u << c;
        colors_[e] = kUnset;
        vmask_[ends_[e].first] &= ~bit;
        vmask_[ends_[e].second] &= ~bit;
        if (--use_count_[c] == 0)
            used_mask_ &= ~bit;
    }

    /// Explores order_[base..end). next_[d] is the first color not yet tried
    /// at depth d; it is reset whenever the search descends to d afresh, so a
    /// retreat past d forgets what was tried there. on_leaf returns true to
    /// stop. should_abort is polled every few thousand nodes.
    template <class OnLeaf, class ShouldAbort>
    DfsResult dfs(std::size_t base, std::size_t end, std::uint64_t& nodes, OnLeaf&& on_leaf, ShouldAbort&& should_abort)
    {
        std::size_t depth = base;
        next_[depth] = 0;
        std::uint64_t since_poll = 0;
        for (;;) {
            if (depth == end) {
                if (on_leaf())
                    return DfsResult::stopped;
                if (depth == base)
                    return DfsResult::completed;
                --depth;
                unassign(order_[depth]);
                continue;
            }
            const EdgeId e = order_[depth];
            bool placed = false;
            for (int c = next_[depth]; c < k_; ++c) {
                if (admissible(e, static_cast<Color>(c))) {
                    assign(e, static_cast<Color>(c));
                    if (!lookahead(e)) {
                        unassign(e);
                        continue;
                    }
                    next_[depth] = static_cast<std::int8_t>(c + 1);
                    placed = true;
                    break;
                }
            }
            if (placed) {
                ++nodes;
                ++depth;
                next_[depth] = 0;
                if (++since_poll >= 4096) {
                    if (should_abort(since_poll))
                        return DfsResult::aborted;
                    since_poll = 0;
                }
                continue;
            }
            if (depth == base)
                return DfsResult::completed;
            --depth;
            unassign(order_[depth]);
        }
    }

private:
    const GridGraph* g_;
    int k_;
    const std::vector<ConstraintPtr>* constraints_;
    bool ordered_new_;
    std::vector<Color> colors_;
    std::vector<std::uint32_t> vmask_;
    std::vector<std::pair<int, int>> ends_;
    std::array<int, kMaxColors> use_count_{};
    std::uint32_t used_mask_ = 0;
    std::vector<EdgeId> order_;
    std::vector<std::int8_t> next_;
    std::vector<std::vector<EdgeId>> affected_;
};

struct Task {
    std::vector<Color> prefix;          // colors of order[0..split)
    std::uint64_t nodes_at_emission = 0;  // prefix-tree nodes visited up to this leaf
};

struct TaskResult {
    DfsResult result = DfsResult::completed;
    bool found = false;
    std::uint64_t nodes = 0;
    std::uint64_t solutions = 0;
    std::vector<std::vector<Color>> colorings;
};

}  // namespace

SearchOutcome star_color(const GraphPtr& gp, const SearchConfig& cfg)
{
    const auto start = Clock::now();
    if (!gp)
        throw std::invalid_argument("star_color needs a graph");
    const GridGraph& g = *gp;
    const int k = cfg.colors;
    if (k < 1 || k > kMaxColors)
        throw std::invalid_argument("color budget must be in 1.." + std::to_string(kMaxColors));

    EdgeColoring base(gp, k);
    if (cfg.precoloring) {
        const EdgeColoring& pre = *cfg.precoloring;
        if (pre.graph().left() != g.left() || pre.graph().right() != g.right())
            throw std::invalid_argument("precoloring is for " + pre.graph().name() + ", not " + g.name());
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            if (pre[e] == kUnset)
                continue;
            if (pre[e] >= k)
                throw std::invalid_argument("precolored edge uses color " + std::to_string(pre[e]) +
                                            " outside the budget of " + std::to_string(k));
            base.set(e, pre[e]);
        }
        if (auto v = verify_partial(base))
            throw std::invalid_argument("precoloring is not a partial star coloring: " + describe(g, *v));
        for (EdgeId e = 0; e < g.edge_count(); ++e)
            if (base[e] != kUnset)
                for (const auto& c : cfg.constraints)
                    if (!c->admits(base.colors(), e))
                        throw std::invalid_argument("precoloring violates constraint '" + c->name() + "'");
    }

    SearchOutcome out;
    bool ordered_new = cfg.ordered_new_colors;
    if (cfg.symmetry == SymmetryBreaking::fix_max_degree_vertex) {
        if (!base.empty())
            throw std::invalid_argument("symmetry breaking cannot be combined with a precoloring");
        int hub = 0;
        for (int v = 0; v < g.vertex_count(); ++v)
            if (g.degree(v) > g.degree(hub))
                hub = v;
        auto inc = g.incident(hub);
        if (static_cast<int>(inc.size()) > k) {
            out.status = SearchStatus::exhausted;
            out.elapsed = Clock::now() - start;
            return out;
        }
        std::vector<EdgeId> edges(inc.begin(), inc.end());
        std::sort(edges.begin(), edges.end());
        for (std::size_t t = 0; t < edges.size(); ++t)
            base.set(edges[t], static_cast<Color>(t));
        ordered_new = true;
    }

    // Every reported coloring is re-checked from scratch.
    auto recheck = [&](const SearchOutcome& res) {
        for (const auto& c : res.colorings) {
            for (EdgeId e = 0; e < g.edge_count(); ++e)
                if (base[e] != kUnset && c[e] != base[e])
                    throw std::logic_error("search changed a precolored edge");
            if (auto v = verify_star(c))
                throw std::logic_error("search produced an invalid coloring: " + describe(g, *v));
            for (EdgeId e = 0; e < g.edge_count(); ++e)
                for (const auto& p : cfg.constraints)
                    if (!p->admits(c.colors(), e))
                        throw std::logic_error("search result violates constraint '" + p->name() + "'");
        }
    };

    if (cfg.engine == SearchEngine::clause_learning || cfg.ordering == EdgeOrdering::dynamic) {
        Control control;
        control.limits = &cfg.limits;
        control.start = start;
        auto budget = [&](std::uint64_t delta) { return control.over_budget(delta); };
        auto r = cfg.engine == SearchEngine::clause_learning ? detail::learning_search(g, cfg, base, budget)
                                                             : detail::dynamic_search(g, cfg, base, ordered_new, budget);
        out.nodes = r.nodes;
        out.solutions = r.solutions;
        for (auto& c : r.colorings)
            out.colorings.emplace_back(gp, k, std::move(c));
        if (cfg.mode == SearchMode::first && !out.colorings.empty())
            out.status = SearchStatus::found;
        else
            out.status = r.aborted ? SearchStatus::budget_exceeded : SearchStatus::exhausted;
        if (cfg.mode == SearchMode::first && out.status != SearchStatus::found)
            out.colorings.clear();
        recheck(out);
        out.elapsed = Clock::now() - start;
        return out;
    }

    Engine root(g, k, cfg.constraints, ordered_new, cfg.forward_check);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (base[e] != kUnset)
            root.assign(e, base[e]);
    root.set_order(cfg.ordering == EdgeOrdering::greedy ? get_edge_ordering(base) : fiber_sweep_ordering(base));
    const std::size_t n = root.order().size();

    Control control;
    control.limits = &cfg.limits;
    control.start = start;

    // Split the top of the tree into tasks in depth-first order. Node counts
    // and results are then the same as a single depth-first pass regardless
    // of how many workers pick up the tasks.
    const std::size_t split = std::min<std::size_t>(static_cast<std::size_t>(std::max(cfg.split_depth, 0)), n);
    std::vector<Task> tasks;
    std::uint64_t prefix_nodes = 0;
    auto prefix_result = root.dfs(
        0, split, prefix_nodes,
        [&] {
            Task t;
            t.nodes_at_emission = prefix_nodes;
            for (std::size_t d = 0; d < split; ++d)
                t.prefix.push_back(root.colors()[root.order()[d]]);
            tasks.push_back(std::move(t));
            return false;
        },
        [&](std::uint64_t delta) { return control.over_budget(delta); });

    std::vector<TaskResult> results(tasks.size());
    std::atomic<std::size_t> next_task{0};
    auto work = [&] {
        Engine eng = root;
        for (;;) {
            const std::size_t t = next_task.fetch_add(1);
            if (t >= tasks.size())
                return;
            TaskResult& r = results[t];
            if (cfg.mode == SearchMode::first && control.best_task.load() < t) {
                r.result = DfsResult::aborted;
                continue;
            }
            for (std::size_t d = 0; d < split; ++d)
                eng.assign(eng.order()[d], tasks[t].prefix[d]);
            r.result = eng.dfs(
                split, n, r.nodes,
                [&] {
                    ++r.solutions;
                    if (cfg.mode != SearchMode::count_all)
                        r.colorings.emplace_back(eng.colors().begin(), eng.colors().end());
                    if (cfg.mode == SearchMode::first) {
                        r.found = true;
                        std::size_t cur = control.best_task.load();
                        while (t < cur && !control.best_task.compare_exchange_weak(cur, t)) {
                        }
                        return true;
                    }
                    return false;
                },
                [&](std::uint64_t delta) {
                    if (cfg.mode == SearchMode::first && control.best_task.load() < t)
                        return true;
                    return control.over_budget(delta);
                });
            // Roll the engine back to the root state for the next task.
            for (std::size_t d = n; d-- > 0;)
                if (eng.colors()[eng.order()[d]] != kUnset)
                    eng.unassign(eng.order()[d]);
        }
    };

    const int workers = std::max(1, std::min<int>(cfg.workers, static_cast<int>(tasks.size())));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(work);
    }

    out.nodes = 0;
    bool budget = prefix_result == DfsResult::aborted || control.budget_hit.load();
    std::size_t winner = SIZE_MAX;
    if (cfg.mode == SearchMode::first)
        for (std::size_t t = 0; t < results.size(); ++t)
            if (results[t].found) {
                winner = t;
                break;
            }

    if (winner != SIZE_MAX) {
        out.status = SearchStatus::found;
        out.nodes = tasks[winner].nodes_at_emission;
        for (std::size_t t = 0; t <= winner; ++t)
            out.nodes += results[t].nodes;
        out.solutions = 1;
        out.colorings.emplace_back(gp, k, std::move(results[winner].colorings.front()));
    } else {
        out.nodes = prefix_nodes;
        for (auto& r : results) {
            out.nodes += r.nodes;
            out.solutions += r.solutions;
            if (r.result == DfsResult::aborted)
                budget = true;
            for (auto& c : r.colorings)
                out.colorings.emplace_back(gp, k, std::move(c));
        }
        out.status = budget ? SearchStatus::budget_exceeded : SearchStatus::exhausted;
        if (cfg.mode == SearchMode::first)
            out.colorings.clear();
    }

    recheck(out);
    out.elapsed = Clock::now() - start;
    return out;
}

int chi_star(const GraphPtr& g, int k_max, const ChiOptions& opts)
{
    if (g->edge_count() == 0)
        return 0;
    const int lo = std::max(1, g->max_degree());
    if (k_max < lo)
        throw std::invalid_argument("k_max " + std::to_string(k_max) + " is below the maximum degree " +
                                    std::to_string(lo));
    for (int k = lo; k <= k_max; ++k) {
        SearchConfig cfg;
        cfg.colors = k;
        cfg.symmetry = opts.symmetry_breaking ? SymmetryBreaking::fix_max_degree_vertex : SymmetryBreaking::none;
        cfg.limits = opts.limits;
        cfg.workers = opts.workers;
        auto r = star_color(g, cfg);
        if (r.status == SearchStatus::found)
            return k;
        if (r.status == SearchStatus::budget_exceeded)
            throw BudgetExceeded("search budget exceeded at k=" + std::to_string(k) + " on " + g->name());
    }
    throw std::runtime_error(g->name() + " has no star coloring with at most " + std::to_string(k_max) + " colors");
}

Enumeration enumerate_colorings(const GraphPtr& g, int k, SymmetryGroup group, const SearchLimits& limits,
                                int workers)
{
    const bool plain_cycle = (g->left().is_cycle() && g->right() == FactorGraph::path(1)) ||
                             (g->right().is_cycle() && g->left() == FactorGraph::path(1));
    if (group == SymmetryGroup::full && !plain_cycle)
        throw std::invalid_argument("the full symmetry group is only defined for plain cycles, not " + g->name());

    SearchConfig cfg;
    cfg.colors = k;
    cfg.mode = SearchMode::collect_all;
    cfg.ordered_new_colors = true;  // every group here contains the color permutations
    cfg.limits = limits;
    cfg.workers = workers;
    auto r = star_color(g, cfg);
    if (r.status == SearchStatus::budget_exceeded)
        throw BudgetExceeded("enumeration budget exceeded on " + g->name());

    std::set<std::vector<Color>> forms;
    for (const auto& c : r.colorings)
        forms.insert(group == SymmetryGroup::full ? canonical_cycle_coloring(c.colors(), group)
                                                  : relabel_first_seen(c.colors()));
    Enumeration out;
    out.count = forms.size();
    out.forms.assign(forms.begin(), forms.end());
    return out;
}

ExtendResult extendable(int m, std::span<const Color> fiber_colors, int k, int depth, const SearchLimits& limits,
                        int workers)
{
    if (depth < 1)
        throw std::invalid_argument("extension depth must be at least 1");
    if (static_cast<int>(fiber_colors.size()) != m)
        throw std::invalid_argument("fiber coloring has " + std::to_string(fiber_colors.size()) +
                                    " colors for a cycle of length " + std::to_string(m));
    for (Color c : fiber_colors)
        if (c < 0 || c >= k)
            throw std::invalid_argument("fiber color " + std::to_string(c) + " outside 0.." + std::to_string(k - 1));
    {
        EdgeColoring ring(make_grid(FactorGraph::cycle(m), FactorGraph::path(1)), k,
                          std::vector<Color>(fiber_colors.begin(), fiber_colors.end()));
        if (auto v = verify_star(ring))
            throw std::invalid_argument("fiber coloring is not a star coloring of C" + std::to_string(m) + ": " +
                                        to_string(v->kind));
    }

    GraphPtr g = make_grid(FactorGraph::cycle(m), FactorGraph::path(depth));
    EdgeColoring pre(g, k);
    const int mid = middle_fiber(depth);
    for (int a = 0; a < m; ++a)
        pre.set(g->left_edge(a, mid), fiber_colors[static_cast<std::size_t>(a)]);

    SearchConfig cfg;
    cfg.colors = k;
    cfg.precoloring = pre;
    cfg.limits = limits;
    cfg.workers = workers;
    auto r = star_color(g, cfg);

    ExtendResult out;
    out.nodes = r.nodes;
    switch (r.status) {
    case SearchStatus::found:
        out.status = ExtendStatus::yes;
        out.coloring = r.colorings.front();
        break;
    case SearchStatus::exhausted:
        out.status = ExtendStatus::no;
        break;
    case SearchStatus::budget_exceeded:
        out.status = ExtendStatus::budget_exceeded;
        break;
    }
    return out;
}

}  // namespace stargrid
