#include "oracle.hpp"

#include <doctest.h>
#include <stargrid/canonical.hpp>
#include <stargrid/constraints.hpp>
#include <stargrid/search.hpp>
#include <stargrid/verify.hpp>

#include <random>
#include <set>
#include <stdexcept>

using namespace stargrid;

namespace {

GraphPtr grid(FactorGraph a, FactorGraph b) { return make_grid(a, b); }
GraphPtr cyc(int n) { return make_grid(FactorGraph::cycle(n), FactorGraph::path(1)); }

std::vector<Color> vec(const EdgeColoring& c) { return {c.colors().begin(), c.colors().end()}; }

// every star k-coloring, as plain color vectors
std::set<std::vector<Color>> all_colorings(const GridGraph& g, int k)
{
    oracle::Checker chk(g);
    std::set<std::vector<Color>> out;
    std::vector<Color> c(static_cast<std::size_t>(g.edge_count()), 0);
    auto rec = [&](auto&& self, int e) -> void {
        if (e == g.edge_count()) {
            if (chk.ok(c))
                out.insert(c);
            return;
        }
        for (int x = 0; x < k; ++x) {
            c[e] = static_cast<Color>(x);
            self(self, e + 1);
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<GraphPtr> tiny_graphs()
{
    std::vector<GraphPtr> out;
    std::vector<FactorGraph> fs;
    for (int n = 1; n <= 5; ++n)
        fs.push_back(FactorGraph::path(n));
    for (int n = 3; n <= 6; ++n)
        fs.push_back(FactorGraph::cycle(n));
    for (auto& a : fs)
        for (auto& b : fs) {
            auto g = make_grid(a, b);
            if (g->edge_count() >= 1 && g->edge_count() <= 12)
                out.push_back(g);
        }
    return out;
}

bool violates(const Constraint& con, const std::vector<Color>& c)
{
    for (EdgeId e = 0; e < static_cast<EdgeId>(c.size()); ++e)
        if (c[e] != kUnset && !con.admits(c, e))
            return true;
    return false;
}

}  // namespace

TEST_CASE("edge ordering")
{
    auto c3 = cyc(3);
    EdgeColoring pre(c3, 3);
    pre.set(1, 0);
    auto ord = get_edge_ordering(pre);
    CHECK(ord == std::vector<EdgeId>{0, 2});

    auto g = grid(FactorGraph::cycle(4), FactorGraph::path(3));
    auto o1 = get_edge_ordering(EdgeColoring(g, 6));
    auto o2 = get_edge_ordering(EdgeColoring(g, 6));
    CHECK(o1 == o2);
    REQUIRE(o1.size() == static_cast<std::size_t>(g->edge_count()));
    CHECK(o1[0] == 0);
    std::set<EdgeId> seen(o1.begin(), o1.end());
    CHECK(seen.size() == o1.size());

    // each step takes a maximal count of neighbours already ordered
    std::vector<char> done(static_cast<std::size_t>(g->edge_count()), 0);
    for (EdgeId e : o1) {
        auto score = [&](EdgeId x) {
            int s = 0;
            for (EdgeId y : g->adjacent(x))
                s += done[y];
            return s;
        };
        int best = -1;
        for (EdgeId x = 0; x < g->edge_count(); ++x)
            if (!done[x])
                best = std::max(best, score(x));
        CHECK(score(e) == best);
        done[e] = 1;
    }
}

TEST_CASE("conflict")
{
    auto p5 = make_grid(FactorGraph::path(5), FactorGraph::path(1));
    EdgeColoring c(p5, 4);
    c.set(0, 0);
    auto adj = conflict(c, 1, 0);
    REQUIRE(adj);
    CHECK(adj->kind == ViolationKind::adjacent_same_color);
    c.set(1, 1);
    c.set(2, 0);
    auto path = conflict(c, 3, 1);
    REQUIRE(path);
    CHECK(path->kind == ViolationKind::bichromatic_path);
    CHECK_FALSE(conflict(c, 3, 2));
}

TEST_CASE("star_color examples")
{
    SearchConfig cfg;
    cfg.colors = 6;
    cfg.symmetry = SymmetryBreaking::fix_max_degree_vertex;
    auto found = star_color(grid(FactorGraph::cycle(3), FactorGraph::cycle(3)), cfg);
    CHECK(found.status == SearchStatus::found);
    REQUIRE(found.colorings.size() == 1);
    CHECK_FALSE(verify_star(found.colorings[0]));

    auto none = star_color(grid(FactorGraph::cycle(3), FactorGraph::cycle(4)), cfg);
    CHECK(none.status == SearchStatus::exhausted);
    CHECK(none.colorings.empty());

    cfg.colors = 3;
    cfg.symmetry = SymmetryBreaking::none;
    CHECK(star_color(grid(FactorGraph::path(2), FactorGraph::path(2)), cfg).status == SearchStatus::found);
}

TEST_CASE("budget is a separate outcome")
{
    SearchConfig cfg;
    cfg.colors = 6;
    cfg.limits.max_nodes = 50;
    auto out = star_color(grid(FactorGraph::cycle(3), FactorGraph::cycle(4)), cfg);
    CHECK(out.status == SearchStatus::budget_exceeded);
    // limits are polled every few thousand nodes
    ChiOptions opts;
    opts.limits.max_nodes = 50;
    CHECK_THROWS_AS(chi_star(grid(FactorGraph::cycle(4), FactorGraph::cycle(5)), 7, opts), BudgetExceeded);
    CHECK_THROWS_AS(enumerate_colorings(cyc(16), 6, SymmetryGroup::full, {50, {}}), BudgetExceeded);
}

TEST_CASE("config errors")
{
    auto g = grid(FactorGraph::cycle(3), FactorGraph::path(2));
    SearchConfig cfg;
    cfg.colors = 0;
    CHECK_THROWS_AS(star_color(g, cfg), std::invalid_argument);
    cfg.colors = 6;
    EdgeColoring pre(g, 6);
    pre.set(0, 1);
    pre.set(1, 1);
    cfg.precoloring = pre;
    CHECK_THROWS_AS(star_color(g, cfg), std::invalid_argument);
    pre.clear(1);
    cfg.precoloring = pre;
    cfg.symmetry = SymmetryBreaking::fix_max_degree_vertex;
    CHECK_THROWS_AS(star_color(g, cfg), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_colorings(g, 6, SymmetryGroup::full), std::invalid_argument);
    CHECK_THROWS_AS(chi_star(g, 2), std::invalid_argument);
}

TEST_CASE("precoloring is kept")
{
    auto g = grid(FactorGraph::cycle(4), FactorGraph::path(3));
    EdgeColoring pre(g, 6);
    pre.set(g->left_edge(0, 1), 4);
    pre.set(g->right_edge(2, 0), 3);
    SearchConfig cfg;
    cfg.colors = 6;
    cfg.precoloring = pre;
    for (auto ord : {EdgeOrdering::greedy, EdgeOrdering::fiber_sweep, EdgeOrdering::dynamic}) {
        cfg.ordering = ord;
        auto out = star_color(g, cfg);
        REQUIRE(out.status == SearchStatus::found);
        CHECK(out.colorings[0][g->left_edge(0, 1)] == 4);
        CHECK(out.colorings[0][g->right_edge(2, 0)] == 3);
    }
}

TEST_CASE("chi_star examples")
{
    CHECK(chi_star(grid(FactorGraph::path(3), FactorGraph::path(3)), 8) == 5);
    CHECK(chi_star(grid(FactorGraph::cycle(3), FactorGraph::path(2)), 8) == 6);
    CHECK(chi_star(cyc(4), 8) == 3);

    // against exhaustive assignment on graphs small enough for it
    for (auto& g : tiny_graphs()) {
        if (g->edge_count() > 9)
            continue;
        CHECK_MESSAGE(chi_star(g, 8) == oracle::chi(*g), g->name());
    }

    const int pp = chi_star(grid(FactorGraph::path(3), FactorGraph::path(3)), 8);
    const int cp = chi_star(grid(FactorGraph::cycle(3), FactorGraph::path(3)), 8);
    const int cc = chi_star(grid(FactorGraph::cycle(3), FactorGraph::cycle(3)), 8);
    CHECK(pp <= cp);
    CHECK(cp <= cc);
}

TEST_CASE("enumeration examples")
{
    CHECK(enumerate_colorings(cyc(9), 6, SymmetryGroup::full).count == 147);
    CHECK(enumerate_colorings(cyc(6), 6, SymmetryGroup::full).count == 9);
    CHECK(enumerate_colorings(cyc(3), 3, SymmetryGroup::color_perm).count == 1);
}

TEST_CASE("C3xP3 with six colors")
{
    // two classes under renaming colors, mirror images of each other
    auto g = grid(FactorGraph::cycle(3), FactorGraph::path(3));
    auto e = enumerate_colorings(g, 6, SymmetryGroup::color_perm);
    CHECK(e.count == oracle::count_up_to_color_perm_pruned(*g, 6));
    REQUIRE(e.count == 2);
    auto mirror = [&](const std::vector<Color>& c) {
        std::vector<Color> out(c.size());
        for (EdgeId x = 0; x < g->edge_count(); ++x) {
            const auto& ge = g->edge(x);
            Vertex u{(3 - ge.u.i) % 3, ge.u.j}, v{(3 - ge.v.i) % 3, ge.v.j};
            out[g->find_edge(u, v)] = c[x];
        }
        return relabel_first_seen(out);
    };
    CHECK(mirror(e.forms[0]) == e.forms[1]);
    for (const auto& f : e.forms) {
        std::set<Color> left, right;
        for (EdgeId x = 0; x < g->edge_count(); ++x)
            (g->edge(x).side == Side::left ? left : right).insert(f[x]);
        CHECK(left.size() == 3);
        CHECK(right.size() == 3);
        for (Color c : left)
            CHECK_FALSE(right.count(c));
    }
}

TEST_CASE("cycle enumeration matches a canonical-form oracle")
{
    for (int n = 3; n <= 8; ++n)
        for (int k = 3; k <= 5; ++k) {
            auto g = cyc(n);
            std::set<std::vector<Color>> forms;
            for (const auto& c : all_colorings(*g, k)) {
                // cycle edges are 0..n-1 in order
                forms.insert(canonical_cycle_coloring(c, SymmetryGroup::full));
            }
            auto e = enumerate_colorings(g, k, SymmetryGroup::full);
            CHECK(e.count == forms.size());
            CHECK(std::set<std::vector<Color>>(e.forms.begin(), e.forms.end()) == forms);
            CHECK(std::is_sorted(e.forms.begin(), e.forms.end()));
        }
}

TEST_CASE("counts match brute force on random small grids")
{
    auto graphs = tiny_graphs();
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 25; ++trial) {
        auto g = graphs[rng() % graphs.size()];
        const int k = 2 + static_cast<int>(rng() % 3);
        CHECK_MESSAGE(enumerate_colorings(g, k, SymmetryGroup::color_perm).count ==
                          oracle::count_up_to_color_perm(*g, k),
                      g->name(), " k=", k);
    }
}

TEST_CASE("collect_all equals the set of all star colorings")
{
    auto graphs = tiny_graphs();
    std::mt19937 rng(99);
    for (int trial = 0; trial < 12; ++trial) {
        auto g = graphs[rng() % graphs.size()];
        if (g->edge_count() > 10)
            continue;
        const int k = 3 + static_cast<int>(rng() % 2);
        auto want = all_colorings(*g, k);
        SearchConfig cfg;
        cfg.colors = k;
        cfg.mode = SearchMode::collect_all;
        for (bool fc : {false, true}) {
            cfg.forward_check = fc;
            auto out = star_color(g, cfg);
            CHECK(out.status == SearchStatus::exhausted);
            std::set<std::vector<Color>> got;
            for (const auto& c : out.colorings)
                got.insert(vec(c));
            CHECK(got.size() == out.colorings.size());
            CHECK_MESSAGE(got == want, g->name(), " k=", k);
            CHECK(out.solutions == want.size());
        }
        cfg.mode = SearchMode::count_all;
        cfg.forward_check = false;
        CHECK(star_color(g, cfg).solutions == want.size());
    }
}

TEST_CASE("results do not depend on the worker count")
{
    std::vector<std::pair<GraphPtr, int>> cases = {
        {grid(FactorGraph::cycle(3), FactorGraph::cycle(3)), 6},
        {grid(FactorGraph::cycle(4), FactorGraph::path(4)), 5},
        {grid(FactorGraph::cycle(3), FactorGraph::cycle(4)), 6},
        {grid(FactorGraph::path(4), FactorGraph::path(4)), 6},
    };
    for (auto& [g, k] : cases)
        for (auto mode : {SearchMode::first, SearchMode::count_all}) {
            SearchConfig cfg;
            cfg.colors = k;
            cfg.mode = mode;
            cfg.symmetry = SymmetryBreaking::fix_max_degree_vertex;
            cfg.workers = 1;
            auto base = star_color(g, cfg);
            for (int w : {1, 2, 4}) {
                cfg.workers = w;
                auto out = star_color(g, cfg);
                CHECK(out.status == base.status);
                CHECK(out.nodes == base.nodes);
                CHECK(out.solutions == base.solutions);
                REQUIRE(out.colorings.size() == base.colorings.size());
                for (std::size_t t = 0; t < out.colorings.size(); ++t)
                    CHECK(out.colorings[t] == base.colorings[t]);
            }
        }
    auto g = cyc(9);
    auto e1 = enumerate_colorings(g, 6, SymmetryGroup::full, {}, 1);
    auto e4 = enumerate_colorings(g, 6, SymmetryGroup::full, {}, 4);
    CHECK(e1.forms == e4.forms);
}

TEST_CASE("engines agree")
{
    std::vector<std::pair<GraphPtr, int>> cases = {
        {grid(FactorGraph::cycle(3), FactorGraph::cycle(3)), 6}, {grid(FactorGraph::cycle(3), FactorGraph::cycle(4)), 6},
        {grid(FactorGraph::cycle(3), FactorGraph::path(2)), 5},  {grid(FactorGraph::cycle(6), FactorGraph::path(2)), 5},
        {grid(FactorGraph::path(4), FactorGraph::path(4)), 5},   {grid(FactorGraph::path(4), FactorGraph::path(4)), 6},
        {grid(FactorGraph::cycle(4), FactorGraph::cycle(4)), 6}, {grid(FactorGraph::cycle(5), FactorGraph::path(3)), 6},
    };
    for (auto& [g, k] : cases) {
        std::optional<SearchStatus> first;
        for (auto engine : {SearchEngine::backtracking, SearchEngine::clause_learning})
            for (auto ord : {EdgeOrdering::greedy, EdgeOrdering::fiber_sweep, EdgeOrdering::dynamic}) {
                SearchConfig cfg;
                cfg.colors = k;
                cfg.engine = engine;
                cfg.ordering = ord;
                cfg.symmetry = SymmetryBreaking::fix_max_degree_vertex;
                auto out = star_color(g, cfg);
                REQUIRE(out.status != SearchStatus::budget_exceeded);
                if (!first)
                    first = out.status;
                CHECK_MESSAGE(out.status == *first, g->name(), " k=", k);
                if (out.status == SearchStatus::found)
                    CHECK(oracle::Checker(*g).ok(vec(out.colorings[0])));
            }
    }
    SearchConfig cfg;
    cfg.colors = 6;
    cfg.engine = SearchEngine::clause_learning;
    cfg.mode = SearchMode::count_all;
    CHECK_THROWS_AS(star_color(cyc(5), cfg), std::invalid_argument);
}

TEST_CASE("fiber rainbow constraint")
{
    auto g = grid(FactorGraph::cycle(4), FactorGraph::cycle(6));
    FiberRainbowConstraint rb(*g, Side::right);
    std::mt19937 rng(17);
    int violated = 0;
    for (int trial = 0; trial < 400; ++trial) {
        std::vector<Color> c(static_cast<std::size_t>(g->edge_count()), kUnset);
        for (auto& x : c)
            if (rng() % 2)
                x = static_cast<Color>(rng() % 6);
        if (!violates(rb, c))
            continue;
        ++violated;
        for (int ext = 0; ext < 5; ++ext) {
            auto d = c;
            for (auto& x : d)
                if (x == kUnset)
                    x = static_cast<Color>(rng() % 6);
            CHECK(violates(rb, d));
        }
    }
    CHECK(violated > 0);

    // definition: four consecutive right edges on a fiber, all distinct
    std::vector<Color> c(static_cast<std::size_t>(g->edge_count()), kUnset);
    for (int b = 0; b < 4; ++b)
        c[g->right_edge(1, b)] = static_cast<Color>(b);
    CHECK_FALSE(violates(rb, c));
    c[g->right_edge(1, 3)] = 0;
    CHECK(violates(rb, c));

    SearchConfig cfg;
    cfg.colors = 7;
    cfg.constraints = {std::make_shared<FiberRainbowConstraint>(*g, Side::right)};
    auto out = star_color(g, cfg);
    REQUIRE(out.status == SearchStatus::found);
    auto col = vec(out.colorings[0]);
    for (int i = 0; i < 4; ++i)
        for (int b = 0; b < 6; ++b) {
            std::set<Color> run;
            for (int t = 0; t < 4; ++t)
                run.insert(col[g->right_edge(i, (b + t) % 6)]);
            CHECK(run.size() == 4);
        }
}

TEST_CASE("reflection constraint")
{
    auto g = grid(FactorGraph::cycle(5), FactorGraph::path(3));
    ReflectionConstraint rf(*g, true, true);
    CHECK_THROWS_AS(ReflectionConstraint(*g, false, false), std::invalid_argument);

    // image by coordinates: i -> -i on the cycle, j -> 2-j on the path
    for (EdgeId e = 0; e < g->edge_count(); ++e) {
        const auto& ge = g->edge(e);
        Vertex u{(5 - ge.u.i) % 5, 2 - ge.u.j}, v{(5 - ge.v.i) % 5, 2 - ge.v.j};
        CHECK(rf.image(e) == g->find_edge(u, v));
    }

    std::mt19937 rng(23);
    int violated = 0;
    for (int trial = 0; trial < 400; ++trial) {
        std::vector<Color> c(static_cast<std::size_t>(g->edge_count()), kUnset);
        for (auto& x : c)
            if (rng() % 3 == 0)
                x = static_cast<Color>(rng() % 4);
        if (!violates(rf, c))
            continue;
        ++violated;
        for (int ext = 0; ext < 5; ++ext) {
            auto d = c;
            for (auto& x : d)
                if (x == kUnset)
                    x = static_cast<Color>(rng() % 4);
            CHECK(violates(rf, d));
        }
    }
    CHECK(violated > 0);

    for (auto engine : {SearchEngine::backtracking, SearchEngine::clause_learning}) {
        SearchConfig cfg;
        cfg.colors = 6;
        cfg.engine = engine;
        cfg.ordering = EdgeOrdering::dynamic;
        cfg.constraints = {std::make_shared<ReflectionConstraint>(*g, true, true)};
        auto out = star_color(g, cfg);
        REQUIRE(out.status == SearchStatus::found);
        auto col = vec(out.colorings[0]);
        // the induced color map is a well defined involution
        std::map<Color, Color> pi;
        for (EdgeId e = 0; e < g->edge_count(); ++e) {
            auto [it, fresh] = pi.emplace(col[e], col[rf.image(e)]);
            CHECK(it->second == col[rf.image(e)]);
        }
        for (auto [a, b] : pi)
            CHECK(pi.at(b) == a);
    }
}

TEST_CASE("extendable")
{
    auto r = extendable(3, std::vector<Color>{0, 1, 2}, 6, 3);
    REQUIRE(r.status == ExtendStatus::yes);
    REQUIRE(r.coloring);
    const auto& c = *r.coloring;
    CHECK_FALSE(verify_star(c));
    const auto& g = c.graph();
    CHECK(g.left().size() == 3);
    CHECK(g.right().size() == 3);
    for (int a = 0; a < 3; ++a)
        CHECK(c[g.left_edge(a, middle_fiber(3))] == a);
    CHECK(middle_fiber(31) == 15);

    // same question asked to star_color with the fiber fixed
    for (auto fiber : {std::vector<Color>{0, 1, 0, 2, 0, 3}, std::vector<Color>{0, 1, 2, 3, 4, 5}})
        for (int depth : {3, 5}) {
            auto g6 = grid(FactorGraph::cycle(6), FactorGraph::path(depth));
            EdgeColoring pre(g6, 6);
            for (int a = 0; a < 6; ++a)
                pre.set(g6->left_edge(a, middle_fiber(depth)), fiber[a]);
            SearchConfig cfg;
            cfg.colors = 6;
            cfg.precoloring = pre;
            auto direct = star_color(g6, cfg);
            auto ext = extendable(6, fiber, 6, depth);
            CHECK((direct.status == SearchStatus::found) == (ext.status == ExtendStatus::yes));
        }

    CHECK_THROWS_AS(extendable(6, std::vector<Color>{0, 1, 0, 1, 0, 1}, 6, 3), std::invalid_argument);
    CHECK_THROWS_AS(extendable(6, std::vector<Color>{0, 1, 2}, 6, 3), std::invalid_argument);
}
