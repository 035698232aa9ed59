#pragma once

// Slow, independent reference implementations used as test oracles. They
// only read factor sizes and edge endpoints from the library.

#include <stargrid/coloring.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using stargrid::Color;
using stargrid::EdgeId;
using stargrid::GridGraph;

struct Graph {
    int nv = 0;
    std::vector<std::vector<int>> adj;
    std::map<std::pair<int, int>, EdgeId> edge_of;  // sorted endpoint pair -> library id
};

inline std::vector<std::pair<int, int>> factor_edges(const stargrid::FactorGraph& f)
{
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a + 1 < f.size(); ++a)
        out.push_back({a, a + 1});
    if (f.is_cycle())
        out.push_back({f.size() - 1, 0});
    return out;
}

/// Builds the product from the factor definitions and matches each edge to
/// the library id by its endpoints.
inline Graph build(const GridGraph& g)
{
    Graph o;
    const int m = g.left().size(), n = g.right().size();
    o.nv = m * n;
    o.adj.resize(static_cast<std::size_t>(o.nv));
    auto id = [m](int i, int j) { return j * m + i; };
    std::vector<std::pair<int, int>> pairs;
    for (int j = 0; j < n; ++j)
        for (auto [a, b] : factor_edges(g.left()))
            pairs.push_back({id(a, j), id(b, j)});
    for (int i = 0; i < m; ++i)
        for (auto [a, b] : factor_edges(g.right()))
            pairs.push_back({id(i, a), id(i, b)});
    for (auto [u, v] : pairs) {
        o.adj[u].push_back(v);
        o.adj[v].push_back(u);
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto& ge = g.edge(e);
        int u = id(ge.u.i, ge.u.j), v = id(ge.v.i, ge.v.j);
        o.edge_of[{std::min(u, v), std::max(u, v)}] = e;
    }
    return o;
}

inline EdgeId edge(const Graph& o, int u, int v)
{
    return o.edge_of.at({std::min(u, v), std::max(u, v)});
}

/// Every 4-edge path and 4-cycle as a sorted 4-tuple of edge ids, found by
/// walking 4 steps without repeating a vertex (closing back to the start for
/// cycles).
inline std::set<std::array<EdgeId, 4>> structures(const Graph& o)
{
    std::set<std::array<EdgeId, 4>> out;
    std::vector<int> walk;
    auto rec = [&](auto&& self, int depth) -> void {
        const int last = walk.back();
        if (depth == 4) {
            std::array<EdgeId, 4> es{};
            for (int t = 0; t < 4; ++t)
                es[t] = edge(o, walk[t], walk[t + 1]);
            std::sort(es.begin(), es.end());
            out.insert(es);
            return;
        }
        for (int nxt : o.adj[last]) {
            const bool closes = depth == 3 && nxt == walk.front();
            if (!closes && std::find(walk.begin(), walk.end(), nxt) != walk.end())
                continue;
            walk.push_back(nxt);
            self(self, depth + 1);
            walk.pop_back();
        }
    };
    for (int v = 0; v < o.nv; ++v) {
        walk.assign(1, v);
        rec(rec, 0);
    }
    // a closed walk over 4 distinct edges that is not a real 4-cycle cannot
    // happen in a simple graph, but multi-edges of small cycles could repeat
    std::set<std::array<EdgeId, 4>> clean;
    for (const auto& s : out)
        if (std::adjacent_find(s.begin(), s.end()) == s.end())
            clean.insert(s);
    return clean;
}

/// Pairs of distinct edges sharing a vertex.
inline std::set<std::pair<EdgeId, EdgeId>> adjacent_pairs(const Graph& o)
{
    std::set<std::pair<EdgeId, EdgeId>> out;
    for (int v = 0; v < o.nv; ++v)
        for (int a : o.adj[v])
            for (int b : o.adj[v]) {
                EdgeId x = edge(o, v, a), y = edge(o, v, b);
                if (x < y)
                    out.insert({x, y});
            }
    return out;
}

/// Checker over precomputed tables; colors must be total.
struct Checker {
    std::vector<std::pair<EdgeId, EdgeId>> pairs;
    std::vector<std::array<EdgeId, 4>> quads;

    explicit Checker(const GridGraph& g)
    {
        Graph o = build(g);
        auto p = adjacent_pairs(o);
        pairs.assign(p.begin(), p.end());
        auto s = structures(o);
        quads.assign(s.begin(), s.end());
    }

    bool ok(const std::vector<Color>& c) const
    {
        for (auto [a, b] : pairs)
            if (c[a] == c[b])
                return false;
        for (const auto& q : quads) {
            std::set<Color> used{c[q[0]], c[q[1]], c[q[2]], c[q[3]]};
            if (used.size() == 2)
                return false;
        }
        return true;
    }

    /// Same test ignoring structures with an unset edge.
    bool ok_partial(const std::vector<Color>& c) const
    {
        for (auto [a, b] : pairs)
            if (c[a] != stargrid::kUnset && c[a] == c[b])
                return false;
        for (const auto& q : quads) {
            if (c[q[0]] < 0 || c[q[1]] < 0 || c[q[2]] < 0 || c[q[3]] < 0)
                continue;
            std::set<Color> used{c[q[0]], c[q[1]], c[q[2]], c[q[3]]};
            if (used.size() == 2)
                return false;
        }
        return true;
    }
};

/// Number of star k-colorings up to renaming colors: walks every assignment
/// in which colors first appear in increasing order, which is one per class.
inline std::uint64_t count_up_to_color_perm(const GridGraph& g, int k)
{
    Checker chk(g);
    const int ne = g.edge_count();
    std::vector<Color> c(static_cast<std::size_t>(ne), 0);
    std::uint64_t count = 0;
    auto rec = [&](auto&& self, int e, int used) -> void {
        if (e == ne) {
            count += chk.ok(c);
            return;
        }
        for (int x = 0; x <= std::min(used, k - 1); ++x) {
            c[e] = static_cast<Color>(x);
            self(self, e + 1, std::max(used, x + 1));
        }
    };
    rec(rec, 0, 0);
    return count;
}

/// Same count for graphs too large to walk in full: a branch is cut as soon
/// as an adjacent pair or a structure whose last edge was just set fails.
inline std::uint64_t count_up_to_color_perm_pruned(const GridGraph& g, int k)
{
    Checker chk(g);
    const int ne = g.edge_count();
    std::vector<std::vector<std::pair<EdgeId, EdgeId>>> pairs_at(static_cast<std::size_t>(ne));
    std::vector<std::vector<std::array<EdgeId, 4>>> quads_at(static_cast<std::size_t>(ne));
    for (auto p : chk.pairs)
        pairs_at[std::max(p.first, p.second)].push_back(p);
    for (const auto& q : chk.quads)
        quads_at[*std::max_element(q.begin(), q.end())].push_back(q);
    std::vector<Color> c(static_cast<std::size_t>(ne), 0);
    std::uint64_t count = 0;
    auto rec = [&](auto&& self, int e, int used) -> void {
        if (e == ne) {
            ++count;
            return;
        }
        for (int x = 0; x <= std::min(used, k - 1); ++x) {
            c[e] = static_cast<Color>(x);
            bool ok = true;
            for (auto [a, b] : pairs_at[e])
                ok = ok && c[a] != c[b];
            for (const auto& q : quads_at[e]) {
                std::set<Color> s{c[q[0]], c[q[1]], c[q[2]], c[q[3]]};
                ok = ok && s.size() != 2;
            }
            if (ok)
                self(self, e + 1, std::max(used, x + 1));
        }
    };
    rec(rec, 0, 0);
    return count;
}

/// Number of star k-colorings, no symmetry removed.
inline std::uint64_t count_all(const GridGraph& g, int k)
{
    Checker chk(g);
    const int ne = g.edge_count();
    std::vector<Color> c(static_cast<std::size_t>(ne), 0);
    std::uint64_t count = 0;
    auto rec = [&](auto&& self, int e) -> void {
        if (e == ne) {
            count += chk.ok(c);
            return;
        }
        for (int x = 0; x < k; ++x) {
            c[e] = static_cast<Color>(x);
            self(self, e + 1);
        }
    };
    rec(rec, 0);
    return count;
}

/// Smallest k with a star k-coloring, by exhaustive assignment.
inline int chi(const GridGraph& g)
{
    for (int k = 1;; ++k)
        if (count_up_to_color_perm(g, k) > 0)
            return k;
}

}  // namespace oracle
