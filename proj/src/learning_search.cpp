#include "learning_search.hpp"

#include "cdcl.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>

namespace stargrid::detail {

DynamicResult learning_search(const GridGraph& g, const SearchConfig& cfg, const EdgeColoring& base,
                              const std::function<bool(std::uint64_t)>& over_budget)
{
    if (cfg.mode != SearchMode::first)
        throw std::invalid_argument("clause learning only looks for one coloring");
    const int k = cfg.colors;
    const int ne = g.edge_count();
    std::vector<const TableConstraint*> tables;
    std::vector<const ReflectionConstraint*> mirrors;
    for (const auto& c : cfg.constraints) {
        if (auto t = dynamic_cast<const TableConstraint*>(c.get()))
            tables.push_back(t);
        else if (auto r = dynamic_cast<const ReflectionConstraint*>(c.get()))
            mirrors.push_back(r);
        else
            throw std::invalid_argument("clause learning cannot use constraint '" + c->name() + "'");
    }

    SatSolver s;
    for (int v = 0; v < ne * k; ++v)
        s.new_var();
    auto x = [k](EdgeId e, Color c) { return e * k + c; };

    for (EdgeId e = 0; e < ne; ++e) {
        std::vector<Lit> some;
        for (Color c = 0; c < k; ++c) {
            some.push_back(pos(x(e, c)));
            for (Color d = c + 1; d < k; ++d)
                s.add_clause({neg(x(e, c)), neg(x(e, d))});
        }
        s.add_clause(some);
        if (base[e] != kUnset)
            s.add_clause({pos(x(e, base[e]))});
    }

    auto differ = [&](EdgeId a, EdgeId b) {
        for (Color c = 0; c < k; ++c)
            s.add_clause({neg(x(a, c)), neg(x(b, c))});
    };
    auto forbid_two_colored = [&](const std::array<EdgeId, 4>& q) {
        for (Color a = 0; a < k; ++a)
            for (Color b = 0; b < k; ++b)
                if (a != b)
                    s.add_clause({neg(x(q[0], a)), neg(x(q[2], a)), neg(x(q[1], b)), neg(x(q[3], b))});
    };

    for (EdgeId e = 0; e < ne; ++e)
        for (EdgeId f : g.adjacent(e))
            if (e < f)
                differ(e, f);
    for (const Structure& st : g.structures())
        forbid_two_colored(st.edges);
    for (const TableConstraint* t : tables) {
        std::set<std::pair<EdgeId, EdgeId>> pairs;
        std::set<std::array<EdgeId, 4>> quads;
        for (EdgeId e = 0; e < ne; ++e) {
            for (EdgeId f : t->pairs(e))
                if (e < f)
                    pairs.insert({e, f});
            for (const QuadEntry& q : t->quads(e))
                if (e < q.opposite && e < q.first && e < q.second)
                    quads.insert({e, q.first, q.opposite, q.second});
        }
        for (auto [a, b] : pairs)
            differ(a, b);
        for (const auto& q : quads)
            forbid_two_colored(q);
    }

    // p[c][d]: the reflection sends color c to d
    for (const ReflectionConstraint* r : mirrors) {
        std::vector<std::vector<int>> p(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k)));
        for (Color c = 0; c < k; ++c)
            for (Color d = 0; d < k; ++d)
                p[c][d] = s.new_var();
        for (EdgeId e = 0; e < ne; ++e)
            for (Color c = 0; c < k; ++c)
                for (Color d = 0; d < k; ++d)
                    s.add_clause({neg(x(e, c)), neg(x(r->image(e), d)), pos(p[c][d])});
        for (Color c = 0; c < k; ++c)
            for (Color d = 0; d < k; ++d)
                for (Color d2 = d + 1; d2 < k; ++d2)
                    s.add_clause({neg(p[c][d]), neg(p[c][d2])});
    }

    DynamicResult out;
    const auto res = s.solve(over_budget);
    out.nodes = s.decisions();
    if (res == SatSolver::Result::aborted) {
        out.aborted = true;
    } else if (res == SatSolver::Result::sat) {
        std::vector<Color> colors(static_cast<std::size_t>(ne), kUnset);
        for (EdgeId e = 0; e < ne; ++e)
            for (Color c = 0; c < k; ++c)
                if (s.value(x(e, c)))
                    colors[e] = c;
        out.solutions = 1;
        out.colorings.push_back(std::move(colors));
    }
    return out;
}

}  // namespace stargrid::detail
