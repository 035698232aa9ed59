#include <stargrid/verify.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace stargrid {

namespace {

std::optional<Violation> scan(const EdgeColoring& c)
{
    const GridGraph& g = c.graph();
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (c[e] == kUnset)
            continue;
        for (EdgeId f : g.adjacent(e))
            if (f > e && c[f] == c[e])
                return Violation{ViolationKind::adjacent_same_color, {e, f}};
    }
    for (const Structure& s : g.structures()) {
        const auto& x = s.edges;
        if (c[x[0]] == kUnset || c[x[1]] == kUnset || c[x[2]] == kUnset || c[x[3]] == kUnset)
            continue;
        if (c[x[0]] == c[x[2]] && c[x[1]] == c[x[3]])
            return Violation{s.kind == StructureKind::path ? ViolationKind::bichromatic_path
                                                           : ViolationKind::bichromatic_cycle,
                             {x.begin(), x.end()}};
    }
    return std::nullopt;
}

}  // namespace

std::optional<Violation> verify_star(const EdgeColoring& c)
{
    if (!c.is_total())
        throw std::invalid_argument("verify_star needs a total coloring; use verify_partial");
    return scan(c);
}

std::optional<Violation> verify_partial(const EdgeColoring& c)
{
    return scan(c);
}

std::string to_string(const WindowChain& chain)
{
    std::string out;
    for (const auto& w : chain) {
        if (!out.empty())
            out += '/';
        out += to_string(w.side);
        out += ':';
        out += std::to_string(w.length);
    }
    return out;
}

WindowChain parse_window_chain(const std::string& text)
{
    WindowChain chain;
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, '/')) {
        auto colon = part.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("window '" + part + "' is not side:length");
        std::string side = part.substr(0, colon);
        Window w{};
        if (side == "left")
            w.side = Side::left;
        else if (side == "right")
            w.side = Side::right;
        else
            throw std::invalid_argument("window side must be left or right, got '" + side + "'");
        try {
            std::size_t used = 0;
            w.length = std::stoi(part.substr(colon + 1), &used);
            if (used != part.size() - colon - 1)
                throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw std::invalid_argument("window length in '" + part + "' is not an integer");
        }
        chain.push_back(w);
    }
    if (chain.empty())
        throw std::invalid_argument("empty window chain");
    return chain;
}

WindowView make_window(const GridGraph& host, Window w)
{
    const FactorGraph& f = host.factor(w.side);
    if (!f.is_cycle())
        throw std::invalid_argument(std::string("window needs a cycle on the ") + to_string(w.side) + " side of " +
                                    host.name());
    const int n = f.size();
    const int m = w.length;
    if (m < 3 || m >= n)
        throw std::invalid_argument("window length " + std::to_string(m) + " must satisfy 3 <= m < " +
                                    std::to_string(n));

    FactorGraph small = FactorGraph::cycle(m);
    GraphPtr wg = w.side == Side::left ? make_grid(small, host.right()) : make_grid(host.left(), small);
    std::vector<EdgeId> source(static_cast<std::size_t>(wg->edge_count()));
    for (EdgeId e = 0; e < wg->edge_count(); ++e) {
        const GridEdge& ge = wg->edge(e);
        if (ge.side == w.side) {
            // Along the cycle being cut: the closing edge inherits the host wrap.
            int a = ge.factor_edge == m - 1 ? n - 1 : ge.factor_edge;
            source[e] = host.edge_id(w.side, ge.fiber, a);
        } else {
            source[e] = host.edge_id(ge.side, ge.fiber, ge.factor_edge);
        }
    }
    return {wg, std::move(source)};
}

WindowView make_window(const GridGraph& host, const WindowChain& chain)
{
    if (chain.empty())
        throw std::invalid_argument("empty window chain");
    WindowView view = make_window(host, chain.front());
    for (std::size_t k = 1; k < chain.size(); ++k) {
        WindowView inner = make_window(*view.graph, chain[k]);
        for (auto& e : inner.source)
            e = view.source[static_cast<std::size_t>(e)];
        view = std::move(inner);
    }
    return view;
}

EdgeColoring window_coloring(const EdgeColoring& c, const WindowView& view)
{
    std::vector<Color> colors(view.source.size());
    for (std::size_t e = 0; e < colors.size(); ++e)
        colors[e] = c[view.source[e]];
    return {view.graph, c.k(), std::move(colors)};
}

std::optional<Violation> check_inclusion(const EdgeColoring& c, const WindowChain& chain)
{
    WindowView view = make_window(c.graph(), chain);
    EdgeColoring wc = window_coloring(c, view);
    auto v = wc.is_total() ? verify_star(wc) : verify_partial(wc);
    if (v)
        for (auto& e : v->witness)
            e = view.source[static_cast<std::size_t>(e)];
    return v;
}

std::optional<Violation> check_inclusion(const EdgeColoring& c, int m, Side side)
{
    return check_inclusion(c, WindowChain{{side, m}});
}

}  // namespace stargrid
