#include <stargrid/lift.hpp>

#include <functional>
#include <stdexcept>
#include <string>

namespace stargrid {

namespace {

void require_valid(const EdgeColoring& sigma)
{
    if (!sigma.is_total())
        throw std::invalid_argument("coloring of " + sigma.graph().name() + " is partial");
    if (auto v = verify_star(sigma))
        throw std::invalid_argument("coloring of " + sigma.graph().name() + " is not a star coloring: " +
                                    describe(sigma.graph(), *v));
}

const FactorGraph& require_cycle(const EdgeColoring& c, Side side)
{
    const FactorGraph& f = c.graph().factor(side);
    if (!f.is_cycle())
        throw std::invalid_argument(std::string("the ") + to_string(side) + " factor of " + c.graph().name() +
                                    " is not a cycle");
    return f;
}

GraphPtr replace_factor(const GridGraph& g, Side side, const FactorGraph& f)
{
    return side == Side::left ? make_grid(f, g.right()) : make_grid(g.left(), f);
}

/// Builds the coloring of `out` whose edges read sigma through the position
/// map along `side` and the edge map of that side's factor.
EdgeColoring pull_along(const EdgeColoring& sigma, const GraphPtr& out, Side side,
                        const std::function<int(int)>& position, const std::function<int(int)>& factor_edge)
{
    const GridGraph& src = sigma.graph();
    std::vector<Color> colors(static_cast<std::size_t>(out->edge_count()));
    for (EdgeId e = 0; e < out->edge_count(); ++e) {
        const GridEdge& ge = out->edge(e);
        EdgeId from = ge.side == side ? src.edge_id(side, ge.fiber, factor_edge(ge.factor_edge))
                                      : src.edge_id(ge.side, position(ge.fiber), ge.factor_edge);
        colors[static_cast<std::size_t>(e)] = sigma[from];
    }
    return {out, sigma.k(), std::move(colors)};
}

EdgeColoring checked(EdgeColoring c, const char* what)
{
    if (auto v = verify_star(c))
        throw std::logic_error(std::string(what) + " produced an invalid coloring of " + c.graph().name() + ": " +
                               describe(c.graph(), *v));
    return c;
}

}  // namespace

EdgeColoring tile(const EdgeColoring& sigma, int k, Side side)
{
    if (k < 1)
        throw std::invalid_argument("tiling factor must be at least 1");
    require_valid(sigma);
    const int m = require_cycle(sigma, side).size();
    auto out = replace_factor(sigma.graph(), side, FactorGraph::cycle(k * m));
    auto mod = [m](int t) { return t % m; };
    return checked(pull_along(sigma, out, side, mod, mod), "tile");
}

EdgeColoring combine(const EdgeColoring& sigma, int m, int p, int q, Side side)
{
    if (p < 0 || q < 0)
        throw std::invalid_argument("combine needs p, q >= 0");
    require_valid(sigma);
    const int n = require_cycle(sigma, side).size();
    const int len = p * m + q * n;
    if (len < 3)
        throw std::invalid_argument("combined cycle length " + std::to_string(len) + " is below 3");
    if (p > 0)
        if (auto v = check_inclusion(sigma, m, side))
            throw std::invalid_argument("coloring of " + sigma.graph().name() + " does not include a star coloring on " +
                                        to_string(WindowChain{{side, m}}) + ": " + describe(sigma.graph(), *v));
    const int head = p * m;
    auto position = [=](int t) { return t < head ? t % m : (t - head) % n; };
    auto factor_edge = [=](int a) {
        if (a < head)
            return a % m == m - 1 ? n - 1 : a % m;
        return (a - head) % n;
    };
    auto out = replace_factor(sigma.graph(), side, FactorGraph::cycle(len));
    return checked(pull_along(sigma, out, side, position, factor_edge), "combine");
}

EdgeColoring transpose(const EdgeColoring& c)
{
    const GridGraph& g = c.graph();
    GraphPtr out = make_grid(g.right(), g.left());
    std::vector<Color> colors(static_cast<std::size_t>(out->edge_count()));
    for (EdgeId e = 0; e < out->edge_count(); ++e) {
        const GridEdge& ge = out->edge(e);
        colors[static_cast<std::size_t>(e)] = c[g.edge_id(other(ge.side), ge.fiber, ge.factor_edge)];
    }
    return {out, c.k(), std::move(colors)};
}

EdgeColoring restrict_to_path(const EdgeColoring& c, int n, Side side)
{
    const GridGraph& g = c.graph();
    if (n < 1 || n > g.factor(side).size())
        throw std::invalid_argument("cannot restrict " + g.name() + " to P" + std::to_string(n) + " on the " +
                                    to_string(side) + " side");
    auto out = replace_factor(g, side, FactorGraph::path(n));
    auto same = [](int t) { return t; };
    return pull_along(c, out, side, same, same);
}

std::optional<FrobeniusPair> frobenius(int n, int m, int target)
{
    if (n < 1 || m < 1)
        throw std::invalid_argument("frobenius needs n, m >= 1");
    if (target < 0)
        return std::nullopt;
    for (int alpha = 0; alpha * n <= target; ++alpha)
        if ((target - alpha * n) % m == 0)
            return FrobeniusPair{alpha, (target - alpha * n) / m};
    return std::nullopt;
}

}  // namespace stargrid
