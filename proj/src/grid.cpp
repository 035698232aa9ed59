#include <stargrid/grid.hpp>

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace stargrid {

FactorGraph::FactorGraph(FactorKind kind, int n) : kind_(kind), n_(n)
{
    if (kind == FactorKind::path && n < 1)
        throw std::invalid_argument("path factor needs at least 1 vertex, got " + std::to_string(n));
    if (kind == FactorKind::cycle && n < 3)
        throw std::invalid_argument("cycle factor needs at least 3 vertices, got " + std::to_string(n));
}

std::pair<int, int> FactorGraph::edge(int a) const
{
    if (a < 0 || a >= edge_count())
        throw std::out_of_range("factor edge index " + std::to_string(a) + " out of range");
    return {a, (a + 1) % n_};
}

std::string FactorGraph::name() const
{
    return (is_cycle() ? "C" : "P") + std::to_string(n_);
}

FactorGraph make_factor(FactorKind kind, int n)
{
    return {kind, n};
}

const char* to_string(Side s) noexcept
{
    return s == Side::left ? "left" : "right";
}

GridGraph::GridGraph(FactorGraph left, FactorGraph right) : left_(left), right_(right)
{
    build_edges();
    build_structures();
}

GridGraph product(const FactorGraph& a, const FactorGraph& b)
{
    return {a, b};
}

std::string GridGraph::name() const
{
    return left_.name() + "x" + right_.name();
}

void GridGraph::build_edges()
{
    const int nl = left_.size();
    const int nr = right_.size();
    edges_.reserve(static_cast<std::size_t>(left_.edge_count() * nr + nl * right_.edge_count()));
    for (int j = 0; j < nr; ++j)
        for (int a = 0; a < left_.edge_count(); ++a) {
            auto [x, y] = left_.edge(a);
            edges_.push_back({{x, j}, {y, j}, Side::left, j, a});
        }
    for (int i = 0; i < nl; ++i)
        for (int b = 0; b < right_.edge_count(); ++b) {
            auto [x, y] = right_.edge(b);
            edges_.push_back({{i, x}, {i, y}, Side::right, i, b});
        }

    const int nv = vertex_count();
    std::vector<std::vector<EdgeId>> inc(static_cast<std::size_t>(nv));
    for (EdgeId e = 0; e < edge_count(); ++e) {
        inc[vertex_index(edges_[e].u)].push_back(e);
        inc[vertex_index(edges_[e].v)].push_back(e);
    }
    incident_offsets_.assign(1, 0);
    for (auto& list : inc) {
        incident_.insert(incident_.end(), list.begin(), list.end());
        incident_offsets_.push_back(static_cast<std::int32_t>(incident_.size()));
        max_degree_ = std::max(max_degree_, static_cast<int>(list.size()));
    }

    adjacent_offsets_.assign(1, 0);
    for (EdgeId e = 0; e < edge_count(); ++e) {
        std::vector<EdgeId> adj;
        for (int w : {vertex_index(edges_[e].u), vertex_index(edges_[e].v)})
            for (EdgeId f : incident(w))
                if (f != e)
                    adj.push_back(f);
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
        adjacent_.insert(adjacent_.end(), adj.begin(), adj.end());
        adjacent_offsets_.push_back(static_cast<std::int32_t>(adjacent_.size()));
    }
}

std::span<const EdgeId> GridGraph::incident(int vertex_index) const noexcept
{
    auto b = incident_offsets_[vertex_index];
    auto e = incident_offsets_[vertex_index + 1];
    return {incident_.data() + b, static_cast<std::size_t>(e - b)};
}

std::span<const EdgeId> GridGraph::adjacent(EdgeId e) const noexcept
{
    auto b = adjacent_offsets_[e];
    auto f = adjacent_offsets_[e + 1];
    return {adjacent_.data() + b, static_cast<std::size_t>(f - b)};
}

EdgeId GridGraph::find_edge(Vertex u, Vertex v) const noexcept
{
    if (u.i < 0 || u.j < 0 || u.i >= left_.size() || u.j >= right_.size())
        return -1;
    for (EdgeId e : incident(vertex_index(u))) {
        const auto& ge = edges_[e];
        if ((ge.u == u && ge.v == v) || (ge.u == v && ge.v == u))
            return e;
    }
    return -1;
}

std::vector<EdgeId> GridGraph::fiber(Side side, int index) const
{
    const FactorGraph& fixed = factor(other(side));
    if (index < 0 || index >= fixed.size())
        throw std::out_of_range("fiber index " + std::to_string(index) + " out of range for " + fixed.name());
    std::vector<EdgeId> out;
    for (int a = 0; a < factor(side).edge_count(); ++a)
        out.push_back(edge_id(side, index, a));
    return out;
}

void GridGraph::build_structures()
{
    const int nv = vertex_count();
    auto edge_between = [this](int a, int b) { return find_edge(vertex_at(a), vertex_at(b)); };
    auto neighbours = [this](int v) {
        std::vector<int> out;
        for (EdgeId e : incident(v)) {
            const auto& ge = edges_[e];
            int a = vertex_index(ge.u);
            out.push_back(a == v ? vertex_index(ge.v) : a);
        }
        return out;
    };

    // Paths v0..v4 with distinct vertices, kept once by requiring v0 < v4.
    // Cycles v0..v3 kept once by v0 minimal and v1 < v3.
    std::vector<int> walk;
    std::function<void(int)> extend = [&](int v) {
        walk.push_back(v);
        if (walk.size() == 5) {
            if (walk.front() < walk.back()) {
                Structure s{StructureKind::path, {}};
                for (int k = 0; k < 4; ++k)
                    s.edges[k] = edge_between(walk[k], walk[k + 1]);
                structures_.push_back(s);
            }
        } else {
            if (walk.size() == 4 && walk[0] < walk[1] && walk[0] < walk[2] && walk[0] < walk[3] &&
                walk[1] < walk[3] && edge_between(walk[3], walk[0]) >= 0) {
                Structure s{StructureKind::cycle, {}};
                for (int k = 0; k < 4; ++k)
                    s.edges[k] = edge_between(walk[k], walk[(k + 1) % 4]);
                structures_.push_back(s);
            }
            for (int w : neighbours(v))
                if (std::find(walk.begin(), walk.end(), w) == walk.end())
                    extend(w);
        }
        walk.pop_back();
    };
    for (int v = 0; v < nv; ++v)
        extend(v);

    auto sorted_key = [](const Structure& s) {
        auto k = s.edges;
        std::sort(k.begin(), k.end());
        return k;
    };
    std::stable_sort(structures_.begin(), structures_.end(),
                     [&](const Structure& a, const Structure& b) { return sorted_key(a) < sorted_key(b); });

    std::vector<std::vector<std::int32_t>> through(static_cast<std::size_t>(edge_count()));
    std::vector<std::vector<QuadEntry>> quads(static_cast<std::size_t>(edge_count()));
    for (std::size_t s = 0; s < structures_.size(); ++s) {
        const auto& x = structures_[s].edges;
        for (int p = 0; p < 4; ++p) {
            through[x[p]].push_back(static_cast<std::int32_t>(s));
            quads[x[p]].push_back({x[(p + 2) % 4], x[(p + 1) % 4], x[(p + 3) % 4]});
        }
    }
    through_offsets_.assign(1, 0);
    quad_offsets_.assign(1, 0);
    for (EdgeId e = 0; e < edge_count(); ++e) {
        through_.insert(through_.end(), through[e].begin(), through[e].end());
        through_offsets_.push_back(static_cast<std::int32_t>(through_.size()));
        quads_.insert(quads_.end(), quads[e].begin(), quads[e].end());
        quad_offsets_.push_back(static_cast<std::int32_t>(quads_.size()));
    }
}

std::span<const std::int32_t> GridGraph::structures_through(EdgeId e) const noexcept
{
    auto b = through_offsets_[e];
    auto f = through_offsets_[e + 1];
    return {through_.data() + b, static_cast<std::size_t>(f - b)};
}

std::vector<Structure> GridGraph::local_p4_c4(EdgeId e) const
{
    std::vector<Structure> out;
    for (auto s : structures_through(e))
        out.push_back(structures_[s]);
    return out;
}

std::span<const QuadEntry> GridGraph::quad_entries(EdgeId e) const noexcept
{
    auto b = quad_offsets_[e];
    auto f = quad_offsets_[e + 1];
    return {quads_.data() + b, static_cast<std::size_t>(f - b)};
}

bool covers_q3(const GridGraph& g)
{
    const int nv = g.vertex_count();
    for (int v = 0; v < nv; ++v)
        if (g.degree(v) != 3)
            throw std::invalid_argument("covers_q3 needs a cubic graph; " + g.name() + " is not cubic");

    std::vector<std::vector<int>> nbr(static_cast<std::size_t>(nv));
    for (const auto& e : g.edges()) {
        int a = g.vertex_index(e.u), b = g.vertex_index(e.v);
        nbr[a].push_back(b);
        nbr[b].push_back(a);
    }

    // BFS order so every vertex after the first has an already-placed neighbour.
    std::vector<int> order{0};
    std::vector<char> seen(static_cast<std::size_t>(nv), 0);
    seen[0] = 1;
    for (std::size_t k = 0; k < order.size(); ++k)
        for (int w : nbr[order[k]])
            if (!seen[w]) {
                seen[w] = 1;
                order.push_back(w);
            }
    if (static_cast<int>(order.size()) != nv)
        return false;  // a disconnected cover would need each component to cover; grids are connected

    // Cube vertices are 3-bit labels; adjacency is a single bit flip.
    std::vector<int> image(static_cast<std::size_t>(nv), -1);
    auto consistent = [&](int v, int x) {
        for (int w : nbr[v]) {
            if (image[w] < 0)
                continue;
            int d = image[w] ^ x;
            if (d != 1 && d != 2 && d != 4)
                return false;
            // Neighbours of w must map to distinct cube neighbours of image[w].
            for (int u : nbr[w])
                if (u != v && image[u] == x)
                    return false;
        }
        // Neighbours of v already placed must be pairwise distinct.
        for (int a : nbr[v])
            for (int b : nbr[v])
                if (a < b && image[a] >= 0 && image[a] == image[b])
                    return false;
        return true;
    };
    std::function<bool(std::size_t)> place = [&](std::size_t k) {
        if (k == order.size())
            return true;
        int v = order[k];
        for (int x = 0; x < 8; ++x) {
            if (k == 0 && x != 0)
                break;  // the cube is vertex-transitive
            if (!consistent(v, x))
                continue;
            image[v] = x;
            if (place(k + 1))
                return true;
            image[v] = -1;
        }
        return false;
    };
    return place(0);
}

}  // namespace stargrid
