#include <stargrid/constraints.hpp>

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>

namespace stargrid {

TableConstraint::TableConstraint(int edge_count)
    : pairs_build_(static_cast<std::size_t>(edge_count)), quads_build_(static_cast<std::size_t>(edge_count))
{
}

void TableConstraint::add_pair(EdgeId a, EdgeId b)
{
    pairs_build_[a].push_back(b);
    pairs_build_[b].push_back(a);
}

void TableConstraint::add_quad(EdgeId x0, EdgeId x1, EdgeId x2, EdgeId x3)
{
    const EdgeId x[4] = {x0, x1, x2, x3};
    for (int p = 0; p < 4; ++p)
        quads_build_[x[p]].push_back({x[(p + 2) % 4], x[(p + 1) % 4], x[(p + 3) % 4]});
}

void TableConstraint::finish()
{
    pair_offsets_.assign(1, 0);
    quad_offsets_.assign(1, 0);
    for (std::size_t e = 0; e < pairs_build_.size(); ++e) {
        auto& p = pairs_build_[e];
        std::sort(p.begin(), p.end());
        p.erase(std::unique(p.begin(), p.end()), p.end());
        pairs_.insert(pairs_.end(), p.begin(), p.end());
        pair_offsets_.push_back(static_cast<std::int32_t>(pairs_.size()));
        quads_.insert(quads_.end(), quads_build_[e].begin(), quads_build_[e].end());
        quad_offsets_.push_back(static_cast<std::int32_t>(quads_.size()));
    }
    pairs_build_.clear();
    quads_build_.clear();
}

std::span<const EdgeId> TableConstraint::pairs(EdgeId e) const noexcept
{
    return {pairs_.data() + pair_offsets_[e], pairs_.data() + pair_offsets_[e + 1]};
}

std::span<const QuadEntry> TableConstraint::quads(EdgeId e) const noexcept
{
    return {quads_.data() + quad_offsets_[e], quads_.data() + quad_offsets_[e + 1]};
}

bool TableConstraint::admits(std::span<const Color> colors, EdgeId e) const
{
    const Color c = colors[e];
    for (auto k = pair_offsets_[e]; k < pair_offsets_[e + 1]; ++k)
        if (colors[pairs_[k]] == c)
            return false;
    for (auto k = quad_offsets_[e]; k < quad_offsets_[e + 1]; ++k) {
        const QuadEntry& q = quads_[k];
        if (colors[q.opposite] != c)
            continue;
        Color a = colors[q.first];
        if (a != kUnset && a == colors[q.second])
            return false;
    }
    return true;
}

InclusionConstraint::InclusionConstraint(const GridGraph& host, WindowChain chain)
    : TableConstraint(host.edge_count()), chain_(std::move(chain))
{
    WindowView view = make_window(host, chain_);
    const GridGraph& w = *view.graph;
    auto src = [&](EdgeId e) { return view.source[static_cast<std::size_t>(e)]; };

    std::set<std::pair<EdgeId, EdgeId>> host_adjacent;
    for (EdgeId e = 0; e < host.edge_count(); ++e)
        for (EdgeId f : host.adjacent(e))
            host_adjacent.insert({e, f});
    std::set<std::array<EdgeId, 4>> host_structures;
    for (const auto& s : host.structures()) {
        auto k = s.edges;
        std::sort(k.begin(), k.end());
        host_structures.insert(k);
    }

    for (EdgeId e = 0; e < w.edge_count(); ++e)
        for (EdgeId f : w.adjacent(e))
            if (e < f && !host_adjacent.contains({src(e), src(f)}))
                add_pair(src(e), src(f));
    for (const auto& s : w.structures()) {
        std::array<EdgeId, 4> mapped{src(s.edges[0]), src(s.edges[1]), src(s.edges[2]), src(s.edges[3])};
        auto key = mapped;
        std::sort(key.begin(), key.end());
        if (!host_structures.contains(key))
            add_quad(mapped[0], mapped[1], mapped[2], mapped[3]);
    }
    finish();
}

std::string InclusionConstraint::name() const
{
    return "include " + to_string(chain_);
}

FiberRainbowConstraint::FiberRainbowConstraint(const GridGraph& g, Side side)
    : TableConstraint(g.edge_count()), side_(side)
{
    const FactorGraph& f = g.factor(side);
    const int len = f.edge_count();
    const int fibers = g.factor(other(side)).size();
    // Fibers too short to hold a 4-edge path add nothing.
    const bool has_paths = f.is_cycle() ? len >= 5 : len >= 4;
    for (int fib = 0; has_paths && fib < fibers; ++fib)
        for (int a = 0; a < len; ++a)
            for (int d = 1; d <= 3; ++d) {
                int b = a + d;
                if (b >= len) {
                    if (!f.is_cycle())
                        continue;
                    b %= len;
                }
                add_pair(g.edge_id(side, fib, a), g.edge_id(side, fib, b));
            }
    finish();
}

std::string FiberRainbowConstraint::name() const
{
    return std::string("rainbow 4-paths on ") + to_string(side_) + " fibers";
}

ReflectionConstraint::ReflectionConstraint(const GridGraph& g, bool left, bool right)
    : left_(left), right_(right)
{
    if (!left && !right)
        throw std::invalid_argument("reflection needs at least one factor");
    auto flip = [](const FactorGraph& f, int x) { return f.is_cycle() ? (f.size() - x) % f.size() : f.size() - 1 - x; };
    for (const GridEdge& ge : g.edges()) {
        auto map = [&](Vertex v) {
            return Vertex{left ? flip(g.left(), v.i) : v.i, right ? flip(g.right(), v.j) : v.j};
        };
        image_.push_back(g.find_edge(map(ge.u), map(ge.v)));
    }
}

std::string ReflectionConstraint::name() const
{
    return std::string("reflect ") + (left_ && right_ ? "both factors" : left_ ? "left factor" : "right factor");
}

bool ReflectionConstraint::admits(std::span<const Color> colors, EdgeId) const
{
    std::array<Color, kMaxColors> partner;
    partner.fill(kUnset);
    for (std::size_t e = 0; e < image_.size(); ++e) {
        const Color c = colors[e];
        const Color d = colors[static_cast<std::size_t>(image_[e])];
        if (c == kUnset || d == kUnset)
            continue;
        if (partner[c] == kUnset)
            partner[c] = d;
        else if (partner[c] != d)
            return false;
    }
    return true;
}

}  // namespace stargrid
