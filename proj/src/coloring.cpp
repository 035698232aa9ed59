#include <stargrid/coloring.hpp>

#include <algorithm>
#include <bitset>
#include <list>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace stargrid {

GraphPtr make_grid(const FactorGraph& a, const FactorGraph& b)
{
    constexpr std::size_t kKeep = 48;
    static std::mutex mu;
    static std::list<GraphPtr> recent;
    {
        std::lock_guard lock(mu);
        for (auto it = recent.begin(); it != recent.end(); ++it)
            if ((*it)->left() == a && (*it)->right() == b) {
                recent.splice(recent.begin(), recent, it);
                return recent.front();
            }
    }
    auto g = std::make_shared<const GridGraph>(a, b);
    std::lock_guard lock(mu);
    recent.push_front(g);
    if (recent.size() > kKeep)
        recent.pop_back();
    return g;
}

EdgeColoring::EdgeColoring(GraphPtr graph, int k)
    : EdgeColoring(graph, k, std::vector<Color>(static_cast<std::size_t>(graph->edge_count()), kUnset))
{
}

EdgeColoring::EdgeColoring(GraphPtr graph, int k, std::vector<Color> colors)
    : graph_(std::move(graph)), k_(k), colors_(std::move(colors))
{
    if (!graph_)
        throw std::invalid_argument("coloring needs a graph");
    if (k_ < 1 || k_ > kMaxColors)
        throw std::invalid_argument("color budget must be in 1.." + std::to_string(kMaxColors));
    if (colors_.size() != static_cast<std::size_t>(graph_->edge_count()))
        throw std::invalid_argument("coloring has " + std::to_string(colors_.size()) + " entries, graph " +
                                    graph_->name() + " has " + std::to_string(graph_->edge_count()) + " edges");
    for (Color c : colors_)
        if (c != kUnset && (c < 0 || c >= k_))
            throw std::invalid_argument("color " + std::to_string(c) + " outside 0.." + std::to_string(k_ - 1));
}

void EdgeColoring::set(EdgeId e, Color c)
{
    if (c != kUnset && (c < 0 || c >= k_))
        throw std::invalid_argument("color " + std::to_string(c) + " outside 0.." + std::to_string(k_ - 1));
    colors_.at(static_cast<std::size_t>(e)) = c;
}

bool EdgeColoring::is_total() const noexcept
{
    return std::none_of(colors_.begin(), colors_.end(), [](Color c) { return c == kUnset; });
}

bool EdgeColoring::empty() const noexcept
{
    return std::all_of(colors_.begin(), colors_.end(), [](Color c) { return c == kUnset; });
}

int EdgeColoring::colored_count() const noexcept
{
    return static_cast<int>(std::count_if(colors_.begin(), colors_.end(), [](Color c) { return c != kUnset; }));
}

int EdgeColoring::used_colors() const noexcept
{
    std::bitset<kMaxColors> seen;
    for (Color c : colors_)
        if (c != kUnset)
            seen.set(static_cast<std::size_t>(c));
    return static_cast<int>(seen.count());
}

const char* to_string(ViolationKind k) noexcept
{
    switch (k) {
    case ViolationKind::adjacent_same_color:
        return "adjacent-same-color";
    case ViolationKind::bichromatic_path:
        return "bichromatic-4-path";
    case ViolationKind::bichromatic_cycle:
        return "bichromatic-4-cycle";
    }
    return "?";
}

std::string describe(const GridGraph& g, const Violation& v)
{
    std::ostringstream out;
    out << to_string(v.kind) << ':';
    for (EdgeId e : v.witness) {
        const auto& ge = g.edge(e);
        out << " (" << ge.u.i << ',' << ge.u.j << ")-(" << ge.v.i << ',' << ge.v.j << ')';
    }
    return out.str();
}

}  // namespace stargrid
