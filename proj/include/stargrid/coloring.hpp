#pragma once

#include <stargrid/grid.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stargrid {

using Color = std::int8_t;
inline constexpr Color kUnset = -1;
inline constexpr int kMaxColors = 16;

using GraphPtr = std::shared_ptr<const GridGraph>;

/// Shared, immutable product graph. Recently built graphs are reused.
GraphPtr make_grid(const FactorGraph& a, const FactorGraph& b);

/// Total or partial assignment of colors 0..k-1 to the edges of a grid.
class EdgeColoring {
public:
    EdgeColoring(GraphPtr graph, int k);
    EdgeColoring(GraphPtr graph, int k, std::vector<Color> colors);

    const GridGraph& graph() const noexcept { return *graph_; }
    const GraphPtr& graph_ptr() const noexcept { return graph_; }
    int k() const noexcept { return k_; }

    Color operator[](EdgeId e) const { return colors_[static_cast<std::size_t>(e)]; }
    void set(EdgeId e, Color c);
    void clear(EdgeId e) { set(e, kUnset); }

    std::span<const Color> colors() const noexcept { return colors_; }
    bool is_total() const noexcept;
    bool empty() const noexcept;
    int colored_count() const noexcept;
    /// Number of distinct colors actually used.
    int used_colors() const noexcept;

    friend bool operator==(const EdgeColoring& a, const EdgeColoring& b)
    {
        return a.k_ == b.k_ && a.colors_ == b.colors_ && a.graph_->left() == b.graph_->left() &&
               a.graph_->right() == b.graph_->right();
    }

private:
    GraphPtr graph_;
    int k_;
    std::vector<Color> colors_;
};

enum class ViolationKind { adjacent_same_color, bichromatic_path, bichromatic_cycle };

const char* to_string(ViolationKind k) noexcept;

struct Violation {
    ViolationKind kind;
    std::vector<EdgeId> witness;
};

std::string describe(const GridGraph& g, const Violation& v);

}  // namespace stargrid
