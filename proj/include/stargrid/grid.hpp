#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace stargrid {

enum class FactorKind { path, cycle };

/// A path P_n or a cycle C_n on vertices 0..n-1.
///
/// Edge `a` joins vertices a and a+1; on a cycle the last edge (index n-1)
/// is the wrap {n-1, 0}.
class FactorGraph {
public:
    FactorGraph(FactorKind kind, int n);

    static FactorGraph path(int n) { return {FactorKind::path, n}; }
    static FactorGraph cycle(int n) { return {FactorKind::cycle, n}; }

    FactorKind kind() const noexcept { return kind_; }
    bool is_cycle() const noexcept { return kind_ == FactorKind::cycle; }
    int size() const noexcept { return n_; }
    int edge_count() const noexcept { return is_cycle() ? n_ : n_ - 1; }
    std::pair<int, int> edge(int a) const;

    /// "P5", "C7".
    std::string name() const;

    friend bool operator==(const FactorGraph&, const FactorGraph&) = default;

private:
    FactorKind kind_;
    int n_;
};

FactorGraph make_factor(FactorKind kind, int n);

using EdgeId = std::int32_t;

struct Vertex {
    int i = 0;  // left coordinate
    int j = 0;  // right coordinate
    friend bool operator==(const Vertex&, const Vertex&) = default;
    friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

enum class Side { left, right };

constexpr Side other(Side s) noexcept { return s == Side::left ? Side::right : Side::left; }
const char* to_string(Side s) noexcept;

/// A grid edge. A left-edge lies in the left-factor fiber at right vertex
/// `fiber`; a right-edge lies in the right-factor fiber at left vertex `fiber`.
struct GridEdge {
    Vertex u;
    Vertex v;
    Side side;
    int fiber;        // fixed coordinate of the other factor
    int factor_edge;  // edge index inside the factor
};

enum class StructureKind { path, cycle };

/// A 4-edge path or a 4-cycle, edges listed in traversal order.
struct Structure {
    StructureKind kind;
    std::array<EdgeId, 4> edges;
};

/// One entry of the per-edge conflict table. Assigning color c to the owning
/// edge closes a bichromatic structure iff color[opposite] == c and
/// color[first] == color[second] (both set).
struct QuadEntry {
    EdgeId opposite;
    EdgeId first;
    EdgeId second;
};

/// Cartesian product of two factors with a canonical edge order: all
/// left-edges (by right vertex, then factor edge), then all right-edges (by
/// left vertex, then factor edge). Immutable once built.
class GridGraph {
public:
    GridGraph(FactorGraph left, FactorGraph right);

    const FactorGraph& left() const noexcept { return left_; }
    const FactorGraph& right() const noexcept { return right_; }
    const FactorGraph& factor(Side s) const noexcept { return s == Side::left ? left_ : right_; }

    int vertex_count() const noexcept { return left_.size() * right_.size(); }
    int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
    int vertex_index(Vertex v) const noexcept { return v.j * left_.size() + v.i; }
    Vertex vertex_at(int index) const noexcept { return {index % left_.size(), index / left_.size()}; }

    const GridEdge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }
    std::span<const GridEdge> edges() const noexcept { return edges_; }

    EdgeId left_edge(int factor_edge, int j) const noexcept { return j * left_.edge_count() + factor_edge; }
    EdgeId right_edge(int i, int factor_edge) const noexcept {
        return left_.edge_count() * right_.size() + i * right_.edge_count() + factor_edge;
    }
    EdgeId edge_id(Side side, int fiber, int factor_edge) const noexcept {
        return side == Side::left ? left_edge(factor_edge, fiber) : right_edge(fiber, factor_edge);
    }

    /// Edges of the copy of one factor; for `left` the index is a right vertex.
    std::vector<EdgeId> fiber(Side side, int index) const;

    std::span<const EdgeId> incident(int vertex_index) const noexcept;
    int degree(int vertex_index) const noexcept { return static_cast<int>(incident(vertex_index).size()); }
    int max_degree() const noexcept { return max_degree_; }

    /// Edges sharing an endpoint with e.
    std::span<const EdgeId> adjacent(EdgeId e) const noexcept;

    /// Every 4-edge path and 4-cycle of the graph, each listed once, ordered
    /// by their sorted edge ids.
    std::span<const Structure> structures() const noexcept { return structures_; }
    /// Indices into structures() of those containing e.
    std::span<const std::int32_t> structures_through(EdgeId e) const noexcept;
    std::vector<Structure> local_p4_c4(EdgeId e) const;

    std::span<const QuadEntry> quad_entries(EdgeId e) const noexcept;

    /// Id of the edge joining u and v, or -1.
    EdgeId find_edge(Vertex u, Vertex v) const noexcept;

    /// "C3xP2"
    std::string name() const;

private:
    void build_edges();
    void build_structures();

    FactorGraph left_;
    FactorGraph right_;
    std::vector<GridEdge> edges_;
    std::vector<std::int32_t> incident_offsets_;
    std::vector<EdgeId> incident_;
    std::vector<std::int32_t> adjacent_offsets_;
    std::vector<EdgeId> adjacent_;
    std::vector<Structure> structures_;
    std::vector<std::int32_t> through_offsets_;
    std::vector<std::int32_t> through_;
    std::vector<std::int32_t> quad_offsets_;
    std::vector<QuadEntry> quads_;
    int max_degree_ = 0;
};

GridGraph product(const FactorGraph& a, const FactorGraph& b);

/// True iff the cubic graph g admits a locally bijective homomorphism onto
/// the 3-cube. Throws std::invalid_argument when g is not cubic.
bool covers_q3(const GridGraph& g);

}  // namespace stargrid
