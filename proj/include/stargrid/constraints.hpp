#pragma once

#include <stargrid/coloring.hpp>
#include <stargrid/verify.hpp>

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace stargrid {

/// Extra pruning rule for the search.
///
/// Implementations must be monotone: once a partial coloring violates the
/// rule, every extension violates it too. They must also be invariant under
/// permutations of colors, since the solver's symmetry breaking relabels
/// colors freely.
class Constraint {
public:
    virtual ~Constraint() = default;
    virtual std::string name() const = 0;
    /// `colors` already holds the new color of `e`.
    virtual bool admits(std::span<const Color> colors, EdgeId e) const = 0;
};

using ConstraintPtr = std::shared_ptr<const Constraint>;

/// Constraint given as extra must-differ pairs and extra forbidden two-color
/// quadruples over host edges, indexed per edge like GridGraph's own table.
class TableConstraint : public Constraint {
public:
    bool admits(std::span<const Color> colors, EdgeId e) const final;
    std::span<const EdgeId> pairs(EdgeId e) const noexcept;
    std::span<const QuadEntry> quads(EdgeId e) const noexcept;

protected:
    explicit TableConstraint(int edge_count);
    void add_pair(EdgeId a, EdgeId b);
    /// Edges in traversal order of a 4-path or 4-cycle.
    void add_quad(EdgeId x0, EdgeId x1, EdgeId x2, EdgeId x3);
    void finish();

private:
    std::vector<std::vector<EdgeId>> pairs_build_;
    std::vector<std::vector<QuadEntry>> quads_build_;
    std::vector<std::int32_t> pair_offsets_;
    std::vector<EdgeId> pairs_;
    std::vector<std::int32_t> quad_offsets_;
    std::vector<QuadEntry> quads_;
};

/// Requires the coloring to include a star coloring on a window (see
/// check_inclusion). Only the window structures that are not already
/// structures of the host are added.
class InclusionConstraint final : public TableConstraint {
public:
    InclusionConstraint(const GridGraph& host, WindowChain chain);
    std::string name() const override;
    const WindowChain& chain() const noexcept { return chain_; }

private:
    WindowChain chain_;
};

/// Every run of four consecutive edges on every fiber of `side` uses four
/// distinct colors.
class FiberRainbowConstraint final : public TableConstraint {
public:
    FiberRainbowConstraint(const GridGraph& g, Side side);
    std::string name() const override;

private:
    Side side_;
};

/// The coloring commutes with reflecting the chosen factors up to a
/// relabeling of the colors: there is a color involution p with
/// color(image(e)) = p(color(e)) for every edge. A cycle reflects as
/// i -> -i, a path as i -> size-1-i.
class ReflectionConstraint final : public Constraint {
public:
    ReflectionConstraint(const GridGraph& g, bool left, bool right);
    std::string name() const override;
    bool admits(std::span<const Color> colors, EdgeId e) const override;
    EdgeId image(EdgeId e) const { return image_.at(static_cast<std::size_t>(e)); }

private:
    bool left_;
    bool right_;
    std::vector<EdgeId> image_;
};

}  // namespace stargrid
