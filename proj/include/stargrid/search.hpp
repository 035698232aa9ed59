#pragma once

#include <stargrid/canonical.hpp>
#include <stargrid/coloring.hpp>
#include <stargrid/constraints.hpp>

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace stargrid {

enum class SearchMode { first, count_all, collect_all };
enum class SymmetryBreaking { none, fix_max_degree_vertex };
enum class SearchStatus { found, exhausted, budget_exceeded };
enum class EdgeOrdering {
    greedy,       // get_edge_ordering
    fiber_sweep,  // left-fiber by left-fiber along the right factor, linking edges after each fiber
    dynamic,      // next edge is the uncolored one with fewest admissible colors; single worker
};

/// clause_learning hands a CNF encoding to a clause-learning solver; it
/// supports mode first with table and reflection constraints only and
/// ignores ordering, ordered_new_colors, forward_check and workers.
enum class SearchEngine { backtracking, clause_learning };

const char* to_string(SearchStatus s) noexcept;

/// Zero means unlimited.
struct SearchLimits {
    std::uint64_t max_nodes = 0;
    std::chrono::milliseconds max_time{0};
};

struct SearchConfig {
    int colors = 0;
    /// Partial coloring of the same graph; must pass verify_partial.
    std::optional<EdgeColoring> precoloring;
    std::vector<ConstraintPtr> constraints;
    /// fix_max_degree_vertex colors the edges at the first vertex of maximum
    /// degree 0,1,2,... and introduces the remaining colors in increasing
    /// order. Sound for existence only; rejected together with a precoloring.
    SymmetryBreaking symmetry = SymmetryBreaking::none;
    /// Among colors not used so far only the smallest is tried. Counts then
    /// equal the number of classes under color permutation.
    bool ordered_new_colors = false;
    /// After each assignment, reject it if a nearby uncolored edge has no
    /// color left. Prunes only dead subtrees, so results and their order are
    /// unchanged; node counts shrink.
    bool forward_check = false;
    EdgeOrdering ordering = EdgeOrdering::greedy;
    SearchEngine engine = SearchEngine::backtracking;
    SearchMode mode = SearchMode::first;
    SearchLimits limits;
    /// Parallel workers; results do not depend on this value.
    int workers = 1;
    /// Depth of the prefix tree split into independent tasks.
    int split_depth = 2;
};

struct SearchOutcome {
    SearchStatus status = SearchStatus::exhausted;
    /// mode first: the coloring found; mode collect_all: all of them in
    /// search order.
    std::vector<EdgeColoring> colorings;
    std::uint64_t solutions = 0;
    std::uint64_t nodes = 0;
    std::chrono::nanoseconds elapsed{0};
};

/// Raised when a search stops on a node or time budget where a definite
/// answer was required.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Greedy order over uncolored edges: repeatedly take the edge with most
/// precolored neighbours, then most neighbours already ordered; ties go to
/// the smallest id.
std::vector<EdgeId> get_edge_ordering(const GridGraph& g, std::span<const char> precolored);
std::vector<EdgeId> get_edge_ordering(const EdgeColoring& partial);
std::vector<EdgeId> fiber_sweep_ordering(const EdgeColoring& partial);

/// Incremental check of assigning c to the uncolored edge e.
std::optional<Violation> conflict(const EdgeColoring& partial, EdgeId e, Color c);

/// Backtracking star coloring. Throws std::invalid_argument for an invalid
/// config (bad budget, precoloring failing verify_partial or a constraint).
SearchOutcome star_color(const GraphPtr& g, const SearchConfig& cfg);

struct ChiOptions {
    SearchLimits limits;
    int workers = 1;
    bool symmetry_breaking = true;
};

/// Smallest k <= k_max admitting a star k-coloring, scanning upward from the
/// maximum degree. Throws BudgetExceeded if a step times out, and
/// std::runtime_error if no k <= k_max works.
int chi_star(const GraphPtr& g, int k_max, const ChiOptions& opts = {});

struct Enumeration {
    std::uint64_t count = 0;
    std::vector<std::vector<Color>> forms;  // sorted canonical forms
};

/// All star k-colorings up to `group`. `full` needs a plain cycle (C_n x P1).
/// Throws BudgetExceeded when the limits are hit.
Enumeration enumerate_colorings(const GraphPtr& g, int k, SymmetryGroup group, const SearchLimits& limits = {},
                                int workers = 1);

enum class ExtendStatus { yes, no, budget_exceeded };

struct ExtendResult {
    ExtendStatus status = ExtendStatus::no;
    std::optional<EdgeColoring> coloring;
    std::uint64_t nodes = 0;
};

/// Path position (0-based) of the fiber precolored by extendable for depth t.
inline int middle_fiber(int depth) { return (depth + 1) / 2 - 1; }

/// Tries to extend a star coloring of C_m placed on the middle cycle fiber
/// of C_m x P_depth to a star k-coloring of the whole graph.
ExtendResult extendable(int m, std::span<const Color> fiber_colors, int k, int depth,
                        const SearchLimits& limits = {}, int workers = 1);

}  // namespace stargrid
