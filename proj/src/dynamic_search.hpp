#pragma once

#include <stargrid/search.hpp>

#include <functional>

namespace stargrid::detail {

struct DynamicResult {
    bool aborted = false;
    std::uint64_t nodes = 0;
    std::uint64_t solutions = 0;
    std::vector<std::vector<Color>> colorings;
};

/// Depth-first search that always branches on the uncolored edge with the
/// fewest admissible colors. `base` holds the fixed edges.
DynamicResult dynamic_search(const GridGraph& g, const SearchConfig& cfg, const EdgeColoring& base, bool ordered_new,
                             const std::function<bool(std::uint64_t)>& over_budget);

}  // namespace stargrid::detail
