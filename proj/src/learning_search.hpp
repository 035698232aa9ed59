#pragma once

#include "dynamic_search.hpp"

namespace stargrid::detail {

/// Encodes the coloring problem as CNF and hands it to SatSolver. Mode
/// first only; constraints must be table or reflection constraints.
DynamicResult learning_search(const GridGraph& g, const SearchConfig& cfg, const EdgeColoring& base,
                              const std::function<bool(std::uint64_t)>& over_budget);

}  // namespace stargrid::detail
