#pragma once

#include <stargrid/coloring.hpp>
#include <stargrid/verify.hpp>

#include <array>
#include <string>
#include <vector>

namespace stargrid {

/// Fixed palette for colors 0..6.
inline constexpr std::array<const char*, 7> kPalette{"red", "blue", "green", "orange", "purple", "brown", "teal"};

/// Grid drawing with the left factor horizontal, cycle wrap edges as arcs and
/// the given windows shaded. Throws std::invalid_argument for colors beyond
/// the palette.
std::string render_svg(const EdgeColoring& c, const std::vector<WindowChain>& windows = {});

/// Graphviz text with one edge statement per grid edge.
std::string render_dot(const EdgeColoring& c);

}  // namespace stargrid
