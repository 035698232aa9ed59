#pragma once

#include <stargrid/coloring.hpp>

#include <span>
#include <string>
#include <vector>

namespace stargrid {

enum class SymmetryGroup {
    color_perm,  // permutations of colors only
    full,        // color permutations, rotations and reflections of the cycle
};

const char* to_string(SymmetryGroup g) noexcept;
SymmetryGroup parse_symmetry_group(const std::string& text);

/// Renames colors in order of first appearance: (1,2,0,1) -> (0,1,2,0).
std::vector<Color> relabel_first_seen(std::span<const Color> colors);

/// Lexicographically least member of the orbit of a cycle coloring, where
/// colors[a] is the color of edge {a, a+1 mod n}. Two colorings are
/// isomorphic under `group` iff their canonical forms are equal.
std::vector<Color> canonical_cycle_coloring(std::span<const Color> colors, SymmetryGroup group);

}  // namespace stargrid
