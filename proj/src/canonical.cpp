#include <stargrid/canonical.hpp>

#include <algorithm>
#include <array>
#include <stdexcept>

namespace stargrid {

const char* to_string(SymmetryGroup g) noexcept
{
    return g == SymmetryGroup::full ? "full" : "color-perm";
}

SymmetryGroup parse_symmetry_group(const std::string& text)
{
    if (text == "full")
        return SymmetryGroup::full;
    if (text == "color-perm")
        return SymmetryGroup::color_perm;
    throw std::invalid_argument("unknown symmetry group '" + text + "' (expected full or color-perm)");
}

std::vector<Color> relabel_first_seen(std::span<const Color> colors)
{
    std::array<Color, kMaxColors> map;
    map.fill(kUnset);
    Color next = 0;
    std::vector<Color> out;
    out.reserve(colors.size());
    for (Color c : colors) {
        if (c == kUnset) {
            out.push_back(kUnset);
            continue;
        }
        auto& slot = map[static_cast<std::size_t>(c)];
        if (slot == kUnset)
            slot = next++;
        out.push_back(slot);
    }
    return out;
}

std::vector<Color> canonical_cycle_coloring(std::span<const Color> colors, SymmetryGroup group)
{
    if (group == SymmetryGroup::color_perm)
        return relabel_first_seen(colors);

    const std::size_t n = colors.size();
    std::vector<Color> best = relabel_first_seen(colors);
    std::vector<Color> seq(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t t = 0; t < n; ++t)
            seq[t] = colors[(r + t) % n];
        best = std::min(best, relabel_first_seen(seq));
        std::reverse(seq.begin(), seq.end());
        best = std::min(best, relabel_first_seen(seq));
    }
    return best;
}

}  // namespace stargrid
