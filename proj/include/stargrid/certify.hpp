#pragma once

#include <stargrid/atlas.hpp>
#include <stargrid/catalog.hpp>

#include <functional>
#include <string>
#include <vector>

namespace stargrid {

struct Certificate {
    EdgeColoring coloring;           // k equals the requested color count
    std::vector<std::string> trace;  // recipe steps, base first
};

/// Builds explicit colorings from catalog bases with tile, combine (on
/// windows verified at run time), transpose and restriction to a path.
class Certifier {
public:
    explicit Certifier(std::vector<CatalogEntry> entries);

    /// Coloring of C_m x C_n (CC) or C_m x P_n (CP) with at most `colors`
    /// colors. Throws std::runtime_error when no recipe applies.
    Certificate certify(Family family, int m, int n, int colors) const;
    /// Same with colors = chi_lookup(family, m, n).hi.
    Certificate certify(Family family, int m, int n) const;

private:
    struct Item {
        EdgeColoring coloring;
        std::vector<std::string> trace;
    };
    using Visitor = std::function<bool(Item&&)>;

    bool derive(const Item& item, Side side, int target, int depth, const Visitor& visit) const;
    bool certify_cycles(int m, int n, int colors, const Visitor& visit) const;
    bool certify_cylinder(int m, int n, int colors, const Visitor& visit) const;

    std::vector<Item> bases_;
};

}  // namespace stargrid
