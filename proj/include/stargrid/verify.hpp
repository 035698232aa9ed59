#pragma once

#include <stargrid/coloring.hpp>

#include <optional>
#include <vector>

namespace stargrid {

/// Star validity of a total coloring: proper, and no 4-edge path or 4-cycle
/// carries exactly two colors. Returns the first witness in canonical order,
/// adjacency clashes before bichromatic structures. Throws
/// std::invalid_argument on a partial coloring.
std::optional<Violation> verify_star(const EdgeColoring& c);

/// Same check restricted to structures whose edges are all colored.
std::optional<Violation> verify_partial(const EdgeColoring& c);

/// Inclusion windows.
///
/// A window of length m on side `side` (whose factor must be a cycle C_n with
/// 3 <= m < n) keeps the m consecutive fibers at positions 0..m-1 across that
/// side and closes them into C_m with wrap edges that inherit the color of
/// the host's wrap edge at the same fiber position.
struct Window {
    Side side;
    int length;
    friend bool operator==(const Window&, const Window&) = default;
};

/// Nested windows applied left to right, e.g. {right 7, right 3}.
using WindowChain = std::vector<Window>;

std::string to_string(const WindowChain& chain);
WindowChain parse_window_chain(const std::string& text);

/// Window subgraph with the host edge each of its edges reads its color from.
struct WindowView {
    GraphPtr graph;
    std::vector<EdgeId> source;
};

WindowView make_window(const GridGraph& host, Window w);
WindowView make_window(const GridGraph& host, const WindowChain& chain);

/// Coloring of the window graph induced by `c`.
EdgeColoring window_coloring(const EdgeColoring& c, const WindowView& view);

/// Checks that `c` includes a star coloring on the window; the witness, if
/// any, is reported in host edge ids. Throws std::invalid_argument when the
/// window does not fit the host (m out of range or the side is not a cycle).
std::optional<Violation> check_inclusion(const EdgeColoring& c, const WindowChain& chain);
std::optional<Violation> check_inclusion(const EdgeColoring& c, int m, Side side = Side::left);

}  // namespace stargrid
