#pragma once

#include <stargrid/coloring.hpp>
#include <stargrid/verify.hpp>

#include <optional>

namespace stargrid {

/// Lifting constructions along one cycle side of a grid (the left side by
/// default). Fiber positions are 0-based: position t of the output reads
/// position t mod m of the input.

/// sigma on C_m x H -> C_{k*m} x H. Throws std::invalid_argument on an
/// invalid sigma or k < 1, std::logic_error if the output fails verify_star.
EdgeColoring tile(const EdgeColoring& sigma, int k, Side side = Side::left);

/// sigma on C_n x H, which must include a star coloring on the window of
/// length m (checked when p > 0) -> C_{p*m+q*n} x H: p copies of the window
/// followed by q copies of sigma. The window's closing edge reads sigma's
/// wrap edge.
EdgeColoring combine(const EdgeColoring& sigma, int m, int p, int q, Side side = Side::left);

/// Same coloring on B x A; edge ((i,j),(i',j')) goes to ((j,i),(j',i')).
EdgeColoring transpose(const EdgeColoring& c);

/// Restriction to the subgraph where the factor on `side` is cut down to the
/// path P_n on its first n vertices (n at most the factor's vertex count).
EdgeColoring restrict_to_path(const EdgeColoring& c, int n, Side side = Side::left);

struct FrobeniusPair {
    int alpha = 0;
    int beta = 0;
    friend bool operator==(const FrobeniusPair&, const FrobeniusPair&) = default;
};

/// alpha*n + beta*m == target with the smallest alpha, if any.
std::optional<FrobeniusPair> frobenius(int n, int m, int target);

}  // namespace stargrid
