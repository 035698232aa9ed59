#pragma once

#include <stargrid/coloring.hpp>
#include <stargrid/verify.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace stargrid {

/// Contents of a .scjson file: one total or partial coloring of a grid plus
/// the inclusion windows it claims.
struct ColoringFile {
    static constexpr int kSchema = 1;

    EdgeColoring coloring;
    std::vector<WindowChain> windows;
};

/// Raised for malformed files; the message names the line or the field.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// "cc", "cp", "pc" or "pp": the kinds of the left and right factor.
std::string family_code(const GridGraph& g);

/// FNV-1a 64 over "<family>:<m>x<n>:k<k>:" followed by the colors in
/// canonical edge order, comma separated (unset edges as -1); 16 hex digits.
std::string coloring_digest(const EdgeColoring& c);

/// Compact JSON with keys in the order schema, family, m, n, k, edges,
/// windows, digest; each edge is [[i,j],[i',j'],color]; ends with a newline.
std::string serialize(const ColoringFile& f);

/// Inverse of serialize. Checks the edge list against the canonical order,
/// color range and digest; does not check star validity or the windows.
ColoringFile deserialize(const std::string& text);

ColoringFile read_coloring_file(const std::string& path);
void write_coloring_file(const std::string& path, const ColoringFile& f);

}  // namespace stargrid
