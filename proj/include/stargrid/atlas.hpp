#pragma once

#include <optional>
#include <string>

namespace stargrid {

enum class Family { PP, CP, CC };

const char* to_string(Family f) noexcept;  // "pp", "cp", "cc"
Family parse_family(const std::string& text);

/// Star chromatic index, exact when lo == hi.
struct ChiResult {
    int lo = 0;
    int hi = 0;
    std::string provenance;
    bool exact() const noexcept { return lo == hi; }
    friend bool operator==(const ChiResult&, const ChiResult&) = default;
};

/// "exact 7 (thm-C5Cn)" or "range 6..7 (table2-open)".
std::string to_string(const ChiResult& r);

/// Closed-form value for P_m x P_n (PP), C_m x P_n (CP) or C_m x C_n (CC),
/// taken from the golden tables where they reach and from the theorem rules
/// elsewhere. Throws std::invalid_argument for sizes outside the family
/// (paths need at least 2 vertices, cycles at least 3).
ChiResult chi_lookup(Family family, int m, int n);

/// Just the ordered theorem rules, without the golden tables.
ChiResult theorem_rule(Family family, int m, int n);

/// Golden table cell, if (m, n) lies inside the table for the family.
std::optional<ChiResult> golden_cell(Family family, int m, int n);

}  // namespace stargrid
