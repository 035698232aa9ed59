#pragma once

#include <stargrid/format.hpp>
#include <stargrid/search.hpp>

#include <map>
#include <string>
#include <vector>

namespace stargrid {

/// A base coloring to be found by search: C_m x C_n ("cc") or C_m x P_n
/// ("cp") with k colors, including star colorings on the listed windows.
struct CatalogTarget {
    std::string family;
    int m = 0;
    int n = 0;
    int k = 0;
    std::vector<WindowChain> windows;
    std::string note;
    /// Search only colorings that commute with reflecting both factors up to
    /// a color relabeling. A search aid; the stored coloring is not checked
    /// for it.
    bool mirrored = false;

    GraphPtr graph() const;
    /// "cc_3x7_k7.scjson"
    std::string file_name() const;
    std::string label() const;  // "C3xC7@7"
};

/// The base colorings the closed forms are built from.
const std::vector<CatalogTarget>& appendix_targets();
/// Prism bases C_m x P_2 used for the n = 2 column.
const std::vector<CatalogTarget>& prism_targets();
/// appendix_targets() followed by prism_targets().
std::vector<CatalogTarget> default_targets();

struct CatalogEntry {
    CatalogTarget target;
    EdgeColoring coloring;
};

/// Raised when a stored entry fails verification or a target cannot be built.
class CatalogError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Verifies the coloring and every window of a target; throws CatalogError.
void verify_entry(const CatalogEntry& e);

struct BuildOptions {
    SearchLimits limits;      // per target
    int workers = 1;          // targets searched concurrently
};

enum class BuildStatus { built, kept, failed };

struct BuildReport {
    CatalogTarget target;
    BuildStatus status = BuildStatus::failed;
    std::uint64_t nodes = 0;
    double seconds = 0;
    std::string message;
};

/// Searches one target with the clause-learning engine: fixed colors at a hub
/// vertex and the windows as inclusion constraints.
SearchOutcome search_target(const CatalogTarget& t, const SearchLimits& limits);

/// Builds the missing targets into `dir`. Existing files are re-verified and
/// kept, never overwritten; a target listed twice is an error
/// (std::invalid_argument). Reports come back in target order.
std::vector<BuildReport> catalog_build(const std::vector<CatalogTarget>& targets, const std::string& dir,
                                       const BuildOptions& opts = {});

/// Loads and verifies every target's file from `dir`. Throws CatalogError on
/// a missing, malformed or invalid entry.
std::vector<CatalogEntry> catalog_load(const std::vector<CatalogTarget>& targets, const std::string& dir);

/// Directory the build was configured with (the repository's catalog/).
std::string default_catalog_dir();

}  // namespace stargrid
