#include <stargrid/catalog.hpp>

#include <atomic>
#include <chrono>
#include <filesystem>
#include <mutex>
#include <set>
#include <thread>

namespace stargrid {

namespace fs = std::filesystem;

namespace {

CatalogTarget cc(int m, int n, int k, std::vector<std::string> windows = {}, std::string note = {})
{
    CatalogTarget t{"cc", m, n, k, {}, std::move(note), false};
    for (const auto& w : windows)
        t.windows.push_back(parse_window_chain(w));
    return t;
}

CatalogTarget cp(int m, int n, int k, std::vector<std::string> windows = {}, std::string note = {})
{
    CatalogTarget t = cc(m, n, k, std::move(windows), std::move(note));
    t.family = "cp";
    return t;
}

CatalogTarget mirrored(CatalogTarget t)
{
    t.mirrored = true;
    return t;
}

}  // namespace

GraphPtr CatalogTarget::graph() const
{
    return make_grid(FactorGraph::cycle(m), family == "cc" ? FactorGraph::cycle(n) : FactorGraph::path(n));
}

std::string CatalogTarget::file_name() const
{
    return family + "_" + std::to_string(m) + "x" + std::to_string(n) + "_k" + std::to_string(k) + ".scjson";
}

std::string CatalogTarget::label() const
{
    return std::string("C") + std::to_string(m) + (family == "cc" ? "xC" : "xP") + std::to_string(n) + "@" +
           std::to_string(k);
}

const std::vector<CatalogTarget>& appendix_targets()
{
    static const std::vector<CatalogTarget> targets{
        cc(3, 3, 6, {}, "unique up to color permutation"),
        cc(3, 4, 7),
        cc(3, 5, 7),
        cc(3, 7, 7, {"right:3"}),
        cc(3, 8, 7, {"right:3"}),
        cc(4, 5, 7),
        cc(4, 6, 6),
        cc(4, 7, 7, {"right:4"}),
        cc(4, 9, 7, {"right:4"}),
        cc(4, 10, 6, {"right:4", "right:6"}),
        cc(5, 5, 7),
        cc(5, 7, 7, {"right:3"}),
        cc(5, 11, 7),
        cc(7, 7, 7, {"left:3", "right:3", "left:3/right:3"}, "common C3xC3 window"),
        cc(11, 11, 7, {"right:7", "right:7/right:3"}),
        cp(5, 6, 6),
        cp(7, 6, 6),
        cp(10, 6, 6, {"left:3"}),
        mirrored(cp(11, 8, 6, {}, "searched among colorings symmetric under reflecting both factors")),
        cp(14, 8, 6, {"left:3"}),
    };
    return targets;
}

const std::vector<CatalogTarget>& prism_targets()
{
    static const std::vector<CatalogTarget> targets{
        cp(4, 2, 4, {}, "prism base"),
        cp(5, 2, 5, {}, "prism base"),
        cp(6, 2, 5, {}, "prism base"),
        cp(7, 2, 5, {"left:4", "left:6"}, "prism base"),
        cp(9, 2, 5, {}, "prism base"),
        cp(11, 2, 5, {"left:6"}, "prism base"),
    };
    return targets;
}

std::vector<CatalogTarget> default_targets()
{
    auto out = appendix_targets();
    const auto& extra = prism_targets();
    out.insert(out.end(), extra.begin(), extra.end());
    return out;
}

void verify_entry(const CatalogEntry& e)
{
    const auto& t = e.target;
    const GridGraph& g = e.coloring.graph();
    if (family_code(g) != t.family || g.left().size() != t.m || g.right().size() != t.n)
        throw CatalogError(t.label() + ": stored graph is " + g.name());
    if (e.coloring.k() != t.k)
        throw CatalogError(t.label() + ": stored color budget is " + std::to_string(e.coloring.k()));
    if (!e.coloring.is_total())
        throw CatalogError(t.label() + ": coloring is partial");
    if (auto v = verify_star(e.coloring))
        throw CatalogError(t.label() + ": not a star coloring: " + describe(g, *v));
    for (const auto& w : t.windows)
        if (auto v = check_inclusion(e.coloring, w))
            throw CatalogError(t.label() + ": window " + to_string(w) + " fails: " + describe(g, *v));
}

SearchOutcome search_target(const CatalogTarget& t, const SearchLimits& limits)
{
    GraphPtr g = t.graph();
    SearchConfig cfg;
    cfg.colors = t.k;
    cfg.symmetry = SymmetryBreaking::fix_max_degree_vertex;
    cfg.engine = SearchEngine::clause_learning;
    cfg.limits = limits;
    for (const auto& w : t.windows)
        cfg.constraints.push_back(std::make_shared<InclusionConstraint>(*g, w));
    if (t.mirrored)
        cfg.constraints.push_back(std::make_shared<ReflectionConstraint>(*g, true, true));
    return star_color(g, cfg);
}

std::vector<BuildReport> catalog_build(const std::vector<CatalogTarget>& targets, const std::string& dir,
                                       const BuildOptions& opts)
{
    std::set<std::string> names;
    for (const auto& t : targets)
        if (!names.insert(t.file_name()).second)
            throw std::invalid_argument("target " + t.label() + " is listed twice");
    fs::create_directories(dir);

    std::vector<BuildReport> reports(targets.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= targets.size())
                return;
            const CatalogTarget& t = targets[i];
            BuildReport& r = reports[i];
            r.target = t;
            const auto start = std::chrono::steady_clock::now();
            const fs::path path = fs::path(dir) / t.file_name();
            try {
                if (fs::exists(path)) {
                    verify_entry({t, read_coloring_file(path.string()).coloring});
                    r.status = BuildStatus::kept;
                } else {
                    auto out = search_target(t, opts.limits);
                    r.nodes = out.nodes;
                    if (out.status != SearchStatus::found) {
                        r.status = BuildStatus::failed;
                        r.message = to_string(out.status);
                    } else {
                        CatalogEntry e{t, out.colorings.front()};
                        verify_entry(e);
                        write_coloring_file(path.string(), {e.coloring, t.windows});
                        r.status = BuildStatus::built;
                    }
                }
            } catch (const std::exception& ex) {
                r.status = BuildStatus::failed;
                r.message = ex.what();
            }
            r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        }
    };
    const int workers = std::max(1, std::min<int>(opts.workers, static_cast<int>(targets.size())));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(work);
    }
    return reports;
}

std::vector<CatalogEntry> catalog_load(const std::vector<CatalogTarget>& targets, const std::string& dir)
{
    std::vector<CatalogEntry> out;
    for (const auto& t : targets) {
        const fs::path path = fs::path(dir) / t.file_name();
        if (!fs::exists(path))
            throw CatalogError(t.label() + ": missing " + path.string());
        ColoringFile f = [&] {
            try {
                return read_coloring_file(path.string());
            } catch (const FormatError& e) {
                throw CatalogError(e.what());
            }
        }();
        std::set<std::string> declared, wanted;
        for (const auto& w : f.windows)
            declared.insert(to_string(w));
        for (const auto& w : t.windows)
            wanted.insert(to_string(w));
        if (declared != wanted)
            throw CatalogError(t.label() + ": declared windows differ from the target's");
        CatalogEntry e{t, std::move(f.coloring)};
        verify_entry(e);
        out.push_back(std::move(e));
    }
    return out;
}

std::string default_catalog_dir()
{
    return STARGRID_CATALOG_DIR;
}

}  // namespace stargrid
