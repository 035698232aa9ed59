#include <stargrid/atlas.hpp>
#include <stargrid/catalog.hpp>
#include <stargrid/certify.hpp>
#include <stargrid/format.hpp>
#include <stargrid/render.hpp>
#include <stargrid/search.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace stargrid;

namespace {

constexpr int kOk = 0;
constexpr int kNo = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int thread_count()
{
    const char* env = std::getenv("SGC_THREADS");
    if (!env || !*env)
        return 1;
    try {
        return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
        throw UsageError(std::string("SGC_THREADS must be a positive integer, got '") + env + "'");
    }
}

SearchLimits limits_from(std::uint64_t max_nodes, double max_seconds)
{
    SearchLimits l;
    l.max_nodes = max_nodes;
    l.max_time = std::chrono::milliseconds(static_cast<std::int64_t>(max_seconds * 1000));
    return l;
}

GraphPtr grid_from(const std::string& family, int m, int n)
{
    std::string f = family;
    for (auto& ch : f)
        ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (f.size() != 2 || (f[0] != 'c' && f[0] != 'p') || (f[1] != 'c' && f[1] != 'p'))
        throw UsageError("family must be one of cc, cp, pc, pp");
    auto factor = [](char kind, int size) {
        return kind == 'c' ? FactorGraph::cycle(size) : FactorGraph::path(size);
    };
    try {
        return make_grid(factor(f[0], m), factor(f[1], n));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

ColoringFile load(const std::string& path)
{
    try {
        return read_coloring_file(path);
    } catch (const FormatError& e) {
        throw UsageError(e.what());
    }
}

void emit(const std::string& text, const std::string& path)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error(path + ": cannot write");
    out << text;
}

std::vector<Color> parse_colors(const std::string& text)
{
    std::vector<Color> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            int v = std::stoi(item, &used);
            if (used != item.size())
                throw std::invalid_argument(item);
            out.push_back(static_cast<Color>(v));
        } catch (const std::exception&) {
            throw UsageError("bad color list '" + text + "'");
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Star edge-colorings of grids: lookup, search, verification, construction"};
    app.require_subcommand(1);
    int code = kOk;

    // index
    auto* index = app.add_subcommand("index", "Print the known star chromatic index");
    std::string idx_family;
    int idx_m = 0, idx_n = 0;
    index->add_option("--family", idx_family, "pp, cp or cc")->required();
    index->add_option("-m", idx_m, "left factor size")->required();
    index->add_option("-n", idx_n, "right factor size")->required();
    index->callback([&] {
        try {
            std::cout << to_string(chi_lookup(parse_family(idx_family), idx_m, idx_n)) << "\n";
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    });

    // solve
    auto* solve = app.add_subcommand("solve", "Search for a star coloring");
    std::string sv_family, sv_out, sv_ordering = "greedy", sv_rainbow;
    int sv_m = 0, sv_n = 0, sv_k = 0;
    std::vector<std::string> sv_windows;
    bool sv_no_symmetry = false;
    std::uint64_t sv_nodes = 0;
    double sv_seconds = 0;
    solve->add_option("--family", sv_family, "cc, cp, pc or pp")->required();
    solve->add_option("-m", sv_m, "left factor size")->required();
    solve->add_option("-n", sv_n, "right factor size")->required();
    solve->add_option("-k", sv_k, "number of colors")->required();
    solve->add_option("-o,--output", sv_out, "write the coloring here (default: stdout)");
    solve->add_option("--window", sv_windows, "required inclusion window, e.g. right:3 or left:3/right:3");
    solve->add_option("--ordering", sv_ordering, "greedy, sweep or dynamic")
        ->check(CLI::IsMember({"greedy", "sweep", "dynamic"}));
    solve->add_option("--fiber-rainbow", sv_rainbow, "left or right: four colors on every fiber 4-path")
        ->check(CLI::IsMember({"left", "right"}));
    solve->add_flag("--no-symmetry", sv_no_symmetry, "do not fix the colors at a hub vertex");
    solve->add_option("--max-nodes", sv_nodes, "node budget (0 = none)");
    solve->add_option("--max-seconds", sv_seconds, "time budget (0 = none)");
    solve->callback([&] {
        GraphPtr g = grid_from(sv_family, sv_m, sv_n);
        SearchConfig cfg;
        cfg.colors = sv_k;
        cfg.symmetry = sv_no_symmetry ? SymmetryBreaking::none : SymmetryBreaking::fix_max_degree_vertex;
        cfg.ordering = sv_ordering == "greedy"  ? EdgeOrdering::greedy
                       : sv_ordering == "sweep" ? EdgeOrdering::fiber_sweep
                                                : EdgeOrdering::dynamic;
        cfg.limits = limits_from(sv_nodes, sv_seconds);
        cfg.workers = thread_count();
        std::vector<WindowChain> windows;
        try {
            for (const auto& w : sv_windows) {
                windows.push_back(parse_window_chain(w));
                cfg.constraints.push_back(std::make_shared<InclusionConstraint>(*g, windows.back()));
            }
            if (!sv_rainbow.empty())
                cfg.constraints.push_back(
                    std::make_shared<FiberRainbowConstraint>(*g, sv_rainbow == "left" ? Side::left : Side::right));
            auto out = star_color(g, cfg);
            std::cerr << to_string(out.status) << " nodes=" << out.nodes << "\n";
            if (out.status == SearchStatus::found) {
                emit(serialize({out.colorings.front(), windows}), sv_out);
            } else {
                std::cout << to_string(out.status) << "\n";
                code = out.status == SearchStatus::exhausted ? kNo : kBudget;
            }
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    });

    // verify
    auto* verify = app.add_subcommand("verify", "Check a coloring file");
    std::string vf_file;
    verify->add_option("file", vf_file, ".scjson file")->required();
    verify->callback([&] {
        ColoringFile f = load(vf_file);
        const GridGraph& g = f.coloring.graph();
        auto v = f.coloring.is_total() ? verify_star(f.coloring) : verify_partial(f.coloring);
        if (v) {
            std::cout << "invalid: " << describe(g, *v) << "\n";
            code = kNo;
            return;
        }
        for (const auto& w : f.windows)
            if (auto wv = check_inclusion(f.coloring, w)) {
                std::cout << "invalid window " << to_string(w) << ": " << describe(g, *wv) << "\n";
                code = kNo;
                return;
            }
        std::cout << "ok " << g.name() << " " << (f.coloring.is_total() ? "total" : "partial") << " "
                  << f.coloring.used_colors() << " colors\n";
    });

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "Count star colorings up to symmetry");
    int en_cycle = 0, en_k = 0, en_m = 0, en_n = 0;
    std::string en_family, en_group = "full";
    bool en_count = false, en_forms = false;
    std::uint64_t en_nodes = 0;
    double en_seconds = 0;
    enumerate->add_option("--cycle", en_cycle, "color the plain cycle C_n");
    enumerate->add_option("--family", en_family, "grid family instead of --cycle");
    enumerate->add_option("-m", en_m, "left factor size");
    enumerate->add_option("-n", en_n, "right factor size");
    enumerate->add_option("-k", en_k, "number of colors")->required();
    enumerate->add_option("--group", en_group, "full or color-perm")->check(CLI::IsMember({"full", "color-perm"}));
    enumerate->add_flag("--count", en_count, "print the count (default)");
    enumerate->add_flag("--forms", en_forms, "also print every canonical form");
    enumerate->add_option("--max-nodes", en_nodes, "node budget (0 = none)");
    enumerate->add_option("--max-seconds", en_seconds, "time budget (0 = none)");
    enumerate->callback([&] {
        GraphPtr g;
        if (en_cycle > 0)
            g = grid_from("cp", en_cycle, 1);
        else if (!en_family.empty())
            g = grid_from(en_family, en_m, en_n);
        else
            throw UsageError("give --cycle or --family with -m and -n");
        try {
            auto r = enumerate_colorings(g, en_k, parse_symmetry_group(en_group), limits_from(en_nodes, en_seconds),
                                         thread_count());
            std::cout << r.count << "\n";
            if (en_forms)
                for (const auto& f : r.forms) {
                    for (std::size_t i = 0; i < f.size(); ++i)
                        std::cout << (i ? "," : "") << int(f[i]);
                    std::cout << "\n";
                }
        } catch (const BudgetExceeded& e) {
            std::cout << "budget-exceeded\n";
            code = kBudget;
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    });

    // extend
    auto* extend = app.add_subcommand("extend", "Try to extend a cycle fiber coloring along a path");
    int ex_cycle = 0, ex_k = 0, ex_min = 3, ex_max = 0;
    std::vector<std::string> ex_fibers;
    double ex_seconds = 0;
    extend->add_option("--cycle", ex_cycle, "cycle length")->required();
    extend->add_option("-k", ex_k, "number of colors")->required();
    extend->add_option("--fiber", ex_fibers, "fiber colors, e.g. 0,1,0,2,0,3")->required();
    extend->add_option("--min-depth", ex_min, "first path length tried (odd lengths upward)");
    extend->add_option("--max-depth", ex_max, "last path length tried")->required();
    extend->add_option("--max-seconds", ex_seconds, "time budget per depth (0 = none)");
    extend->callback([&] {
        int worst = kOk;
        for (const auto& text : ex_fibers) {
            auto fiber = parse_colors(text);
            std::string verdict;
            int rc = kOk;
            int t = ex_min;
            int last_yes = 0;
            try {
                for (; t <= ex_max; t += 2) {
                    auto r = extendable(ex_cycle, fiber, ex_k, t, limits_from(0, ex_seconds), thread_count());
                    if (r.status == ExtendStatus::yes) {
                        last_yes = t;
                        continue;
                    }
                    if (r.status == ExtendStatus::no) {
                        verdict = "no (depth " + std::to_string(t) + ")";
                        rc = kNo;
                    } else {
                        verdict = "budget-exceeded (depth " + std::to_string(t) + ", yes up to " +
                                  std::to_string(last_yes) + ")";
                        rc = kBudget;
                    }
                    break;
                }
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            if (verdict.empty())
                verdict = "yes (depth " + std::to_string(last_yes) + ")";
            std::cout << (ex_fibers.size() > 1 ? text + ": " : "") << verdict << "\n";
            worst = std::max(worst, rc);
        }
        code = worst;
    });

    // certify
    auto* certify = app.add_subcommand("certify", "Build an explicit coloring with the known upper bound");
    std::string ce_family, ce_out, ce_dir = default_catalog_dir();
    int ce_m = 0, ce_n = 0;
    certify->add_option("--family", ce_family, "cc or cp")->required();
    certify->add_option("-m", ce_m, "cycle length")->required();
    certify->add_option("-n", ce_n, "other factor size")->required();
    certify->add_option("-o,--output", ce_out, "witness file (default: <family>_<m>x<n>_k<hi>.scjson)");
    certify->add_option("--catalog", ce_dir, "catalog directory");
    certify->callback([&] {
        Family fam;
        ChiResult chi;
        try {
            fam = parse_family(ce_family);
            chi = chi_lookup(fam, ce_m, ce_n);
            if (fam == Family::PP)
                throw std::invalid_argument("certify covers the cc and cp families");
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        Certifier cert(catalog_load(default_targets(), ce_dir));
        auto c = cert.certify(fam, ce_m, ce_n, chi.hi);
        for (const auto& step : c.trace)
            std::cout << step << "\n";
        if (ce_out.empty())
            ce_out = ce_family + "_" + std::to_string(ce_m) + "x" + std::to_string(ce_n) + "_k" +
                     std::to_string(chi.hi) + ".scjson";
        write_coloring_file(ce_out, {c.coloring, {}});
        std::cout << "wrote " << ce_out << " (" << c.coloring.used_colors() << " colors, " << to_string(chi)
                  << ")\n";
    });

    // render
    auto* render = app.add_subcommand("render", "Draw a coloring file as SVG or DOT");
    std::string rd_file, rd_format = "svg", rd_out;
    render->add_option("file", rd_file, ".scjson file")->required();
    render->add_option("--format", rd_format, "svg or dot")->check(CLI::IsMember({"svg", "dot"}));
    render->add_option("-o,--output", rd_out, "output file (default: stdout)");
    render->callback([&] {
        ColoringFile f = load(rd_file);
        try {
            emit(rd_format == "dot" ? render_dot(f.coloring) : render_svg(f.coloring, f.windows), rd_out);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    });

    // catalog build | check
    auto* catalog = app.add_subcommand("catalog", "Build or check the catalog of base colorings");
    catalog->require_subcommand(1);
    std::string ca_dir = default_catalog_dir();
    std::vector<std::string> ca_only;
    double ca_seconds = 0;
    auto* build = catalog->add_subcommand("build", "Search every missing target");
    build->add_option("--dir", ca_dir, "catalog directory");
    build->add_option("--only", ca_only, "restrict to targets by label, e.g. C3xC7@7");
    build->add_option("--max-seconds", ca_seconds, "time budget per target (0 = none)");
    auto pick_targets = [&] {
        auto all = default_targets();
        if (ca_only.empty())
            return all;
        std::vector<CatalogTarget> out;
        for (const auto& label : ca_only) {
            auto it = std::find_if(all.begin(), all.end(), [&](const CatalogTarget& t) { return t.label() == label; });
            if (it == all.end())
                throw UsageError("unknown target " + label);
            out.push_back(*it);
        }
        return out;
    };
    build->callback([&] {
        BuildOptions opts;
        opts.limits = limits_from(0, ca_seconds);
        opts.workers = thread_count();
        for (const auto& r : catalog_build(pick_targets(), ca_dir, opts)) {
            const char* status = r.status == BuildStatus::built ? "built" : r.status == BuildStatus::kept ? "kept" : "FAILED";
            std::cout << status << " " << r.target.label() << " " << r.target.file_name() << " nodes=" << r.nodes
                      << " seconds=" << r.seconds << (r.message.empty() ? "" : " " + r.message) << "\n";
            if (r.status == BuildStatus::failed)
                code = std::max(code, r.message == "budget-exceeded" ? kBudget : kNo);
        }
    });
    auto* check = catalog->add_subcommand("check", "Re-verify every stored entry");
    check->add_option("--dir", ca_dir, "catalog directory");
    check->callback([&] {
        auto entries = catalog_load(default_targets(), ca_dir);
        for (const auto& e : entries)
            std::cout << "ok " << e.target.label() << " " << e.target.file_name() << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const CatalogError& e) {
        std::cerr << "catalog error: " << e.what() << "\n";
        return kNo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNo;
    }
    return code;
}
