#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stargrid/atlas.hpp>
#include <stargrid/catalog.hpp>
#include <stargrid/certify.hpp>
#include <stargrid/format.hpp>
#include <stargrid/lift.hpp>
#include <stargrid/render.hpp>
#include <stargrid/search.hpp>
#include <stargrid/verify.hpp>

#include <memory>

namespace py = pybind11;
using namespace stargrid;

namespace {

GraphPtr grid_of(const std::string& family, int m, int n)
{
    switch (parse_family(family)) {
    case Family::PP: return make_grid(FactorGraph::path(m), FactorGraph::path(n));
    case Family::CP: return make_grid(FactorGraph::cycle(m), FactorGraph::path(n));
    case Family::CC: return make_grid(FactorGraph::cycle(m), FactorGraph::cycle(n));
    }
    throw std::invalid_argument("bad family");
}

std::vector<int> colors_of(const EdgeColoring& c) { return {c.colors().begin(), c.colors().end()}; }

EdgeColoring coloring_of(const GraphPtr& g, int k, const std::vector<int>& colors)
{
    return EdgeColoring(g, k, std::vector<Color>(colors.begin(), colors.end()));
}

Side side_of(const std::string& s)
{
    if (s == "left")
        return Side::left;
    if (s == "right")
        return Side::right;
    throw std::invalid_argument("side must be left or right: " + s);
}

py::object violation(const std::optional<Violation>& v)
{
    if (!v)
        return py::none();
    py::dict d;
    d["kind"] = to_string(v->kind);
    d["witness"] = v->witness;
    return d;
}

std::vector<WindowChain> chains_of(const std::vector<std::string>& texts)
{
    std::vector<WindowChain> out;
    for (const auto& t : texts)
        out.push_back(parse_window_chain(t));
    return out;
}

std::vector<std::string> texts_of(const std::vector<WindowChain>& chains)
{
    std::vector<std::string> out;
    for (const auto& c : chains)
        out.push_back(to_string(c));
    return out;
}

SearchLimits limits_of(std::uint64_t max_nodes, double max_seconds)
{
    return {max_nodes, std::chrono::milliseconds(static_cast<long long>(max_seconds * 1000))};
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Star edge colorings of grids, cylinders and tori";

    py::register_exception<BudgetExceeded>(m, "BudgetExceeded");
    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
    py::register_exception<CatalogError>(m, "CatalogError");

    py::class_<GridGraph, std::shared_ptr<GridGraph>>(m, "Grid")
        .def_property_readonly("name", &GridGraph::name)
        .def_property_readonly("vertex_count", &GridGraph::vertex_count)
        .def_property_readonly("edge_count", &GridGraph::edge_count)
        .def_property_readonly("max_degree", &GridGraph::max_degree)
        .def("edge", [](const GridGraph& g, EdgeId e) {
            const auto& x = g.edge(e);
            return py::make_tuple(py::make_tuple(x.u.i, x.u.j), py::make_tuple(x.v.i, x.v.j),
                                  to_string(x.side));
        })
        .def("__repr__", [](const GridGraph& g) { return "<Grid " + g.name() + ">"; });

    m.def("grid", [](const std::string& family, int m, int n) {
        return std::const_pointer_cast<GridGraph>(grid_of(family, m, n));
    }, py::arg("family"), py::arg("m"), py::arg("n"));

    py::class_<EdgeColoring>(m, "Coloring")
        .def(py::init([](std::shared_ptr<GridGraph> g, int k, std::vector<int> colors) {
                 if (colors.empty())
                     return EdgeColoring(g, k);
                 return coloring_of(g, k, colors);
             }),
             py::arg("grid"), py::arg("k"), py::arg("colors") = std::vector<int>{})
        .def_property_readonly("grid", [](const EdgeColoring& c) {
            return std::const_pointer_cast<GridGraph>(c.graph_ptr());
        })
        .def_property_readonly("k", &EdgeColoring::k)
        .def_property_readonly("colors", &colors_of)
        .def_property_readonly("used_colors", &EdgeColoring::used_colors)
        .def("__getitem__", [](const EdgeColoring& c, EdgeId e) {
            if (e < 0 || e >= c.graph().edge_count())
                throw py::index_error();
            return int(c[e]);
        })
        .def("__setitem__", [](EdgeColoring& c, EdgeId e, int x) { c.set(e, static_cast<Color>(x)); })
        .def("__len__", [](const EdgeColoring& c) { return c.graph().edge_count(); })
        .def("__eq__", [](const EdgeColoring& a, const EdgeColoring& b) { return a == b; })
        .def("__repr__", [](const EdgeColoring& c) {
            return "<Coloring " + c.graph().name() + " k=" + std::to_string(c.k()) + ">";
        });

    m.def("verify", [](const EdgeColoring& c) { return violation(verify_star(c)); });
    m.def("verify_partial", [](const EdgeColoring& c) { return violation(verify_partial(c)); });
    m.def("check_inclusion", [](const EdgeColoring& c, const std::string& chain) {
        return violation(check_inclusion(c, parse_window_chain(chain)));
    });

    m.def(
        "solve",
        [](const std::string& family, int m, int n, int k, const std::vector<std::string>& windows,
           std::uint64_t max_nodes, double max_seconds, int workers) -> py::object {
            auto g = grid_of(family, m, n);
            SearchConfig cfg;
            cfg.colors = k;
            for (const auto& w : chains_of(windows))
                cfg.constraints.push_back(std::make_shared<InclusionConstraint>(*g, w));
            if (windows.empty())
                cfg.symmetry = SymmetryBreaking::fix_max_degree_vertex;
            cfg.limits = limits_of(max_nodes, max_seconds);
            cfg.workers = workers;
            SearchOutcome out;
            {
                py::gil_scoped_release nogil;
                out = star_color(g, cfg);
            }
            if (out.status == SearchStatus::budget_exceeded)
                throw BudgetExceeded("search budget exceeded");
            if (out.colorings.empty())
                return py::none();
            return py::cast(out.colorings.front());
        },
        py::arg("family"), py::arg("m"), py::arg("n"), py::arg("k"), py::arg("windows") = std::vector<std::string>{},
        py::arg("max_nodes") = 0, py::arg("max_seconds") = 0.0, py::arg("workers") = 1);

    m.def(
        "chi_star",
        [](const std::string& family, int m, int n, int k_max, std::uint64_t max_nodes, int workers) {
            auto g = grid_of(family, m, n);
            py::gil_scoped_release nogil;
            return chi_star(g, k_max, ChiOptions{limits_of(max_nodes, 0), workers, true});
        },
        py::arg("family"), py::arg("m"), py::arg("n"), py::arg("k_max") = 8, py::arg("max_nodes") = 0,
        py::arg("workers") = 1);

    m.def(
        "enumerate_cycle",
        [](int n, int k, const std::string& group, std::uint64_t max_nodes) {
            auto g = make_grid(FactorGraph::cycle(n), FactorGraph::path(1));
            auto e = enumerate_colorings(g, k, parse_symmetry_group(group), limits_of(max_nodes, 0));
            std::vector<std::vector<int>> forms;
            for (const auto& f : e.forms)
                forms.emplace_back(f.begin(), f.end());
            return py::make_tuple(e.count, forms);
        },
        py::arg("n"), py::arg("k"), py::arg("group") = "full", py::arg("max_nodes") = 0);

    m.def(
        "count_colorings",
        [](const std::string& family, int m, int n, int k, const std::string& group) {
            return enumerate_colorings(grid_of(family, m, n), k, parse_symmetry_group(group)).count;
        },
        py::arg("family"), py::arg("m"), py::arg("n"), py::arg("k"), py::arg("group") = "color-perm");

    m.def(
        "extend",
        [](int m, const std::vector<int>& fiber, int k, int depth, std::uint64_t max_nodes) {
            std::vector<Color> f(fiber.begin(), fiber.end());
            ExtendResult r;
            {
                py::gil_scoped_release nogil;
                r = extendable(m, f, k, depth, limits_of(max_nodes, 0));
            }
            if (r.status == ExtendStatus::budget_exceeded)
                throw BudgetExceeded("search budget exceeded");
            return r.status == ExtendStatus::yes;
        },
        py::arg("m"), py::arg("fiber"), py::arg("k"), py::arg("depth"), py::arg("max_nodes") = 0);

    m.def("index", [](const std::string& family, int m, int n) {
        auto r = chi_lookup(parse_family(family), m, n);
        return py::make_tuple(r.lo, r.hi, r.provenance);
    });

    m.def("tile", [](const EdgeColoring& c, int k, const std::string& side) { return tile(c, k, side_of(side)); },
          py::arg("coloring"), py::arg("k"), py::arg("side") = "left");
    m.def("combine",
          [](const EdgeColoring& c, int m, int p, int q, const std::string& side) {
              return combine(c, m, p, q, side_of(side));
          },
          py::arg("coloring"), py::arg("m"), py::arg("p"), py::arg("q"), py::arg("side") = "left");
    m.def("transpose", &transpose);
    m.def("restrict_to_path",
          [](const EdgeColoring& c, int n, const std::string& side) { return restrict_to_path(c, n, side_of(side)); },
          py::arg("coloring"), py::arg("n"), py::arg("side") = "left");
    m.def("frobenius", [](int n, int m, int target) -> py::object {
        auto r = frobenius(n, m, target);
        if (!r)
            return py::none();
        return py::make_tuple(r->alpha, r->beta);
    });

    m.def("dumps", [](const EdgeColoring& c, const std::vector<std::string>& windows) {
        return serialize(ColoringFile{c, chains_of(windows)});
    }, py::arg("coloring"), py::arg("windows") = std::vector<std::string>{});
    m.def("loads", [](const std::string& text) {
        auto f = deserialize(text);
        return py::make_tuple(f.coloring, texts_of(f.windows));
    });
    m.def("digest", &coloring_digest);
    m.def("render_svg", [](const EdgeColoring& c, const std::vector<std::string>& windows) {
        return render_svg(c, chains_of(windows));
    }, py::arg("coloring"), py::arg("windows") = std::vector<std::string>{});
    m.def("render_dot", &render_dot);

    m.def("catalog_dir", &default_catalog_dir);
    m.def(
        "certify",
        [](const std::string& family, int m, int n, const std::string& dir) {
            Certifier cert(catalog_load(default_targets(), dir.empty() ? default_catalog_dir() : dir));
            auto c = cert.certify(parse_family(family), m, n);
            return py::make_tuple(c.coloring, c.trace);
        },
        py::arg("family"), py::arg("m"), py::arg("n"), py::arg("catalog_dir") = "");
}
