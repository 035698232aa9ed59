#include <stargrid/render.hpp>

#include <sstream>
#include <stdexcept>

namespace stargrid {

namespace {

constexpr int kStep = 60;
constexpr int kMargin = 50;

const char* stroke(Color c)
{
    if (c == kUnset)
        return "lightgray";
    if (c < 0 || c >= static_cast<Color>(kPalette.size()))
        throw std::invalid_argument("color " + std::to_string(c) + " has no palette entry (0..6)");
    return kPalette[static_cast<std::size_t>(c)];
}

int x_of(int i) { return kMargin + i * kStep; }
int y_of(int j) { return kMargin + j * kStep; }

}  // namespace

std::string render_svg(const EdgeColoring& c, const std::vector<WindowChain>& windows)
{
    const GridGraph& g = c.graph();
    const int nl = g.left().size(), nr = g.right().size();
    const int width = 2 * kMargin + (nl - 1) * kStep;
    const int height = 2 * kMargin + (nr - 1) * kStep;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    out << "<title>" << g.name() << " k=" << c.k() << "</title>\n";

    for (const auto& chain : windows) {
        int cols = nl, rows = nr;
        for (const Window& w : chain)
            (w.side == Side::left ? cols : rows) = w.length;
        out << "<rect class=\"window\" x=\"" << x_of(0) - kStep / 3 << "\" y=\"" << y_of(0) - kStep / 3
            << "\" width=\"" << (cols - 1) * kStep + 2 * kStep / 3 << "\" height=\"" << (rows - 1) * kStep + 2 * kStep / 3
            << "\" fill=\"black\" fill-opacity=\"0.12\"/>\n";
    }

    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const GridEdge& ge = g.edge(e);
        const int x1 = x_of(ge.u.i), y1 = y_of(ge.u.j), x2 = x_of(ge.v.i), y2 = y_of(ge.v.j);
        const bool wrap = ge.side == Side::left ? std::abs(ge.u.i - ge.v.i) > 1 : std::abs(ge.u.j - ge.v.j) > 1;
        out << "<";
        if (wrap) {
            // Bow the closing edge outward so it clears the fiber.
            const int bow = kStep / 2;
            const int cx = ge.side == Side::left ? (x1 + x2) / 2 : x1 - bow * (nr > 2 ? 2 : 1);
            const int cy = ge.side == Side::left ? y1 - bow * (nl > 2 ? 2 : 1) : (y1 + y2) / 2;
            out << "path class=\"edge\" d=\"M " << x1 << ' ' << y1 << " Q " << cx << ' ' << cy << ' ' << x2 << ' ' << y2
                << "\" fill=\"none\"";
        } else {
            out << "line class=\"edge\" x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2 << '"';
        }
        out << " stroke=\"" << stroke(c[e]) << "\" stroke-width=\"4\"><title>e" << e << " color " << int(c[e])
            << "</title></" << (wrap ? "path" : "line") << ">\n";
    }

    for (int j = 0; j < nr; ++j)
        for (int i = 0; i < nl; ++i) {
            bool shaded = false;
            for (const auto& chain : windows) {
                bool in = true;
                for (const Window& w : chain)
                    in = in && (w.side == Side::left ? i : j) < w.length;
                shaded = shaded || in;
            }
            out << "<circle class=\"vertex\" cx=\"" << x_of(i) << "\" cy=\"" << y_of(j) << "\" r=\"6\" fill=\""
                << (shaded ? "dimgray" : "white") << "\" stroke=\"black\"/>\n";
        }
    out << "</svg>\n";
    return out.str();
}

std::string render_dot(const EdgeColoring& c)
{
    const GridGraph& g = c.graph();
    std::ostringstream out;
    out << "graph \"" << g.name() << "\" {\n";
    out << "  node [shape=circle, width=0.2, label=\"\"];\n";
    for (int j = 0; j < g.right().size(); ++j)
        for (int i = 0; i < g.left().size(); ++i)
            out << "  v" << i << '_' << j << " [pos=\"" << i << ',' << -j << "!\"];\n";
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const GridEdge& ge = g.edge(e);
        out << "  v" << ge.u.i << '_' << ge.u.j << " -- v" << ge.v.i << '_' << ge.v.j << " [color=" << stroke(c[e])
            << ", label=\"" << int(c[e]) << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace stargrid
