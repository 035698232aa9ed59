#include <stargrid/certify.hpp>
#include <stargrid/lift.hpp>

#include <algorithm>
#include <map>

namespace stargrid {

namespace {

std::string factor_name(const GridGraph& g)
{
    return g.name();
}

/// Renumbers colors to 0..used-1 in order of first use, keeping the budget.
EdgeColoring with_budget(const EdgeColoring& c, int colors)
{
    std::map<Color, Color> relabel;
    std::vector<Color> out(c.colors().begin(), c.colors().end());
    for (auto& x : out) {
        auto [it, fresh] = relabel.try_emplace(x, static_cast<Color>(relabel.size()));
        x = it->second;
    }
    return {c.graph_ptr(), colors, std::move(out)};
}

}  // namespace

Certifier::Certifier(std::vector<CatalogEntry> entries)
{
    for (auto& e : entries)
        bases_.push_back({e.coloring, {"catalog " + e.target.file_name()}});
    // Transposed cycle products act as bases with the factors swapped; for
    // squares this moves the windows to the other side.
    const std::size_t direct = bases_.size();
    for (std::size_t i = 0; i < direct; ++i) {
        const GridGraph& g = bases_[i].coloring.graph();
        if (g.left().is_cycle() && g.right().is_cycle() && (g.left() != g.right() || !entries[i].target.windows.empty())) {
            Item t{transpose(bases_[i].coloring), bases_[i].trace};
            t.trace.push_back("transpose -> " + factor_name(t.coloring.graph()));
            bases_.push_back(std::move(t));
        }
    }
}

bool Certifier::derive(const Item& item, Side side, int target, int depth, const Visitor& visit) const
{
    const EdgeColoring& c = item.coloring;
    const FactorGraph& f = c.graph().factor(side);
    if (!f.is_cycle())
        return false;
    const int len = f.size();
    auto step = [&](EdgeColoring next, std::string what) {
        Item out{std::move(next), item.trace};
        out.trace.push_back(std::move(what) + " -> " + factor_name(out.coloring.graph()));
        return out;
    };

    if (len == target && visit(Item(item)))
        return true;
    if (target > len && target % len == 0)
        if (visit(step(tile(c, target / len, side),
                       "tile(" + std::string(to_string(side)) + ", " + std::to_string(target / len) + ")")))
            return true;

    for (int w = 3; w < len; ++w) {
        // A single combine reaches target directly; otherwise cut the window
        // out and derive again from it.
        auto pair = frobenius(w, len, target);
        const bool direct = pair && pair->alpha > 0;
        const bool again = depth > 1 && w != target;
        if (!direct && !again)
            continue;
        if (check_inclusion(c, w, side))
            continue;
        if (direct) {
            const std::string what = "combine(" + std::string(to_string(side)) + ", m=" + std::to_string(w) +
                                     ", p=" + std::to_string(pair->alpha) + ", q=" + std::to_string(pair->beta) + ")";
            if (visit(step(combine(c, w, pair->alpha, pair->beta, side), what)))
                return true;
        }
        if (again) {
            Item cut = step(combine(c, w, 1, 0, side), "window(" + std::string(to_string(side)) + ", " +
                                                             std::to_string(w) + ")");
            if (derive(cut, side, target, depth - 1, visit))
                return true;
        }
    }
    return false;
}

bool Certifier::certify_cycles(int m, int n, int colors, const Visitor& visit) const
{
    for (const Item& b : bases_) {
        const GridGraph& g = b.coloring.graph();
        if (!g.left().is_cycle() || !g.right().is_cycle() || b.coloring.used_colors() > colors)
            continue;
        // Left side first, then right.
        bool done = derive(b, Side::left, m, 2, [&](Item&& l) { return derive(l, Side::right, n, 2, visit); });
        if (done)
            return true;
        done = derive(b, Side::right, n, 2, [&](Item&& r) { return derive(r, Side::left, m, 2, visit); });
        if (done)
            return true;
    }
    return false;
}

bool Certifier::certify_cylinder(int m, int n, int colors, const Visitor& visit) const
{
    auto restrict_visit = [&](Item&& it) {
        const GridGraph& g = it.coloring.graph();
        if (g.right().size() == n && !g.right().is_cycle())
            return visit(std::move(it));
        Item out{restrict_to_path(it.coloring, n, Side::right), it.trace};
        out.trace.push_back("restrict(right, P" + std::to_string(n) + ") -> " + factor_name(out.coloring.graph()));
        return visit(std::move(out));
    };
    for (const Item& b : bases_) {
        const GridGraph& g = b.coloring.graph();
        if (g.right().is_cycle() || g.right().size() < n || !g.left().is_cycle() || b.coloring.used_colors() > colors)
            continue;
        if (derive(b, Side::left, m, 2, restrict_visit))
            return true;
    }
    // Cut a cycle product of the same or longer length down to the path.
    for (int len = std::max(n, 3); len <= n + 12; ++len)
        if (certify_cycles(m, len, colors, restrict_visit))
            return true;
    return false;
}

Certificate Certifier::certify(Family family, int m, int n, int colors) const
{
    if (family == Family::PP)
        throw std::invalid_argument("certify covers the cc and cp families only");
    chi_lookup(family, m, n);  // size checks
    std::optional<Item> found;
    auto accept = [&](Item&& it) {
        if (it.coloring.used_colors() > colors)
            return false;
        if (auto v = verify_star(it.coloring))
            throw std::logic_error("certify built an invalid coloring: " + describe(it.coloring.graph(), *v));
        found = std::move(it);
        return true;
    };
    const bool ok = family == Family::CC ? certify_cycles(m, n, colors, accept) : certify_cylinder(m, n, colors, accept);
    if (!ok)
        throw std::runtime_error(std::string("no recipe for ") + to_string(family) + " " + std::to_string(m) + "x" +
                                 std::to_string(n) + " with " + std::to_string(colors) + " colors");
    return {with_budget(found->coloring, colors), std::move(found->trace)};
}

Certificate Certifier::certify(Family family, int m, int n) const
{
    return certify(family, m, n, chi_lookup(family, m, n).hi);
}

}  // namespace stargrid
