#include <stargrid/format.hpp>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace stargrid {

using Json = nlohmann::ordered_json;

namespace {

int line_of(const std::string& text, std::size_t byte)
{
    byte = std::min(byte, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

[[noreturn]] void field_error(const std::string& field, const std::string& what)
{
    throw FormatError("field '" + field + "': " + what);
}

const Json& member(const Json& obj, const char* key)
{
    auto it = obj.find(key);
    if (it == obj.end())
        field_error(key, "missing");
    return *it;
}

int int_field(const Json& v, const std::string& field)
{
    if (!v.is_number_integer())
        field_error(field, "expected an integer");
    return v.get<int>();
}

FactorGraph factor_from(char kind, int size, const std::string& field)
{
    try {
        if (kind == 'c')
            return FactorGraph::cycle(size);
        if (kind == 'p')
            return FactorGraph::path(size);
    } catch (const std::invalid_argument& e) {
        field_error(field, e.what());
    }
    field_error("family", "unknown factor kind");
}

}  // namespace

std::string family_code(const GridGraph& g)
{
    std::string s;
    s += g.left().is_cycle() ? 'c' : 'p';
    s += g.right().is_cycle() ? 'c' : 'p';
    return s;
}

std::string coloring_digest(const EdgeColoring& c)
{
    const GridGraph& g = c.graph();
    std::string text = family_code(g) + ":" + std::to_string(g.left().size()) + "x" + std::to_string(g.right().size()) +
                       ":k" + std::to_string(c.k()) + ":";
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (e)
            text += ',';
        text += std::to_string(static_cast<int>(c[e]));
    }
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string serialize(const ColoringFile& f)
{
    const EdgeColoring& c = f.coloring;
    const GridGraph& g = c.graph();
    Json j;
    j["schema"] = ColoringFile::kSchema;
    j["family"] = family_code(g);
    j["m"] = g.left().size();
    j["n"] = g.right().size();
    j["k"] = c.k();
    Json edges = Json::array();
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const GridEdge& ge = g.edge(e);
        edges.push_back(Json::array({Json::array({ge.u.i, ge.u.j}), Json::array({ge.v.i, ge.v.j}), static_cast<int>(c[e])}));
    }
    j["edges"] = std::move(edges);
    Json windows = Json::array();
    for (const auto& w : f.windows)
        windows.push_back(to_string(w));
    j["windows"] = std::move(windows);
    j["digest"] = coloring_digest(c);
    return j.dump() + "\n";
}

ColoringFile deserialize(const std::string& text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw FormatError("line " + std::to_string(line_of(text, e.byte == 0 ? 0 : e.byte - 1)) + ": " + e.what());
    }
    if (!j.is_object())
        throw FormatError("line 1: expected a JSON object");

    const int schema = int_field(member(j, "schema"), "schema");
    if (schema != ColoringFile::kSchema)
        field_error("schema", "unsupported version " + std::to_string(schema));
    const Json& fam = member(j, "family");
    if (!fam.is_string() || fam.get<std::string>().size() != 2)
        field_error("family", "expected a two-letter string such as \"cc\"");
    const std::string family = fam.get<std::string>();
    const int m = int_field(member(j, "m"), "m");
    const int n = int_field(member(j, "n"), "n");
    const int k = int_field(member(j, "k"), "k");
    if (k < 1 || k > kMaxColors)
        field_error("k", "must be in 1.." + std::to_string(kMaxColors));
    GraphPtr g = make_grid(factor_from(family[0], m, "m"), factor_from(family[1], n, "n"));

    const Json& edges = member(j, "edges");
    if (!edges.is_array())
        field_error("edges", "expected an array");
    if (static_cast<int>(edges.size()) != g->edge_count())
        field_error("edges", "has " + std::to_string(edges.size()) + " entries, " + g->name() + " has " +
                                 std::to_string(g->edge_count()) + " edges");
    std::vector<Color> colors(static_cast<std::size_t>(g->edge_count()));
    for (EdgeId e = 0; e < g->edge_count(); ++e) {
        const std::string where = "edges[" + std::to_string(e) + "]";
        const Json& row = edges[static_cast<std::size_t>(e)];
        if (!row.is_array() || row.size() != 3)
            field_error(where, "expected [[i,j],[i,j],color]");
        auto vertex = [&](const Json& v, int slot) {
            const std::string f = where + "[" + std::to_string(slot) + "]";
            if (!v.is_array() || v.size() != 2)
                field_error(f, "expected [i,j]");
            return Vertex{int_field(v[0], f + "[0]"), int_field(v[1], f + "[1]")};
        };
        const Vertex u = vertex(row[0], 0), v = vertex(row[1], 1);
        const GridEdge& ge = g->edge(e);
        if (!(u == ge.u && v == ge.v))
            field_error(where, "endpoints are not edge " + std::to_string(e) + " in canonical order");
        const int c = int_field(row[2], where + "[2]");
        if (c < kUnset || c >= k)
            field_error(where + "[2]", "color " + std::to_string(c) + " outside -1.." + std::to_string(k - 1));
        colors[static_cast<std::size_t>(e)] = static_cast<Color>(c);
    }

    ColoringFile out{EdgeColoring(g, k, std::move(colors)), {}};
    if (auto it = j.find("windows"); it != j.end()) {
        if (!it->is_array())
            field_error("windows", "expected an array of strings");
        for (std::size_t w = 0; w < it->size(); ++w) {
            const std::string where = "windows[" + std::to_string(w) + "]";
            if (!(*it)[w].is_string())
                field_error(where, "expected a string such as \"right:3\"");
            try {
                WindowChain chain = parse_window_chain((*it)[w].get<std::string>());
                make_window(*g, chain);
                out.windows.push_back(std::move(chain));
            } catch (const std::invalid_argument& e) {
                field_error(where, e.what());
            }
        }
    }
    const Json& digest = member(j, "digest");
    if (!digest.is_string())
        field_error("digest", "expected a string");
    if (digest.get<std::string>() != coloring_digest(out.coloring))
        field_error("digest", "does not match the edge colors (expected " + coloring_digest(out.coloring) + ")");
    for (const auto& [key, value] : j.items())
        if (key != "schema" && key != "family" && key != "m" && key != "n" && key != "k" && key != "edges" &&
            key != "windows" && key != "digest")
            field_error(key, "unknown field");
    return out;
}

ColoringFile read_coloring_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FormatError(path + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return deserialize(ss.str());
    } catch (const FormatError& e) {
        throw FormatError(path + ": " + e.what());
    }
}

void write_coloring_file(const std::string& path, const ColoringFile& f)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error(path + ": cannot write");
    out << serialize(f);
    if (!out)
        throw std::runtime_error(path + ": write failed");
}

}  // namespace stargrid
