#include <stargrid/atlas.hpp>

#include <algorithm>
#include <array>
#include <stdexcept>

namespace stargrid {

namespace {

ChiResult exact(int v, std::string rule)
{
    return {v, v, std::move(rule)};
}

ChiResult open(std::string rule)
{
    return {6, 7, std::move(rule)};
}

constexpr int kOpen = 0;

// Rows m = 2..4 and 5+, columns n = 2..4 and 5+.
constexpr std::array<std::array<int, 4>, 4> kPaths{{
    {3, 4, 4, 4},
    {4, 5, 5, 6},
    {4, 5, 6, 6},
    {4, 6, 6, 6},
}};

// Rows and columns 3..12.
constexpr std::array<std::array<int, 10>, 10> kCycles{{
    {6, 7, 7, 6, 7, 7, 6, 7, 7, 6},
    {7, 6, 7, 6, 7, 6, 7, 6, 7, 6},
    {7, 7, 7, 7, 7, 7, 7, 7, 7, 7},
    {6, 6, 7, 6, 7, 6, 6, 7, 7, 6},
    {7, 7, 7, 7, 7, 7, 7, 7, 7, 7},
    {7, 6, 7, 6, 7, 6, 7, 6, kOpen, 6},
    {6, 7, 7, 6, 7, 7, 6, kOpen, kOpen, 6},
    {7, 6, 7, 7, 7, 6, kOpen, kOpen, kOpen, 6},
    {7, 7, 7, 7, 7, kOpen, kOpen, kOpen, kOpen, kOpen},
    {6, 6, 7, 6, 7, 6, 6, 6, kOpen, 6},
}};

// Rows m = 3..18, then m >= 19 with m = 0 mod 4, with m mod 12 in
// {2,3,6,9,10}, and with m mod 12 in {1,5,7,11}; columns n = 2..8 and 9+.
constexpr std::array<std::array<int, 8>, 19> kCylinders{{
    {6, 6, 6, 6, 6, 6, 6, 6},
    {4, 6, 6, 6, 6, 6, 6, 6},
    {5, 6, 6, 6, 6, 7, 7, 7},
    {5, 6, 6, 6, 6, 6, 6, 6},
    {5, 6, 6, 6, 6, 7, 7, 7},
    {4, 6, 6, 6, 6, 6, 6, 6},
    {5, 6, 6, 6, 6, 6, 6, 6},
    {5, 6, 6, 6, 6, 6, 6, 6},
    {5, 6, 6, 6, 6, 6, 6, kOpen},
    {4, 6, 6, 6, 6, 6, 6, 6},
    {5, 6, 6, 6, 6, kOpen, kOpen, kOpen},
    {5, 6, 6, 6, 6, 6, 6, 6},
    {5, 6, 6, 6, 6, 6, 6, 6},
    {4, 6, 6, 6, 6, 6, 6, 6},
    {5, 6, 6, 6, 6, 6, 6, kOpen},
    {5, 6, 6, 6, 6, 6, 6, 6},
    {4, 6, 6, 6, 6, 6, 6, 6},
    {5, 6, 6, 6, 6, 6, 6, 6},
    {5, 6, 6, 6, 6, kOpen, kOpen, kOpen},
}};

void check_sizes(Family f, int m, int n)
{
    const int min_m = f == Family::PP ? 2 : 3;
    const int min_n = f == Family::CC ? 3 : 2;
    if (m < min_m || n < min_n)
        throw std::invalid_argument(std::string("sizes (") + std::to_string(m) + ", " + std::to_string(n) +
                                    ") are out of range for family " + to_string(f));
}

ChiResult paths_rule(int m, int n)
{
    const int a = std::min(m, n), b = std::max(m, n);
    if (a == 2 && b == 2)
        return exact(3, "thm-PmPn");
    if (a == 2)
        return exact(4, "thm-PmPn");
    if (a == 3 && b <= 4)
        return exact(5, "thm-PmPn");
    return exact(6, "thm-PmPn");
}

ChiResult cylinders_rule(int m, int n)
{
    if (n == 2) {
        if (m == 3)
            return exact(6, "thm-prisms");
        return exact(m % 4 == 0 ? 4 : 5, "thm-prisms");
    }
    if (m % 2 == 0)
        return exact(6, "thm-C2kPn");
    if (m % 3 == 0)
        return exact(6, "thm-C3kPn");
    if (m == 5)
        return exact(n <= 6 ? 6 : 7, "thm-C5Pn");
    if (m == 7)
        return exact(n <= 6 ? 6 : 7, "thm-C7Pn");
    if (n <= 6)
        return exact(6, "thm-CmP3-6");
    if ((m == 11 || m == 17) && n <= 8)
        return exact(6, "thm-C11P8-C17P8");
    return open("thm-CmPn-upper");
}

ChiResult cycles_rule(int m, int n)
{
    auto either = [&](auto pred) { return pred(m, n) || pred(n, m); };
    if (m % 3 == 0 && n % 3 == 0)
        return exact(6, "thm-C3kC3l");
    if (either([](int a, int b) { return a % 4 == 0 && b % 2 == 0; }))
        return exact(6, "thm-C4kC2l");
    if (m == 6 || n == 6) {
        const int o = m == 6 ? n : m;
        return exact(o % 3 == 0 || o % 4 == 0 ? 6 : 7, "thm-C6Cn");
    }
    if (m == 3 || n == 3) {
        const int o = m == 3 ? n : m;
        return exact(o % 3 == 0 ? 6 : 7, "thm-C3Cn");
    }
    if (either([](int a, int b) { return a == 4 && (b == 5 || b == 7 || b == 9 || b == 11); }))
        return exact(7, "thm-C4C5-11");
    if (m == 5 || n == 5)
        return exact(7, "thm-C5Cn");
    if (m == 7 || n == 7)
        return exact(7, "thm-C7Cn");
    if (either([](int a, int b) { return a == 8 && b == 9; }))
        return exact(7, "thm-C8C9");
    return open("thm-CmCn-upper");
}

int cylinder_row(int m)
{
    if (m <= 18)
        return m - 3;
    if (m % 4 == 0)
        return 16;
    switch (m % 12) {
    case 2:
    case 3:
    case 6:
    case 9:
    case 10:
        return 17;
    default:
        return 18;
    }
}

}  // namespace

const char* to_string(Family f) noexcept
{
    switch (f) {
    case Family::PP:
        return "pp";
    case Family::CP:
        return "cp";
    case Family::CC:
        return "cc";
    }
    return "?";
}

Family parse_family(const std::string& text)
{
    std::string t = text;
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
    if (t == "pp")
        return Family::PP;
    if (t == "cp")
        return Family::CP;
    if (t == "cc")
        return Family::CC;
    throw std::invalid_argument("unknown family '" + text + "' (expected pp, cp or cc)");
}

std::string to_string(const ChiResult& r)
{
    if (r.exact())
        return "exact " + std::to_string(r.lo) + " (" + r.provenance + ")";
    return "range " + std::to_string(r.lo) + ".." + std::to_string(r.hi) + " (" + r.provenance + ")";
}

ChiResult theorem_rule(Family family, int m, int n)
{
    check_sizes(family, m, n);
    switch (family) {
    case Family::PP:
        return paths_rule(m, n);
    case Family::CP:
        return cylinders_rule(m, n);
    case Family::CC:
        break;
    }
    return cycles_rule(m, n);
}

std::optional<ChiResult> golden_cell(Family family, int m, int n)
{
    check_sizes(family, m, n);
    int v = kOpen;
    std::string table;
    switch (family) {
    case Family::PP:
        v = kPaths[std::min(m, 5) - 2][std::min(n, 5) - 2];
        table = "table1";
        break;
    case Family::CP:
        v = kCylinders[cylinder_row(m)][std::min(n, 9) - 2];
        table = "table3";
        break;
    case Family::CC:
        if (m > 12 || n > 12)
            return std::nullopt;
        v = kCycles[m - 3][n - 3];
        table = "table2";
        break;
    }
    if (v == kOpen)
        return open(table + "-open");
    return exact(v, table);
}

ChiResult chi_lookup(Family family, int m, int n)
{
    ChiResult rule = theorem_rule(family, m, n);
    auto cell = golden_cell(family, m, n);
    if (!cell)
        return rule;
    if (cell->exact() && rule.lo == cell->lo && rule.hi == cell->hi)
        return rule;
    return *cell;
}

}  // namespace stargrid
