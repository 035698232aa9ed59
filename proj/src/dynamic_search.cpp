#include "dynamic_search.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <bit>
#include <functional>

namespace stargrid::detail {

namespace {

class DynamicEngine {
public:
    DynamicEngine(const GridGraph& g, const SearchConfig& cfg, bool ordered_new,
                  const std::function<bool(std::uint64_t)>& over_budget)
        : k_(cfg.colors), ne_(g.edge_count()), cfg_(&cfg), ordered_new_(ordered_new), over_budget_(&over_budget),
          colors_(static_cast<std::size_t>(ne_), kUnset), nbrs_(static_cast<std::size_t>(ne_)),
          through_(static_cast<std::size_t>(ne_)), ban_(static_cast<std::size_t>(ne_) * kMaxColors, 0),
          allowed_(static_cast<std::size_t>(ne_), (1u << cfg.colors) - 1), colored_nbrs_(static_cast<std::size_t>(ne_), 0)
    {
        auto add_quads = [&](EdgeId e, std::span<const QuadEntry> entries) {
            for (const QuadEntry& q : entries)
                if (e < q.opposite && e < q.first && e < q.second)
                    quads_.push_back({e, q.first, q.opposite, q.second});
        };
        for (EdgeId e = 0; e < ne_; ++e) {
            auto& list = nbrs_[e];
            list.assign(g.adjacent(e).begin(), g.adjacent(e).end());
            add_quads(e, g.quad_entries(e));
            for (const auto& c : cfg.constraints) {
                if (auto r = dynamic_cast<const ReflectionConstraint*>(c.get())) {
                    if (image_.empty())
                        image_.assign(static_cast<std::size_t>(ne_), -1);
                    images_.push_back(r);
                } else if (auto t = dynamic_cast<const TableConstraint*>(c.get())) {
                    list.insert(list.end(), t->pairs(e).begin(), t->pairs(e).end());
                    add_quads(e, t->quads(e));
                } else {
                    opaque_.push_back(c.get());
                }
            }
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
        }
        if (!images_.empty()) {
            std::sort(images_.begin(), images_.end());
            images_.erase(std::unique(images_.begin(), images_.end()), images_.end());
            if (images_.size() > 1)
                opaque_.insert(opaque_.end(), images_.begin() + 1, images_.end());
            for (EdgeId e = 0; e < ne_; ++e)
                image_[e] = images_.front()->image(e);
            partner_.fill(kUnset);
            paired_by_.assign(static_cast<std::size_t>(ne_), false);
        }
        std::sort(opaque_.begin(), opaque_.end());
        opaque_.erase(std::unique(opaque_.begin(), opaque_.end()), opaque_.end());
        std::sort(quads_.begin(), quads_.end());
        quads_.erase(std::unique(quads_.begin(), quads_.end()), quads_.end());
        for (std::size_t qi = 0; qi < quads_.size(); ++qi)
            for (EdgeId x : quads_[qi])
                through_[x].push_back(static_cast<std::int32_t>(qi));
    }

    bool fix(EdgeId e, Color c)
    {
        if (!(allowed_[e] & (1u << c)))
            return false;
        return assign(e, c);
    }

    void run(DynamicResult& out)
    {
        out_ = &out;
        for (EdgeId e = 0; e < ne_; ++e)
            if (colors_[e] == kUnset)
                ++free_;
        try {
            recurse();
        } catch (const Stop&) {
        }
    }

private:
    struct Stop {};

    void ban(EdgeId f, Color c)
    {
        if (ban_[f * kMaxColors + c]++ == 0)
            allowed_[f] &= ~(1u << c);
        trail_.push_back({f, c});
        if (colors_[f] == kUnset && allowed_[f] == 0)
            wiped_ = true;
    }

    /// Applies e=c and its consequences; false on a wipe-out (state still
    /// needs undo to the saved trail mark).
    bool assign(EdgeId e, Color c)
    {
        colors_[e] = c;
        if (use_count_[c]++ == 0)
            used_mask_ |= 1u << c;
        wiped_ = false;
        for (EdgeId f : nbrs_[e]) {
            ++colored_nbrs_[f];
            if (colors_[f] == kUnset)
                ban(f, c);
        }
        for (auto qi : through_[e]) {
            const auto& x = quads_[static_cast<std::size_t>(qi)];
            int free_at = -1;
            for (int p = 0; p < 4; ++p)
                if (colors_[x[p]] == kUnset) {
                    if (free_at >= 0) {
                        free_at = -2;
                        break;
                    }
                    free_at = p;
                }
            if (free_at < 0)
                continue;
            const Color a = colors_[x[(free_at + 1) % 4]];
            if (a == colors_[x[(free_at + 3) % 4]])
                ban(x[free_at], colors_[x[(free_at + 2) % 4]]);
        }
        if (!image_.empty() && !wiped_)
            reflect(e, c);
        return !wiped_;
    }

    void ban_all_but(EdgeId f, Color keep)
    {
        for (Color x = 0; x < k_; ++x)
            if (x != keep)
                ban(f, x);
    }

    void reflect(EdgeId e, Color c)
    {
        const EdgeId f = image_[e];
        const Color d = colors_[f];
        if (d == kUnset) {
            if (partner_[c] != kUnset)
                ban_all_but(f, partner_[c]);
            else
                for (Color x = 0; x < k_; ++x)
                    if (partner_[x] != kUnset)
                        ban(f, x);
            return;
        }
        if (partner_[c] != kUnset) {
            if (partner_[c] != d)
                wiped_ = true;
            return;
        }
        if (partner_[d] != kUnset) {
            wiped_ = true;
            return;
        }
        partner_[c] = d;
        partner_[d] = c;
        paired_by_[e] = true;
        for (EdgeId x = 0; x < ne_; ++x) {
            const Color cx = colors_[x];
            const EdgeId y = image_[x];
            if (cx == kUnset || colors_[y] != kUnset)
                continue;
            if (cx == c || cx == d) {
                ban_all_but(y, partner_[cx]);
            } else if (partner_[cx] == kUnset) {
                ban(y, c);
                if (d != c)
                    ban(y, d);
            }
        }
    }

    void undo(EdgeId e, std::size_t mark)
    {
        while (trail_.size() > mark) {
            auto [f, c] = trail_.back();
            trail_.pop_back();
            if (--ban_[f * kMaxColors + c] == 0)
                allowed_[f] |= 1u << c;
        }
        const Color c = colors_[e];
        if (!paired_by_.empty() && paired_by_[e]) {
            paired_by_[e] = false;
            partner_[partner_[c]] = kUnset;
            partner_[c] = kUnset;
        }
        colors_[e] = kUnset;
        if (--use_count_[c] == 0)
            used_mask_ &= ~(1u << c);
        for (EdgeId f : nbrs_[e])
            --colored_nbrs_[f];
    }

    EdgeId pick() const
    {
        EdgeId best = -1;
        int best_size = INT32_MAX;
        for (EdgeId e = 0; e < ne_; ++e) {
            if (colors_[e] != kUnset)
                continue;
            const int size = std::popcount(allowed_[e]);
            if (size < best_size || (size == best_size && colored_nbrs_[e] > colored_nbrs_[best])) {
                best = e;
                best_size = size;
            }
        }
        return best;
    }

    bool opaque_ok(EdgeId e)
    {
        for (const Constraint* c : opaque_)
            if (!c->admits(colors_, e))
                return false;
        return true;
    }

    void recurse()
    {
        if (free_ == 0) {
            ++out_->solutions;
            if (cfg_->mode != SearchMode::count_all)
                out_->colorings.push_back(colors_);
            if (cfg_->mode == SearchMode::first)
                throw Stop{};
            return;
        }
        const EdgeId e = pick();
        std::uint32_t options = allowed_[e];
        if (ordered_new_) {
            const std::uint32_t fresh = ~used_mask_ & ((1u << k_) - 1);
            if (fresh)
                options &= used_mask_ | (fresh & -fresh);
        }
        for (; options; options &= options - 1) {
            const Color c = static_cast<Color>(std::countr_zero(options));
            const std::size_t mark = trail_.size();
            ++out_->nodes;
            if (++since_poll_ >= 4096) {
                if ((*over_budget_)(since_poll_)) {
                    out_->aborted = true;
                    throw Stop{};
                }
                since_poll_ = 0;
            }
            const bool ok = assign(e, c) && opaque_ok(e);
            if (ok) {
                --free_;
                recurse();
                ++free_;
            }
            undo(e, mark);
        }
    }

    int k_;
    int ne_;
    const SearchConfig* cfg_;
    bool ordered_new_;
    const std::function<bool(std::uint64_t)>* over_budget_;
    std::vector<Color> colors_;
    std::vector<std::vector<EdgeId>> nbrs_;
    std::vector<std::array<EdgeId, 4>> quads_;
    std::vector<std::vector<std::int32_t>> through_;
    std::vector<const Constraint*> opaque_;
    std::vector<const ReflectionConstraint*> images_;
    std::vector<EdgeId> image_;
    std::array<Color, kMaxColors> partner_{};
    std::vector<bool> paired_by_;
    std::vector<std::uint16_t> ban_;
    std::vector<std::uint32_t> allowed_;
    std::vector<int> colored_nbrs_;
    std::vector<std::pair<EdgeId, Color>> trail_;
    std::array<int, kMaxColors> use_count_{};
    std::uint32_t used_mask_ = 0;
    bool wiped_ = false;
    int free_ = 0;
    std::uint64_t since_poll_ = 0;
    DynamicResult* out_ = nullptr;
};

}  // namespace

DynamicResult dynamic_search(const GridGraph& g, const SearchConfig& cfg, const EdgeColoring& base, bool ordered_new,
                             const std::function<bool(std::uint64_t)>& over_budget)
{
    DynamicResult out;
    DynamicEngine eng(g, cfg, ordered_new, over_budget);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (base[e] != kUnset && !eng.fix(e, base[e]))
            return out;  // the fixed edges already leave some edge without a color
    eng.run(out);
    return out;
}

}  // namespace stargrid::detail
