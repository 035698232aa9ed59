#include "cdcl.hpp"

#include <algorithm>

namespace stargrid::detail {

namespace {

std::uint64_t luby(std::uint64_t i)
{
    std::uint64_t k = 1;
    while ((std::uint64_t{1} << k) - 1 < i)
        ++k;
    if ((std::uint64_t{1} << k) - 1 == i)
        return std::uint64_t{1} << (k - 1);
    return luby(i - (std::uint64_t{1} << (k - 1)) + 1);
}

constexpr double kVarDecay = 0.95;
constexpr int kRestartBase = 100;
constexpr int kFirstReduce = 2000;
constexpr int kReduceStep = 300;

}  // namespace

int SatSolver::new_var()
{
    const int v = var_count();
    assign_.push_back(-1);
    phase_.push_back(0);
    level_.push_back(0);
    reason_.push_back(-1);
    seen_.push_back(0);
    activity_.push_back(0.0);
    heap_pos_.push_back(-1);
    watches_.emplace_back();
    watches_.emplace_back();
    level_stamp_.push_back(0);
    level_stamp_.push_back(0);
    heap_push(v);
    return v;
}

void SatSolver::add_clause(std::vector<Lit> lits)
{
    if (empty_clause_)
        return;
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    std::size_t out = 0;
    for (std::size_t i = 0; i < lits.size(); ++i) {
        if (i + 1 < lits.size() && (lits[i] ^ 1) == lits[i + 1])
            return;
        const int v = lit_value(lits[i]);
        if (v == 1)
            return;
        if (v < 0)
            lits[out++] = lits[i];
    }
    lits.resize(out);
    if (lits.empty()) {
        empty_clause_ = true;
    } else if (lits.size() == 1) {
        enqueue(lits[0], -1);
    } else {
        clauses_.push_back({std::move(lits), false, false, 0});
        attach(static_cast<int>(clauses_.size()) - 1);
    }
}

void SatSolver::attach(int cref)
{
    const auto& l = clauses_[static_cast<std::size_t>(cref)].lits;
    watches_[static_cast<std::size_t>(l[0])].push_back({cref, l[1]});
    watches_[static_cast<std::size_t>(l[1])].push_back({cref, l[0]});
}

void SatSolver::enqueue(Lit l, int reason)
{
    const auto v = static_cast<std::size_t>(l >> 1);
    assign_[v] = static_cast<std::int8_t>(!(l & 1));
    level_[v] = level();
    reason_[v] = reason;
    trail_.push_back(l);
}

int SatSolver::propagate()
{
    while (qhead_ < trail_.size()) {
        const Lit false_lit = trail_[qhead_++] ^ 1;
        auto& ws = watches_[static_cast<std::size_t>(false_lit)];
        std::size_t i = 0, j = 0;
        while (i < ws.size()) {
            const Watcher w = ws[i++];
            if (lit_value(w.blocker) == 1) {
                ws[j++] = w;
                continue;
            }
            auto& l = clauses_[static_cast<std::size_t>(w.cref)].lits;
            if (l[0] == false_lit)
                std::swap(l[0], l[1]);
            const Lit first = l[0];
            if (first != w.blocker && lit_value(first) == 1) {
                ws[j++] = {w.cref, first};
                continue;
            }
            bool moved = false;
            for (std::size_t k = 2; k < l.size(); ++k)
                if (lit_value(l[k]) != 0) {
                    std::swap(l[1], l[k]);
                    watches_[static_cast<std::size_t>(l[1])].push_back({w.cref, first});
                    moved = true;
                    break;
                }
            if (moved)
                continue;
            ws[j++] = {w.cref, first};
            if (lit_value(first) == 0) {
                while (i < ws.size())
                    ws[j++] = ws[i++];
                ws.resize(j);
                qhead_ = trail_.size();
                return w.cref;
            }
            enqueue(first, w.cref);
        }
        ws.resize(j);
    }
    return -1;
}

void SatSolver::bump(int var)
{
    auto& a = activity_[static_cast<std::size_t>(var)];
    if ((a += var_inc_) > 1e100) {
        for (auto& x : activity_)
            x *= 1e-100;
        var_inc_ *= 1e-100;
    }
    if (heap_pos_[static_cast<std::size_t>(var)] >= 0)
        heap_up(heap_pos_[static_cast<std::size_t>(var)]);
}

bool SatSolver::redundant(Lit l) const
{
    const int r = reason_[static_cast<std::size_t>(l >> 1)];
    if (r < 0)
        return false;
    for (Lit q : clauses_[static_cast<std::size_t>(r)].lits) {
        const auto v = static_cast<std::size_t>(q >> 1);
        if (v != static_cast<std::size_t>(l >> 1) && !seen_[v] && level_[v] > 0)
            return false;
    }
    return true;
}

void SatSolver::analyze(int confl, std::vector<Lit>& learnt, int& back_level)
{
    learnt.assign(1, 0);
    int open = 0;
    Lit p = -1;
    std::size_t idx = trail_.size();
    do {
        const auto& l = clauses_[static_cast<std::size_t>(confl)].lits;
        for (std::size_t j = p < 0 ? 0 : 1; j < l.size(); ++j) {
            const Lit q = l[j];
            const auto v = static_cast<std::size_t>(q >> 1);
            if (seen_[v] || level_[v] == 0)
                continue;
            seen_[v] = 1;
            bump(static_cast<int>(v));
            if (level_[v] >= level())
                ++open;
            else
                learnt.push_back(q);
        }
        while (!seen_[static_cast<std::size_t>(trail_[--idx] >> 1)]) {
        }
        p = trail_[idx];
        confl = reason_[static_cast<std::size_t>(p >> 1)];
        seen_[static_cast<std::size_t>(p >> 1)] = 0;
        --open;
    } while (open > 0);
    learnt[0] = p ^ 1;

    std::vector<Lit> all(learnt.begin() + 1, learnt.end());
    std::size_t out = 1;
    for (std::size_t i = 1; i < learnt.size(); ++i)
        if (!redundant(learnt[i]))
            learnt[out++] = learnt[i];
    learnt.resize(out);
    for (Lit q : all)
        seen_[static_cast<std::size_t>(q >> 1)] = 0;

    back_level = 0;
    if (learnt.size() > 1) {
        std::size_t best = 1;
        for (std::size_t i = 2; i < learnt.size(); ++i)
            if (level_[static_cast<std::size_t>(learnt[i] >> 1)] > level_[static_cast<std::size_t>(learnt[best] >> 1)])
                best = i;
        std::swap(learnt[1], learnt[best]);
        back_level = level_[static_cast<std::size_t>(learnt[1] >> 1)];
    }
}

void SatSolver::cancel_until(int lvl)
{
    if (level() <= lvl)
        return;
    const auto stop = static_cast<std::size_t>(trail_lim_[static_cast<std::size_t>(lvl)]);
    for (std::size_t i = trail_.size(); i-- > stop;) {
        const auto v = static_cast<std::size_t>(trail_[i] >> 1);
        phase_[v] = assign_[v];
        assign_[v] = -1;
        reason_[v] = -1;
        if (heap_pos_[v] < 0)
            heap_push(static_cast<int>(v));
    }
    trail_.resize(stop);
    trail_lim_.resize(static_cast<std::size_t>(lvl));
    qhead_ = stop;
}

void SatSolver::reduce()
{
    std::vector<int> cands;
    for (std::size_t c = 0; c < clauses_.size(); ++c)
        if (clauses_[c].learnt && !clauses_[c].deleted && clauses_[c].lbd > 2)
            cands.push_back(static_cast<int>(c));
    std::stable_sort(cands.begin(), cands.end(), [&](int a, int b) {
        return clauses_[static_cast<std::size_t>(a)].lbd > clauses_[static_cast<std::size_t>(b)].lbd;
    });
    for (std::size_t i = 0; i < cands.size() / 2; ++i) {
        auto& c = clauses_[static_cast<std::size_t>(cands[i])];
        c.deleted = true;
        c.lits = {};
        --learnt_count_;
    }
    for (auto& ws : watches_)
        std::erase_if(ws, [&](const Watcher& w) { return clauses_[static_cast<std::size_t>(w.cref)].deleted; });
    // level-0 reasons are never inspected again
    for (Lit l : trail_)
        reason_[static_cast<std::size_t>(l >> 1)] = -1;
}

SatSolver::Result SatSolver::solve(const std::function<bool(std::uint64_t)>& over_budget)
{
    if (empty_clause_ || propagate() >= 0)
        return Result::unsat;
    std::vector<Lit> learnt;
    std::uint64_t restarts = 1;
    std::uint64_t until_restart = luby(restarts) * kRestartBase;
    std::uint64_t since_poll = 0;
    while (true) {
        const int confl = propagate();
        if (confl >= 0) {
            ++conflicts_;
            if (level() == 0)
                return Result::unsat;
            int back = 0;
            analyze(confl, learnt, back);
            cancel_until(back);
            if (learnt.size() == 1) {
                enqueue(learnt[0], -1);
            } else {
                ++stamp_;
                int lbd = 0;
                for (Lit q : learnt) {
                    auto& s = level_stamp_[static_cast<std::size_t>(level_[static_cast<std::size_t>(q >> 1)])];
                    if (s != stamp_) {
                        s = stamp_;
                        ++lbd;
                    }
                }
                clauses_.push_back({learnt, true, false, lbd});
                const int cref = static_cast<int>(clauses_.size()) - 1;
                attach(cref);
                ++learnt_count_;
                enqueue(learnt[0], cref);
            }
            var_inc_ /= kVarDecay;
            if (--until_restart == 0) {
                cancel_until(0);
                until_restart = luby(++restarts) * kRestartBase;
                if (learnt_count_ > kFirstReduce + kReduceStep * reductions_) {
                    ++reductions_;
                    reduce();
                }
            }
            continue;
        }
        int next = -1;
        while (!heap_.empty()) {
            const int v = heap_pop();
            if (assign_[static_cast<std::size_t>(v)] < 0) {
                next = v;
                break;
            }
        }
        if (next < 0)
            return Result::sat;
        ++decisions_;
        if (++since_poll >= 1024) {
            if (over_budget(since_poll))
                return Result::aborted;
            since_poll = 0;
        }
        trail_lim_.push_back(static_cast<int>(trail_.size()));
        enqueue(phase_[static_cast<std::size_t>(next)] == 1 ? pos(next) : neg(next), -1);
    }
}

void SatSolver::heap_up(int i)
{
    const int v = heap_[static_cast<std::size_t>(i)];
    while (i > 0) {
        const int parent = (i - 1) / 2;
        const int pv = heap_[static_cast<std::size_t>(parent)];
        if (!heap_less(v, pv))
            break;
        heap_[static_cast<std::size_t>(i)] = pv;
        heap_pos_[static_cast<std::size_t>(pv)] = i;
        i = parent;
    }
    heap_[static_cast<std::size_t>(i)] = v;
    heap_pos_[static_cast<std::size_t>(v)] = i;
}

void SatSolver::heap_down(int i)
{
    const int n = static_cast<int>(heap_.size());
    const int v = heap_[static_cast<std::size_t>(i)];
    while (2 * i + 1 < n) {
        int child = 2 * i + 1;
        if (child + 1 < n && heap_less(heap_[static_cast<std::size_t>(child + 1)], heap_[static_cast<std::size_t>(child)]))
            ++child;
        const int cv = heap_[static_cast<std::size_t>(child)];
        if (!heap_less(cv, v))
            break;
        heap_[static_cast<std::size_t>(i)] = cv;
        heap_pos_[static_cast<std::size_t>(cv)] = i;
        i = child;
    }
    heap_[static_cast<std::size_t>(i)] = v;
    heap_pos_[static_cast<std::size_t>(v)] = i;
}

void SatSolver::heap_push(int var)
{
    heap_.push_back(var);
    heap_up(static_cast<int>(heap_.size()) - 1);
}

int SatSolver::heap_pop()
{
    const int top = heap_.front();
    heap_pos_[static_cast<std::size_t>(top)] = -1;
    const int last = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
        heap_[0] = last;
        heap_pos_[static_cast<std::size_t>(last)] = 0;
        heap_down(0);
    }
    return top;
}

}  // namespace stargrid::detail
