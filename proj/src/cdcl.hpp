#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace stargrid::detail {

/// 2 * var + 1 for the negation.
using Lit = int;
inline Lit pos(int var) { return 2 * var; }
inline Lit neg(int var) { return 2 * var + 1; }

/// Conflict-driven clause learning over plain CNF: two watched literals,
/// first-UIP learning, activity-ordered decisions with saved phases, Luby
/// restarts and periodic removal of learnt clauses with many levels.
class SatSolver {
public:
    enum class Result { sat, unsat, aborted };

    int new_var();
    int var_count() const { return static_cast<int>(assign_.size()); }
    /// Only before solve(). Duplicates and tautologies are fine.
    void add_clause(std::vector<Lit> lits);
    /// over_budget gets the number of decisions since its last call.
    Result solve(const std::function<bool(std::uint64_t)>& over_budget);
    bool value(int var) const { return assign_[static_cast<std::size_t>(var)] == 1; }
    std::uint64_t decisions() const { return decisions_; }
    std::uint64_t conflicts() const { return conflicts_; }

private:
    struct Clause {
        std::vector<Lit> lits;
        bool learnt = false;
        bool deleted = false;
        int lbd = 0;
    };
    struct Watcher {
        int cref;
        Lit blocker;
    };

    int lit_value(Lit l) const
    {
        const int a = assign_[static_cast<std::size_t>(l >> 1)];
        return a < 0 ? -1 : a ^ (l & 1);
    }
    int level() const { return static_cast<int>(trail_lim_.size()); }
    void enqueue(Lit l, int reason);
    int propagate();
    void analyze(int confl, std::vector<Lit>& learnt, int& back_level);
    bool redundant(Lit l) const;
    void cancel_until(int lvl);
    void attach(int cref);
    void bump(int var);
    void reduce();

    void heap_up(int i);
    void heap_down(int i);
    void heap_push(int var);
    int heap_pop();
    bool heap_less(int a, int b) const { return activity_[a] > activity_[b]; }

    std::vector<Clause> clauses_;
    std::vector<std::vector<Watcher>> watches_;
    std::vector<std::int8_t> assign_;
    std::vector<std::int8_t> phase_;
    std::vector<int> level_;
    std::vector<int> reason_;
    std::vector<char> seen_;
    std::vector<Lit> trail_;
    std::vector<int> trail_lim_;
    std::size_t qhead_ = 0;
    std::vector<double> activity_;
    double var_inc_ = 1.0;
    std::vector<int> heap_;
    std::vector<int> heap_pos_;
    std::vector<int> level_stamp_;
    int stamp_ = 0;
    bool empty_clause_ = false;
    std::uint64_t decisions_ = 0;
    std::uint64_t conflicts_ = 0;
    int learnt_count_ = 0;
    int reductions_ = 0;
};

}  // namespace stargrid::detail
