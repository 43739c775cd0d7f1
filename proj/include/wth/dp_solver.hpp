#pragma once

// Minimum-cost transfer planning. compute_cost_table fills the recursion
//
//   C_1[i,j] = min{ w_ij, w_ik + w_kj }
//   C_m[i,j] = min{ C_{m-1}[i,k] + C_{m-1}[k,j] + w_ij,                (left)
//                   2 C_{m-1}[i,j] + C_{m-1}[j,i] + w_ik + w_kj }      (right)
//
// bottom-up over all six ordered peg pairs, recording both branch values
// and the tie-break (<= goes left: one move of the largest disc beats
// two). walk_solution emits the corresponding move sequence; on every
// tie the left branch is taken, which also minimizes the move count
// among minimum-cost solutions.

#include "wth/model.hpp"
#include "wth/numeric.hpp"

#include <array>
#include <bit>
#include <utility>
#include <vector>

namespace wth {

template <class Arith>
struct branch_costs {
    ext_cost<Arith> left;
    ext_cost<Arith> right;
};

template <class Arith>
class cost_table {
public:
    using cost = ext_cost<Arith>;

    struct entry {
        cost value;
        branch_costs<Arith> branches;  // meaningful for m >= 1
        bool chose_left = true;
    };

    explicit cost_table(int n) : n_(n), levels_(static_cast<std::size_t>(n) + 1) {}

    int disc_count() const { return n_; }

    const cost& cost_at(int m, peg i, peg j) const { return at(m, i, j).value; }

    const branch_costs<Arith>& branches_at(int m, peg i, peg j) const {
        if (m < 1) throw std::invalid_argument("no branches at level 0");
        return at(m, i, j).branches;
    }

    bool chose_left_at(int m, peg i, peg j) const {
        if (m < 1) throw std::invalid_argument("no branch choice at level 0");
        return at(m, i, j).chose_left;
    }

    const entry& at(int m, peg i, peg j) const { return levels_.at(m)[pair_index(i, j)]; }

private:
    entry& at(int m, peg i, peg j) { return levels_.at(m)[pair_index(i, j)]; }

    template <class A>
    friend cost_table<A> compute_cost_table(const weight_matrix<A>& weights, int n);

    int n_;
    std::vector<std::array<entry, num_ordered_pairs>> levels_;
};

template <class Arith>
cost_table<Arith> compute_cost_table(const weight_matrix<Arith>& weights, int n) {
    if (n < 0) throw std::invalid_argument("disc count must be nonnegative");
    cost_table<Arith> table(n);
    for (int m = 1; m <= n; ++m) {
        for (int idx = 0; idx < num_ordered_pairs; ++idx) {
            auto [i, j] = pair_from_index(idx);
            peg k = intermediate_peg(i, j);
            ext_cost<Arith> left, right;
            if (m == 1) {
                left = weights.at(i, j);
                right = weights.at(i, k) + weights.at(k, j);
            } else {
                left = table.cost_at(m - 1, i, k) + table.cost_at(m - 1, k, j) + weights.at(i, j);
                right = table.cost_at(m - 1, i, j) + table.cost_at(m - 1, i, j) +
                        table.cost_at(m - 1, j, i) + weights.at(i, k) + weights.at(k, j);
            }
            auto& e = table.at(m, i, j);
            e.chose_left = left.cmp(right) <= 0;
            e.value = e.chose_left ? left : right;
            e.branches = branch_costs<Arith>{std::move(left), std::move(right)};
        }
    }
    return table;
}

template <class Arith>
ext_cost<Arith> min_cost(const instance<Arith>& inst) {
    if (inst.n == 0 || inst.source == inst.destination) return ext_cost<Arith>();
    return compute_cost_table(inst.weights, inst.n).cost_at(inst.n, inst.source, inst.destination);
}

namespace detail {

template <class Arith>
void walk_moves(const cost_table<Arith>& table, int m, peg i, peg j, const move_sink& sink) {
    if (m == 0) return;
    peg k = intermediate_peg(i, j);
    if (m == 1) {
        if (table.chose_left_at(1, i, j)) {
            sink(move(1, i, j));
        } else {
            sink(move(1, i, k));
            sink(move(1, k, j));
        }
        return;
    }
    if (table.chose_left_at(m, i, j)) {
        walk_moves(table, m - 1, i, k, sink);
        sink(move(m, i, j));
        walk_moves(table, m - 1, k, j, sink);
    } else {
        walk_moves(table, m - 1, i, j, sink);
        sink(move(m, i, k));
        walk_moves(table, m - 1, j, i, sink);
        sink(move(m, k, j));
        walk_moves(table, m - 1, i, j, sink);
    }
}

}  // namespace detail

// Streams the optimal move sequence to `sink` without materializing it.
// Throws infinite_cost_error when no finite-cost plan exists.
template <class Arith>
void walk_solution(const instance<Arith>& inst, const move_sink& sink) {
    if (inst.n == 0 || inst.source == inst.destination) return;
    auto table = compute_cost_table(inst.weights, inst.n);
    if (table.cost_at(inst.n, inst.source, inst.destination).is_infinite())
        throw infinite_cost_error();
    detail::walk_moves(table, inst.n, inst.source, inst.destination, sink);
}

// Move count of the emitted sequence, from the table's branch choices
// alone, without walking it.
template <class Arith>
u128 solution_move_count(const cost_table<Arith>& table, int n, peg source, peg destination) {
    if (n == 0 || source == destination) return 0;
    std::array<std::array<u128, num_ordered_pairs>, 2> counts{};
    for (int m = 1; m <= n; ++m) {
        auto& cur = counts[m % 2];
        const auto& prev = counts[(m - 1) % 2];
        for (int idx = 0; idx < num_ordered_pairs; ++idx) {
            auto [i, j] = pair_from_index(idx);
            peg k = intermediate_peg(i, j);
            if (table.chose_left_at(m, i, j))
                cur[idx] = prev[pair_index(i, k)] + 1 + prev[pair_index(k, j)];
            else
                cur[idx] = 2 * prev[pair_index(i, j)] + prev[pair_index(j, i)] + 2;
        }
    }
    return counts[n % 2][pair_index(source, destination)];
}

template <class Arith>
solution<Arith> generate_solution(const instance<Arith>& inst) {
    solution<Arith> sol;
    walk_solution<Arith>(inst, [&](const move& m) {
        sol.moves.push_back(m);
        sol.total_cost += inst.weights.at(m.from, m.to);
    });
    sol.move_count = static_cast<u128>(sol.moves.size());
    return sol;
}

// Specialized recursion for symmetric weights (w_ij = w_ji):
//   C_m{i,j} = min{ C_{m-1}{i,k} + C_{m-1}{k,j} + w_ij,
//                   3 C_{m-1}{i,j} + w_ik + w_kj }
// over the three unordered pairs. Throws not_symmetric_error otherwise.
template <class Arith>
ext_cost<Arith> symmetric_cost(const weight_matrix<Arith>& weights, int n, peg i, peg j) {
    if (!weights.is_symmetric()) throw not_symmetric_error();
    if (i == j) throw std::invalid_argument("symmetric_cost requires distinct pegs");
    if (n == 0) return ext_cost<Arith>();

    // unordered pair index: the peg absent from the pair, minus one
    auto upair = [](peg a, peg b) { return intermediate_peg(a, b).value() - 1; };

    std::array<ext_cost<Arith>, 3> level{};  // level-0 costs are all zero
    for (int m = 1; m <= n; ++m) {
        std::array<ext_cost<Arith>, 3> next;
        for (int a = 1; a <= 3; ++a) {
            for (int b = a + 1; b <= 3; ++b) {
                peg pa(a), pb(b);
                peg k = intermediate_peg(pa, pb);
                ext_cost<Arith> detour = weights.at(pa, k) + weights.at(k, pb);
                ext_cost<Arith> left, right;
                if (m == 1) {
                    left = weights.at(pa, pb);
                    right = detour;
                } else {
                    left = level[upair(pa, k)] + level[upair(k, pb)] + weights.at(pa, pb);
                    right = level[upair(pa, pb)] + level[upair(pa, pb)] + level[upair(pa, pb)] + detour;
                }
                next[upair(pa, pb)] = left.cmp(right) <= 0 ? left : right;
            }
        }
        level = next;
    }
    return level[upair(i, j)];
}

// (2^n - 1) x, the minimum cost under uniform arc weight x.
template <class Arith>
ext_cost<Arith> uniform_cost(int n, const typename Arith::number& x) {
    if (n < 0) throw std::invalid_argument("disc count must be nonnegative");
    typename Arith::number factor = 0;
    typename Arith::number pw = 1;
    for (int b = 0; b < n; ++b) {
        factor += pw;
        pw += pw;
    }
    return ext_cost<Arith>(x).scaled(factor);
}

// Shortest and longest optimal move counts: 2^n - 1 and 3^n - 1.
inline std::pair<u128, u128> move_count_bounds(int n) {
    if (n < 0) throw std::invalid_argument("disc count must be nonnegative");
    return {checked_pow_u128(2, static_cast<unsigned>(n)) - 1,
            checked_pow_u128(3, static_cast<unsigned>(n)) - 1};
}

struct recursion_stats {
    std::uint64_t distinct_subproblems = 0;
    u128 naive_calls = 0;
    u128 formula_vn = 0;
};

namespace detail {

inline u128 naive_call_count_instrumented(int m) {
    u128 calls = 1;
    if (m >= 2)
        for (int child = 0; child < 4; ++child) calls += naive_call_count_instrumented(m - 1);
    return calls;
}

}  // namespace detail

// Subproblem counts for an n-disc solve rooted at one ordered pair.
//
// distinct_subproblems propagates pair-reachability level by level: the
// children of (m, i, j) are (m-1, i,k), (m-1, k,j), (m-1, i,j) and
// (m-1, j,i). The root instance is counted only when it is itself the
// base case (n = 1), matching the convention v_1 = 1, v_2 = 4.
//
// naive_calls counts procedure invocations of the unmemoized recursion:
// instrumented directly for n <= 12, continued by the exact recurrence
// T(m) = 1 + 4 T(m-1) above that.
//
// formula_vn is the reported formula 6^{n-2} + 4 (n >= 3), for comparison.
inline recursion_stats count_subproblems(int n) {
    if (n < 0) throw std::invalid_argument("disc count must be nonnegative");
    recursion_stats stats;
    if (n == 0) return stats;

    // distinct pairs reachable at each level, as 6-bit masks; the
    // children of (i,j) are (i,k), (k,j), (i,j) and (j,i)
    std::array<int, num_ordered_pairs> children{};
    for (int idx = 0; idx < num_ordered_pairs; ++idx) {
        auto [i, j] = pair_from_index(idx);
        peg k = intermediate_peg(i, j);
        children[idx] = (1 << pair_index(i, k)) | (1 << pair_index(k, j)) |
                        (1 << pair_index(i, j)) | (1 << pair_index(j, i));
    }
    int mask = 1 << pair_index(peg(1), peg(3));
    std::uint64_t visited = 0;
    for (int m = n; m >= 1; --m) {
        visited += static_cast<std::uint64_t>(std::popcount(static_cast<unsigned>(mask)));
        int next = 0;
        for (int idx = 0; idx < num_ordered_pairs; ++idx)
            if (mask & (1 << idx)) next |= children[idx];
        mask = next;
    }
    stats.distinct_subproblems = n == 1 ? visited : visited - 1;

    if (n <= 12) {
        stats.naive_calls = detail::naive_call_count_instrumented(n);
    } else {
        u128 calls = detail::naive_call_count_instrumented(12);
        for (int m = 13; m <= n; ++m) {
            if (calls > (std::numeric_limits<u128>::max() - 1) / 4)
                throw std::overflow_error("naive call count exceeds 128 bits");
            calls = 1 + 4 * calls;
        }
        stats.naive_calls = calls;
    }

    if (n == 1)
        stats.formula_vn = 1;
    else if (n == 2)
        stats.formula_vn = 4;
    else
        stats.formula_vn = checked_pow_u128(6, static_cast<unsigned>(n - 2)) + 4;
    return stats;
}

}  // namespace wth
