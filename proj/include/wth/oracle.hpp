#pragma once

// Exhaustive ground truth over the full 3^n-state configuration graph.
// A configuration is encoded base-3: digit d (0-indexed) is the peg of
// disc d+1, so disc 1 is the least significant digit. Stacking order on
// a peg is forced by the no-smaller-below rule, so the digit string
// determines the configuration completely.
//
// dijkstra_min_cost / dijkstra_lex search the weighted move graph;
// bfs_min_moves ignores weights. These deliberately know nothing about
// the recursion they are used to verify.

#include "wth/digraph.hpp"
#include "wth/model.hpp"
#include "wth/numeric.hpp"

#include <array>
#include <cstdint>
#include <queue>
#include <vector>

namespace wth {

inline constexpr int default_oracle_cap = 12;

inline std::uint64_t pow3(int n) {
    std::uint64_t r = 1;
    for (int i = 0; i < n; ++i) r *= 3;
    return r;
}

inline void check_oracle_cap(int n, int cap) {
    if (n < 0) throw std::invalid_argument("disc count must be nonnegative");
    if (n > cap)
        throw cap_exceeded_error("state space cap exceeded: n=" + std::to_string(n) +
                                 " > cap=" + std::to_string(cap));
}

inline std::uint64_t full_tower_state(int n, peg p) {
    std::uint64_t code = 0;
    for (int d = 0; d < n; ++d) code = code * 3 + static_cast<std::uint64_t>(p.value() - 1);
    return code;
}

inline peg disc_peg(std::uint64_t state, int disc) {
    for (int d = 1; d < disc; ++d) state /= 3;
    return peg(static_cast<int>(state % 3) + 1);
}

// Every single-disc move legal under the placement rules whose arc is
// in `allowed`, with the successor state.
inline std::vector<std::pair<move, std::uint64_t>> legal_moves(std::uint64_t state, int n,
                                                               const variant_digraph& allowed) {
    // topmost (smallest) disc on each peg, 0 if empty
    int top[3] = {0, 0, 0};
    std::uint64_t rest = state;
    for (int d = 1; d <= n; ++d) {
        int p = static_cast<int>(rest % 3);
        rest /= 3;
        if (top[p] == 0) top[p] = d;
    }
    std::vector<std::pair<move, std::uint64_t>> out;
    std::uint64_t place = 1;  // 3^{d-1}
    for (int d = 1; d <= n; ++d, place *= 3) {
        int from = static_cast<int>(state / place % 3);
        if (top[from] != d) continue;  // not topmost
        for (int to = 0; to < 3; ++to) {
            if (to == from) continue;
            if (!allowed.has_arc(peg(from + 1), peg(to + 1))) continue;
            if (top[to] != 0 && top[to] < d) continue;  // would sit on a smaller disc
            std::uint64_t succ =
                state + (static_cast<std::uint64_t>(to) - static_cast<std::uint64_t>(from)) * place;
            out.emplace_back(move(d, peg(from + 1), peg(to + 1)), succ);
        }
    }
    return out;
}

namespace detail {

// Single-source distances over the full state graph. With reverse=true
// the distances are *to* `start` in the forward graph. Every legal move
// has a legal inverse (the moved disc stays topmost), so reverse-graph
// neighbors are exactly the forward moves with the arc flipped when
// charging the weight.
template <class Arith>
std::vector<ext_cost<Arith>> dijkstra_all(const weight_matrix<Arith>& weights, int n,
                                          std::uint64_t start, bool reverse) {
    using cost = ext_cost<Arith>;
    struct item {
        cost key;
        std::uint64_t state;
    };
    struct later {
        bool operator()(const item& a, const item& b) const { return b.key.raw_cmp(a.key) < 0; }
    };

    const std::uint64_t states = pow3(n);
    std::vector<cost> dist(states, cost::infinity());
    std::vector<bool> settled(states, false);
    const variant_digraph all = variant_digraph::complete();

    std::priority_queue<item, std::vector<item>, later> heap;
    dist[start] = cost();
    heap.push({dist[start], start});
    while (!heap.empty()) {
        auto [key, s] = heap.top();
        heap.pop();
        if (settled[s]) continue;
        settled[s] = true;
        for (const auto& [mv, succ] : legal_moves(s, n, all)) {
            const cost& w = reverse ? weights.at(mv.to, mv.from) : weights.at(mv.from, mv.to);
            if (w.is_infinite()) continue;
            cost cand = key + w;
            if (!settled[succ] && cand.raw_cmp(dist[succ]) < 0) {
                dist[succ] = cand;
                heap.push({std::move(cand), succ});
            }
        }
    }
    return dist;
}

}  // namespace detail

// Exact minimum total cost over all legal move sequences from the full
// tower on `source` to the full tower on `destination`.
template <class Arith>
ext_cost<Arith> dijkstra_min_cost(const weight_matrix<Arith>& weights, int n, peg source,
                                  peg destination, int cap = default_oracle_cap) {
    using cost = ext_cost<Arith>;
    check_oracle_cap(n, cap);
    const std::uint64_t start = full_tower_state(n, source);
    const std::uint64_t goal = full_tower_state(n, destination);
    if (start == goal) return cost();

    struct item {
        cost key;
        std::uint64_t state;
    };
    struct later {
        bool operator()(const item& a, const item& b) const { return b.key.raw_cmp(a.key) < 0; }
    };

    std::vector<cost> dist(pow3(n), cost::infinity());
    std::vector<bool> settled(dist.size(), false);
    const variant_digraph all = variant_digraph::complete();

    std::priority_queue<item, std::vector<item>, later> heap;
    dist[start] = cost();
    heap.push({dist[start], start});
    while (!heap.empty()) {
        auto [key, s] = heap.top();
        heap.pop();
        if (settled[s]) continue;
        if (s == goal) return key;
        settled[s] = true;
        for (const auto& [mv, succ] : legal_moves(s, n, all)) {
            const cost& w = weights.at(mv.from, mv.to);
            if (w.is_infinite()) continue;
            cost cand = key + w;
            if (!settled[succ] && cand.raw_cmp(dist[succ]) < 0) {
                dist[succ] = cand;
                heap.push({std::move(cand), succ});
            }
        }
    }
    return cost::infinity();
}

// Bi-objective optimum: minimum cost first, then minimum move count
// among the minimum-cost sequences.
template <class Arith>
struct lex_cost {
    ext_cost<Arith> cost;
    u128 moves = 0;
};

template <class Arith>
lex_cost<Arith> dijkstra_lex(const weight_matrix<Arith>& weights, int n, peg source,
                             peg destination, int cap = default_oracle_cap) {
    using cost = ext_cost<Arith>;
    using key_t = lex_cost<Arith>;
    check_oracle_cap(n, cap);
    const std::uint64_t start = full_tower_state(n, source);
    const std::uint64_t goal = full_tower_state(n, destination);
    if (start == goal) return key_t{};

    // lexicographic (cost, moves); both edge components are nonnegative,
    // so Dijkstra stays correct on the pair
    auto lex_less = [](const key_t& a, const key_t& b) {
        int c = a.cost.raw_cmp(b.cost);
        if (c != 0) return c < 0;
        return a.moves < b.moves;
    };

    struct item {
        key_t key;
        std::uint64_t state;
    };

    std::vector<key_t> dist(pow3(n));
    std::vector<bool> seen(dist.size(), false);
    std::vector<bool> settled(dist.size(), false);
    const variant_digraph all = variant_digraph::complete();

    auto heap_later = [&](const item& a, const item& b) { return lex_less(b.key, a.key); };
    std::priority_queue<item, std::vector<item>, decltype(heap_later)> heap(heap_later);
    dist[start] = key_t{};
    seen[start] = true;
    heap.push({dist[start], start});
    while (!heap.empty()) {
        auto [key, s] = heap.top();
        heap.pop();
        if (settled[s]) continue;
        if (s == goal) return key;
        settled[s] = true;
        for (const auto& [mv, succ] : legal_moves(s, n, all)) {
            const cost& w = weights.at(mv.from, mv.to);
            if (w.is_infinite()) continue;
            key_t cand{key.cost + w, key.moves + 1};
            if (!settled[succ] && (!seen[succ] || lex_less(cand, dist[succ]))) {
                dist[succ] = cand;
                seen[succ] = true;
                heap.push({std::move(cand), succ});
            }
        }
    }
    return key_t{cost::infinity(), 0};
}

// Minimum number of moves ignoring weights, restricted to the arcs of
// `allowed`. Throws unreachable_error when the goal cannot be reached,
// which for n >= 1 happens exactly when `allowed` is not strongly
// connected.
inline std::uint64_t bfs_min_moves(const variant_digraph& allowed, int n, peg source,
                                   peg destination, int cap = default_oracle_cap) {
    check_oracle_cap(n, cap);
    const std::uint64_t start = full_tower_state(n, source);
    const std::uint64_t goal = full_tower_state(n, destination);
    if (start == goal) return 0;

    constexpr std::uint64_t unvisited = ~std::uint64_t{0};
    std::vector<std::uint64_t> dist(pow3(n), unvisited);
    std::queue<std::uint64_t> frontier;
    dist[start] = 0;
    frontier.push(start);
    while (!frontier.empty()) {
        std::uint64_t s = frontier.front();
        frontier.pop();
        for (const auto& [mv, succ] : legal_moves(s, n, allowed)) {
            (void)mv;
            if (dist[succ] != unvisited) continue;
            dist[succ] = dist[s] + 1;
            if (succ == goal) return dist[succ];
            frontier.push(succ);
        }
    }
    throw unreachable_error("goal configuration unreachable under the given digraph");
}

// Number of states reachable from `start` using arcs of `allowed`.
inline std::uint64_t count_reachable(const variant_digraph& allowed, int n, std::uint64_t start,
                                     int cap = default_oracle_cap) {
    check_oracle_cap(n, cap);
    std::vector<bool> seen(pow3(n), false);
    std::queue<std::uint64_t> frontier;
    seen[start] = true;
    frontier.push(start);
    std::uint64_t count = 1;
    while (!frontier.empty()) {
        std::uint64_t s = frontier.front();
        frontier.pop();
        for (const auto& [mv, succ] : legal_moves(s, n, allowed)) {
            (void)mv;
            if (seen[succ]) continue;
            seen[succ] = true;
            ++count;
            frontier.push(succ);
        }
    }
    return count;
}

// arc_used[i-1][j-1] = true iff some minimum-cost solution moves a disc
// from peg i to peg j. An edge lies on a minimum-cost walk exactly when
// dist_from_start + w + dist_to_goal equals the optimum.
template <class Arith>
std::array<std::array<bool, 3>, 3> optimal_arc_usage(const weight_matrix<Arith>& weights, int n,
                                                     peg source, peg destination,
                                                     int cap = default_oracle_cap) {
    check_oracle_cap(n, cap);
    std::array<std::array<bool, 3>, 3> used{};
    const std::uint64_t start = full_tower_state(n, source);
    const std::uint64_t goal = full_tower_state(n, destination);

    auto fwd = detail::dijkstra_all(weights, n, start, false);
    auto bwd = detail::dijkstra_all(weights, n, goal, true);
    const ext_cost<Arith>& opt = fwd[goal];
    if (opt.is_infinite()) return used;

    const variant_digraph all = variant_digraph::complete();
    const std::uint64_t states = pow3(n);
    for (std::uint64_t s = 0; s < states; ++s) {
        if (fwd[s].is_infinite()) continue;
        for (const auto& [mv, succ] : legal_moves(s, n, all)) {
            const ext_cost<Arith>& w = weights.at(mv.from, mv.to);
            if (w.is_infinite() || bwd[succ].is_infinite()) continue;
            if ((fwd[s] + w + bwd[succ]).cmp(opt) == 0)
                used[mv.from.value() - 1][mv.to.value() - 1] = true;
        }
    }
    return used;
}

}  // namespace wth
