#pragma once

// Move-restricted variants. An arc (i,j) outside the movement digraph is
// effectively forbidden for an instance when
//
//   (1) w_ij > w_ik + w_kj + max{0, 2 C_{n-1}[i,j] + C_{n-1}[j,i]
//                                   - C_{n-1}[i,k] - C_{n-1}[k,j]},  and
//   (2) C_n[i,j] = 2 C_{n-1}[i,j] + C_{n-1}[j,i] + w_ik + w_kj,
//
// i.e. no optimal solution moves a disc from i to j. respects_variant
// applies this to every arc missing from a digraph; synthesize_weights
// constructs finite forbidden-arc weights just above their thresholds.

#include "wth/digraph.hpp"
#include "wth/dp_solver.hpp"
#include "wth/model.hpp"
#include "wth/numeric.hpp"

#include <array>
#include <utility>
#include <vector>

namespace wth {

template <class Arith>
struct arc_condition {
    bool inequality_holds = false;
    bool equality_holds = false;
    ext_cost<Arith> threshold;
};

namespace detail {

// Condition (1)-(2) for arc (i,j) at level m, from a table computed at
// least to level m. The threshold is reported as infinity when no finite
// w_ij could satisfy (1), which happens when the bracket is inf - inf.
template <class Arith>
arc_condition<Arith> arc_condition_at(const cost_table<Arith>& table,
                                      const weight_matrix<Arith>& weights, int m, peg i, peg j) {
    using cost = ext_cost<Arith>;
    peg k = intermediate_peg(i, j);
    const cost detour = weights.at(i, k) + weights.at(k, j);
    const cost via_right =
        table.cost_at(m - 1, i, j) + table.cost_at(m - 1, i, j) + table.cost_at(m - 1, j, i);
    const cost via_left = table.cost_at(m - 1, i, k) + table.cost_at(m - 1, k, j);

    arc_condition<Arith> out;
    if (via_right.is_infinite()) {
        out.threshold = cost::infinity();
    } else if (via_left.is_infinite()) {
        out.threshold = detour;
    } else if (via_right.cmp(via_left) > 0) {
        out.threshold = detour + cost(via_right.value() - via_left.value());
    } else {
        out.threshold = detour;
    }
    out.inequality_holds = weights.at(i, j).cmp(out.threshold) > 0;
    out.equality_holds = table.cost_at(m, i, j).cmp(table.branches_at(m, i, j).right) == 0;
    return out;
}

// Whether the emitted move sequence rooted at (n, source, destination)
// uses only arcs of `digraph`. The emission per (level, pair) node is
// fixed by the table's branch choices, so this is the same truth value
// as walking the full sequence, computed bottom-up in O(n).
template <class Arith>
std::array<bool, num_ordered_pairs> emission_within(const cost_table<Arith>& table, int n,
                                                    const variant_digraph& digraph) {
    std::array<bool, num_ordered_pairs> clean;
    clean.fill(true);
    for (int m = 1; m <= n; ++m) {
        std::array<bool, num_ordered_pairs> next;
        for (int idx = 0; idx < num_ordered_pairs; ++idx) {
            auto [i, j] = pair_from_index(idx);
            peg k = intermediate_peg(i, j);
            if (table.chose_left_at(m, i, j)) {
                next[idx] = digraph.has_arc(i, j) &&
                            (m == 1 || (clean[pair_index(i, k)] && clean[pair_index(k, j)]));
            } else {
                next[idx] = digraph.has_arc(i, k) && digraph.has_arc(k, j) &&
                            (m == 1 || (clean[pair_index(i, j)] && clean[pair_index(j, i)]));
            }
        }
        clean = next;
    }
    return clean;
}

}  // namespace detail

// Both conditions for arc (i,j) at the top level n. Requires n >= 1.
template <class Arith>
arc_condition<Arith> forbidden_arc_condition(const weight_matrix<Arith>& weights, int n, peg i,
                                             peg j) {
    if (n < 1) throw std::invalid_argument("forbidden_arc_condition requires n >= 1");
    if (i == j) throw std::invalid_argument("forbidden_arc_condition requires distinct pegs");
    auto table = compute_cost_table(weights, n);
    return detail::arc_condition_at(table, weights, n, i, j);
}

template <class Arith>
struct arc_report {
    peg from;
    peg to;
    arc_condition<Arith> condition;
    std::vector<int> failing_levels;  // filled in strict mode only
};

template <class Arith>
struct restriction_report {
    explicit restriction_report(variant_digraph d) : digraph(std::move(d)) {}

    variant_digraph digraph;
    std::vector<arc_report<Arith>> per_forbidden_arc;
    bool compatible = true;

    // strict mode: conditions re-evaluated at every level m <= n
    bool strict_checked = false;
    bool strict_compatible = true;

    // cross-check: emitted optimal solutions stay on allowed arcs
    // (every source/destination pair with a finite cost)
    bool solution_checked = false;
    bool solution_respects = true;
};

// Evaluates the forbidden-arc conditions for every arc missing from
// `digraph`. The conditions are stated at the top level n; with
// strict_levels they are additionally evaluated at every level m <= n
// and any failing levels are recorded (the emitted solution recurses
// through subproblems, and the top-level statement does not by itself
// say whether the condition propagates to them).
template <class Arith>
restriction_report<Arith> respects_variant(const weight_matrix<Arith>& weights, int n,
                                           const variant_digraph& digraph,
                                           bool strict_levels = false) {
    if (!digraph.is_strongly_connected()) throw not_strongly_connected_error();
    restriction_report<Arith> report(digraph);
    report.strict_checked = strict_levels;
    if (n == 0) return report;  // no moves, vacuously compatible

    auto table = compute_cost_table(weights, n);
    for (auto [i, j] : digraph.forbidden_arcs()) {
        arc_report<Arith> arc{i, j, detail::arc_condition_at(table, weights, n, i, j), {}};
        report.compatible =
            report.compatible && arc.condition.inequality_holds && arc.condition.equality_holds;
        if (strict_levels) {
            for (int m = 1; m <= n; ++m) {
                auto c = detail::arc_condition_at(table, weights, m, i, j);
                if (!(c.inequality_holds && c.equality_holds)) arc.failing_levels.push_back(m);
            }
            report.strict_compatible = report.strict_compatible && arc.failing_levels.empty();
        }
        report.per_forbidden_arc.push_back(std::move(arc));
    }

    if (report.compatible && digraph.arc_count() < num_ordered_pairs) {
        auto clean = detail::emission_within(table, n, digraph);
        for (int idx = 0; idx < num_ordered_pairs; ++idx) {
            auto [i, j] = pair_from_index(idx);
            if (table.cost_at(n, i, j).is_infinite()) continue;  // no solution to check
            report.solution_checked = true;
            report.solution_respects = report.solution_respects && clean[idx];
        }
    }
    return report;
}

// The two displayed inequalities characterizing the linear variant
// (forbidden arcs (1,3) and (3,1)); inequality part only.
template <class Arith>
bool linear_condition(const weight_matrix<Arith>& weights, int n) {
    if (n < 1) throw std::invalid_argument("linear_condition requires n >= 1");
    auto table = compute_cost_table(weights, n);
    return detail::arc_condition_at(table, weights, n, peg(1), peg(3)).inequality_holds &&
           detail::arc_condition_at(table, weights, n, peg(3), peg(1)).inequality_holds;
}

// The three displayed inequalities characterizing the cyclic variant
// 1>2>3>1 (forbidden arcs (1,3), (3,2), (2,1)); inequality part only.
template <class Arith>
bool cyclic_condition(const weight_matrix<Arith>& weights, int n) {
    if (n < 1) throw std::invalid_argument("cyclic_condition requires n >= 1");
    auto table = compute_cost_table(weights, n);
    return detail::arc_condition_at(table, weights, n, peg(1), peg(3)).inequality_holds &&
           detail::arc_condition_at(table, weights, n, peg(3), peg(2)).inequality_holds &&
           detail::arc_condition_at(table, weights, n, peg(2), peg(1)).inequality_holds;
}

namespace detail {

// The certificate used during synthesis: top-level conditions for every
// forbidden arc, plus the emitted solutions staying on allowed arcs.
template <class Arith>
bool certified_compatible(const weight_matrix<Arith>& weights, int n,
                          const variant_digraph& digraph) {
    auto table = compute_cost_table(weights, n);
    for (auto [i, j] : digraph.forbidden_arcs()) {
        auto c = arc_condition_at(table, weights, n, i, j);
        if (!(c.inequality_holds && c.equality_holds)) return false;
    }
    auto clean = emission_within(table, n, digraph);
    for (int idx = 0; idx < num_ordered_pairs; ++idx) {
        auto [i, j] = pair_from_index(idx);
        if (!table.cost_at(n, i, j).is_infinite() && !clean[idx]) return false;
    }
    return true;
}

}  // namespace detail

// Produces a matrix equal to `base` on the digraph's arcs whose
// forbidden-arc entries are finite and certified compatible. Forbidden
// entries of `base` are ignored, which makes the construction a pure
// function of the allowed weights (and hence idempotent): each forbidden
// arc starts at 1 + 3^n * max allowed weight, then is lowered toward its
// threshold by binary search on the whole-matrix certificate, repeating
// passes until no arc moves.
template <class Arith>
weight_matrix<Arith> synthesize_weights(const variant_digraph& digraph,
                                        const weight_matrix<Arith>& base, int n) {
    using cost = ext_cost<Arith>;
    using number = typename Arith::number;
    if (!digraph.is_strongly_connected()) throw not_strongly_connected_error();

    number max_allowed = 0;
    for (auto [i, j] : digraph.arcs()) {
        if (base.at(i, j).is_infinite())
            throw std::invalid_argument("base must assign finite weights to all allowed arcs");
        if (base.at(i, j).value() > max_allowed) max_allowed = base.at(i, j).value();
    }

    const auto forbidden = digraph.forbidden_arcs();
    if (forbidden.empty() || n == 0) return base;
    number big = 1;
    for (int d = 0; d < n; ++d) big *= 3;
    big = big * max_allowed + 1;

    weight_matrix<Arith> result = base;
    for (auto [i, j] : forbidden) result.set(i, j, cost(big));
    if (!detail::certified_compatible(result, n, digraph))
        throw synthesis_failed_error("initial large-weight assignment is not compatible");

    auto certified_with = [&](peg i, peg j, const number& v) {
        weight_matrix<Arith> probe = result;
        probe.set(i, j, cost(v));
        return detail::certified_compatible(probe, n, digraph);
    };

    constexpr int max_passes = 8;
    constexpr int bisect_iterations = 64;
    for (int pass = 0; pass < max_passes; ++pass) {
        bool changed = false;
        for (auto [i, j] : forbidden) {
            number hi = result.at(i, j).value();
            if (!certified_with(i, j, hi)) {
                // another arc's lowering broke this one; restart it high
                hi = big;
                if (!certified_with(i, j, hi))
                    throw synthesis_failed_error("lost compatibility while lowering arcs");
                result.set(i, j, cost(hi));
                changed = true;
                continue;
            }
            number lo = 0;
            if (certified_with(i, j, lo))
                throw synthesis_failed_error("zero weight unexpectedly compatible");
            for (int it = 0; it < bisect_iterations; ++it) {
                number mid = (lo + hi) / 2;
                if (certified_with(i, j, mid))
                    hi = mid;
                else
                    lo = mid;
            }
            if (hi != result.at(i, j).value()) {
                result.set(i, j, cost(hi));
                changed = true;
            }
        }
        if (!changed) {
            if (!detail::certified_compatible(result, n, digraph))
                throw synthesis_failed_error("converged to an incompatible matrix");
            return result;
        }
    }
    throw synthesis_failed_error("arc lowering did not converge");
}

}  // namespace wth
