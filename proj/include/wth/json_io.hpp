#pragma once

// JSON formats shared by the CLI and tests.
//
// Weight matrix files look like
//   {"weights": [[0, 3, 15], [8, 0, 2], [5, 6, 0]]}
// where each entry is a nonnegative number, a rational string "p/q", or
// "inf". Row index = from-peg - 1, column = to-peg - 1. Integer and
// rational entries route the whole pipeline through exact arithmetic;
// any decimal entry switches the pipeline to floating point. Mixing
// decimal entries with rational strings is rejected, since that would
// silently mix precisions.

#include "wth/dp_solver.hpp"
#include "wth/model.hpp"
#include "wth/numeric.hpp"
#include "wth/variants.hpp"

#include <json.hpp>

#include <string>
#include <variant>

namespace wth {

enum class weight_mode { exact, floating };

struct parsed_weights {
    weight_mode mode = weight_mode::exact;
    weight_matrix<exact_arith> exact;
    weight_matrix<float_arith> floating;
};

// Parses a weight matrix object and decides the arithmetic mode.
parsed_weights parse_weights(const nlohmann::json& doc);

// `text` is inline JSON when it starts with '{', otherwise a file path.
parsed_weights load_weights(const std::string& text);

exact_arith::number parse_rational(const std::string& text);

inline nlohmann::json cost_to_json(const ext_cost<exact_arith>& c) {
    if (c.is_infinite()) return "inf";
    const auto& q = c.value();
    if (denominator(q) == 1 && numerator(q) <= (boost::multiprecision::cpp_int(1) << 53))
        return static_cast<std::int64_t>(numerator(q));
    return exact_arith::str(q);
}

inline nlohmann::json cost_to_json(const ext_cost<float_arith>& c) {
    if (c.is_infinite()) return "inf";
    return c.value();
}

template <class Arith>
nlohmann::json weights_to_json(const weight_matrix<Arith>& w) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 1; i <= 3; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 1; j <= 3; ++j)
            row.push_back(i == j ? nlohmann::json(0) : cost_to_json(w.at(peg(i), peg(j))));
        rows.push_back(std::move(row));
    }
    return nlohmann::json{{"weights", std::move(rows)}};
}

inline std::string pair_label(peg i, peg j) {
    return std::to_string(i.value()) + "->" + std::to_string(j.value());
}

// Rows m = 1..n, one cell per ordered pair with both branch values, the
// chosen minimum and the tie-break.
template <class Arith>
nlohmann::json table_to_json(const cost_table<Arith>& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (int m = 1; m <= table.disc_count(); ++m) {
        nlohmann::json cells;
        for (int idx = 0; idx < num_ordered_pairs; ++idx) {
            auto [i, j] = pair_from_index(idx);
            const auto& br = table.branches_at(m, i, j);
            cells[pair_label(i, j)] = {{"L", cost_to_json(br.left)},
                                       {"R", cost_to_json(br.right)},
                                       {"cost", cost_to_json(table.cost_at(m, i, j))},
                                       {"chose_left", table.chose_left_at(m, i, j)}};
        }
        rows.push_back({{"m", m}, {"cells", std::move(cells)}});
    }
    return nlohmann::json{{"n", table.disc_count()}, {"rows", std::move(rows)}};
}

template <class Arith>
nlohmann::json solution_to_json(const solution<Arith>& sol) {
    nlohmann::json seq = nlohmann::json::array();
    for (const auto& m : sol.moves)
        seq.push_back({{"disc", m.disc}, {"from", m.from.value()}, {"to", m.to.value()}});
    nlohmann::json moves;
    if (sol.move_count <= u128{1} << 53)
        moves = static_cast<std::int64_t>(sol.move_count);
    else
        moves = to_string(sol.move_count);
    return nlohmann::json{
        {"cost", cost_to_json(sol.total_cost)}, {"moves", std::move(moves)}, {"sequence", std::move(seq)}};
}

template <class Arith>
nlohmann::json report_to_json(const restriction_report<Arith>& report) {
    nlohmann::json arcs = nlohmann::json::array();
    for (const auto& arc : report.per_forbidden_arc) {
        nlohmann::json entry = {{"arc", pair_label(arc.from, arc.to)},
                                {"threshold", cost_to_json(arc.condition.threshold)},
                                {"inequality_holds", arc.condition.inequality_holds},
                                {"equality_holds", arc.condition.equality_holds}};
        if (report.strict_checked) entry["failing_levels"] = arc.failing_levels;
        arcs.push_back(std::move(entry));
    }
    nlohmann::json out = {{"digraph", report.digraph.name()},
                          {"arcs", report.digraph.arc_list()},
                          {"compatible", report.compatible},
                          {"forbidden", std::move(arcs)},
                          {"solution_checked", report.solution_checked},
                          {"solution_respects", report.solution_respects}};
    if (report.strict_checked) out["strict_compatible"] = report.strict_compatible;
    return out;
}

}  // namespace wth
