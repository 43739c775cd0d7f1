// Command-line front end for the weighted Tower of Hanoi solver.
//
// Exit codes: 0 success, 1 verification counterexample, 2 input error,
// 3 cap exceeded.

#include "wth/dp_solver.hpp"
#include "wth/json_io.hpp"
#include "wth/model.hpp"
#include "wth/oracle.hpp"
#include "wth/random_weights.hpp"
#include "wth/variants.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_counterexample = 1;
constexpr int exit_input = 2;
constexpr int exit_cap = 3;

struct options {
    std::string weights;
    int n = 0;
    int from = 1;
    int to = 3;
    std::string digraph;
    std::string format = "table";
    bool dump_table = false;
    bool strict = false;
    std::uint64_t seed = 1;
    int trials = 200;
    int oracle_cap = wth::default_oracle_cap;
    int emit_cap = 30;
    std::optional<int> verify_n;
    int bench_max = 10000;
};

void emit_json(const nlohmann::json& doc) { std::cout << doc.dump(2) << "\n"; }

// ---------------------------------------------------------------------------
// cost

template <class Arith>
std::string starred(const wth::ext_cost<Arith>& v, const wth::ext_cost<Arith>& best) {
    return v.str() + (v.cmp(best) == 0 ? "*" : "");
}

template <class Arith>
void print_table(const wth::cost_table<Arith>& table) {
    using namespace wth;
    // cells[m][idx] = "L[*] R[*]"
    std::vector<std::array<std::string, num_ordered_pairs>> cells(table.disc_count() + 1);
    std::array<std::size_t, num_ordered_pairs> width{};
    std::array<std::string, num_ordered_pairs> heads;
    for (int idx = 0; idx < num_ordered_pairs; ++idx) {
        auto [i, j] = pair_from_index(idx);
        heads[idx] = pair_label(i, j);
        width[idx] = heads[idx].size();
        for (int m = 1; m <= table.disc_count(); ++m) {
            const auto& br = table.branches_at(m, i, j);
            const auto& best = table.cost_at(m, i, j);
            cells[m][idx] = starred(br.left, best) + "  " + starred(br.right, best);
            width[idx] = std::max(width[idx], cells[m][idx].size());
        }
    }
    std::cout << std::left << std::setw(6) << "n";
    for (int idx = 0; idx < num_ordered_pairs; ++idx)
        std::cout << "| " << std::setw(static_cast<int>(width[idx]) + 2) << heads[idx];
    std::cout << "\n";
    for (int m = 1; m <= table.disc_count(); ++m) {
        std::cout << std::left << std::setw(6) << m;
        for (int idx = 0; idx < num_ordered_pairs; ++idx)
            std::cout << "| " << std::setw(static_cast<int>(width[idx]) + 2) << cells[m][idx];
        std::cout << "\n";
    }
}

template <class Arith>
int run_cost(const wth::weight_matrix<Arith>& weights, const options& opt) {
    using namespace wth;
    auto table = compute_cost_table(weights, opt.n);
    ext_cost<Arith> cost;
    if (opt.n > 0 && opt.from != opt.to) cost = table.cost_at(opt.n, peg(opt.from), peg(opt.to));

    if (opt.format == "json") {
        nlohmann::json out = {{"n", opt.n},
                              {"from", opt.from},
                              {"to", opt.to},
                              {"cost", cost_to_json(cost)}};
        if (opt.dump_table) out["table"] = table_to_json(table);
        emit_json(out);
    } else if (opt.format == "csv") {
        std::cout << "m,pair,L,R,cost,chose_left\n";
        if (opt.dump_table) {
            for (int m = 1; m <= opt.n; ++m) {
                for (int idx = 0; idx < num_ordered_pairs; ++idx) {
                    auto [i, j] = pair_from_index(idx);
                    const auto& br = table.branches_at(m, i, j);
                    std::cout << m << "," << pair_label(i, j) << "," << br.left.str() << ","
                              << br.right.str() << "," << table.cost_at(m, i, j).str() << ","
                              << (table.chose_left_at(m, i, j) ? 1 : 0) << "\n";
                }
            }
        }
    } else {
        std::cout << cost.str() << "\n";
        if (opt.dump_table) print_table(table);
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------
// solve

template <class Arith>
int run_solve(const wth::weight_matrix<Arith>& weights, const options& opt) {
    using namespace wth;
    if (opt.n > opt.emit_cap) {
        std::cerr << "n=" << opt.n << " exceeds the solution emission cap (" << opt.emit_cap
                  << "); raise --emit-cap to materialize larger solutions\n";
        return exit_cap;
    }
    instance<Arith> inst(opt.n, peg(opt.from), peg(opt.to), weights);
    auto sol = generate_solution(inst);

    if (opt.format == "json") {
        emit_json(solution_to_json(sol));
    } else if (opt.format == "csv") {
        std::cout << "index,disc,from,to,cost\n";
        for (std::size_t idx = 0; idx < sol.moves.size(); ++idx) {
            const auto& m = sol.moves[idx];
            std::cout << idx << "," << m.disc << "," << m.from.value() << "," << m.to.value()
                      << "," << weights.at(m.from, m.to).str() << "\n";
        }
    } else {
        for (const auto& m : sol.moves)
            std::cout << "disc " << m.disc << ": " << m.from.value() << " -> " << m.to.value()
                      << " @ " << weights.at(m.from, m.to).str() << "\n";
        std::cout << "cost: " << sol.total_cost.str() << "\n";
        std::cout << "moves: " << to_string(sol.move_count) << "\n";
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------
// verify

wth::weight_matrix<wth::exact_arith> worked_example_weights() {
    wth::weight_matrix<wth::exact_arith> w;
    const int vals[3][3] = {{0, 3, 15}, {8, 0, 2}, {5, 6, 0}};
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            if (i != j)
                w.set(wth::peg(i), wth::peg(j),
                      wth::exact_cost(wth::exact_arith::from_int(vals[i - 1][j - 1])));
    return w;
}

int run_verify(const options& opt) {
    using namespace wth;
    std::vector<int> sweep;
    if (opt.verify_n)
        sweep.push_back(*opt.verify_n);
    else
        for (int n = 1; n <= 6; ++n) sweep.push_back(n);
    for (int n : sweep) check_oracle_cap(n, opt.oracle_cap);

    nlohmann::json results = nlohmann::json::array();
    bool all_ok = true;

    for (int n : sweep) {
        std::mt19937_64 rng(opt.seed + static_cast<std::uint64_t>(n));
        int ok = 0;
        nlohmann::json counterexample;
        std::string failure;
        for (int trial = 0; trial <= opt.trials && failure.empty(); ++trial) {
            // trial 0 is the fixed worked example, the rest are random
            weight_matrix<exact_arith> w =
                trial == 0 ? worked_example_weights() : random_integer_weights(rng);
            for (int idx = 0; idx < num_ordered_pairs && failure.empty(); ++idx) {
                auto [i, j] = pair_from_index(idx);
                instance<exact_arith> inst(n, i, j, w);
                auto dp_cost = min_cost(inst);
                auto oracle_cost = dijkstra_min_cost(w, n, i, j, opt.oracle_cap);
                if (dp_cost.cmp(oracle_cost) != 0) {
                    failure = "cost mismatch at pair " + pair_label(i, j) + ": table=" +
                              dp_cost.str() + " oracle=" + oracle_cost.str();
                    counterexample = weights_to_json(w);
                    break;
                }
                auto sol = replay(inst, generate_solution(inst).moves);
                if (sol.total_cost.cmp(dp_cost) != 0) {
                    failure = "replayed cost mismatch at pair " + pair_label(i, j);
                    counterexample = weights_to_json(w);
                    break;
                }
                auto lex = dijkstra_lex(w, n, i, j, opt.oracle_cap);
                if (lex.moves != sol.move_count) {
                    failure = "move count mismatch at pair " + pair_label(i, j) + ": emitted=" +
                              to_string(sol.move_count) + " oracle=" + to_string(lex.moves);
                    counterexample = weights_to_json(w);
                    break;
                }
            }
            if (failure.empty()) ++ok;
        }
        all_ok = all_ok && failure.empty();
        nlohmann::json entry = {{"n", n}, {"trials_ok", ok}, {"trials", opt.trials + 1}};
        if (!failure.empty()) {
            entry["failure"] = failure;
            entry["counterexample"] = counterexample;
        }
        results.push_back(entry);
        if (opt.format != "json") {
            std::cout << "n=" << n << ": " << ok << "/" << (opt.trials + 1) << " trials ok";
            if (!failure.empty()) std::cout << "  FAIL: " << failure;
            std::cout << "\n";
            if (!failure.empty()) std::cout << "counterexample: " << counterexample.dump() << "\n";
        }
    }

    if (opt.format == "json") {
        emit_json({{"seed", opt.seed}, {"pass", all_ok}, {"results", results}});
    } else {
        std::cout << (all_ok ? "PASS" : "FAIL") << " (seed=" << opt.seed << ")\n";
    }
    return all_ok ? exit_ok : exit_counterexample;
}

// ---------------------------------------------------------------------------
// variants / synth

template <class Arith>
int run_variants(const wth::weight_matrix<Arith>& weights, const wth::variant_digraph& digraph,
                 const options& opt) {
    using namespace wth;
    auto report = respects_variant(weights, opt.n, digraph, opt.strict);
    if (opt.format == "json") {
        emit_json(report_to_json(report));
    } else if (opt.format == "csv") {
        std::cout << "arc,threshold,inequality_holds,equality_holds\n";
        for (const auto& arc : report.per_forbidden_arc)
            std::cout << pair_label(arc.from, arc.to) << "," << arc.condition.threshold.str()
                      << "," << arc.condition.inequality_holds << ","
                      << arc.condition.equality_holds << "\n";
    } else {
        std::cout << "digraph: " << digraph.name() << " (" << digraph.arc_list() << ")\n";
        for (const auto& arc : report.per_forbidden_arc) {
            std::cout << "forbidden " << pair_label(arc.from, arc.to)
                      << ": threshold=" << arc.condition.threshold.str()
                      << " inequality=" << (arc.condition.inequality_holds ? "yes" : "no")
                      << " equality=" << (arc.condition.equality_holds ? "yes" : "no");
            if (report.strict_checked && !arc.failing_levels.empty()) {
                std::cout << " failing_levels=";
                for (std::size_t i = 0; i < arc.failing_levels.size(); ++i)
                    std::cout << (i ? "," : "") << arc.failing_levels[i];
            }
            std::cout << "\n";
        }
        if (report.solution_checked)
            std::cout << "emitted solution on allowed arcs: "
                      << (report.solution_respects ? "yes" : "no") << "\n";
        if (report.strict_checked)
            std::cout << "all levels compatible: " << (report.strict_compatible ? "yes" : "no")
                      << "\n";
        std::cout << "compatible: " << (report.compatible ? "yes" : "no") << "\n";
    }
    return exit_ok;
}

template <class Arith>
int run_synth(const wth::weight_matrix<Arith>& base, const wth::variant_digraph& digraph,
              const options& opt) {
    using namespace wth;
    auto result = synthesize_weights(digraph, base, opt.n);
    if (opt.format == "csv") {
        std::cout << "from,to,weight\n";
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j)
                if (i != j)
                    std::cout << i << "," << j << "," << result.at(peg(i), peg(j)).str() << "\n";
    } else {
        // JSON in both remaining formats: the output is itself a valid
        // weights file that can be fed back through --weights
        emit_json(weights_to_json(result));
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------
// count / bench

int run_count(const options& opt) {
    using namespace wth;
    recursion_stats stats;
    try {
        stats = count_subproblems(opt.n);
    } catch (const std::overflow_error&) {
        std::cerr << "n=" << opt.n << " overflows the 128-bit subproblem counters (max n=51)\n";
        return exit_cap;
    }
    if (opt.format == "json") {
        emit_json({{"n", opt.n},
                   {"distinct_subproblems", stats.distinct_subproblems},
                   {"naive_calls", to_string(stats.naive_calls)},
                   {"formula_vn", to_string(stats.formula_vn)}});
    } else if (opt.format == "csv") {
        std::cout << "n,distinct_subproblems,naive_calls,formula_vn\n";
        std::cout << opt.n << "," << stats.distinct_subproblems << ","
                  << to_string(stats.naive_calls) << "," << to_string(stats.formula_vn) << "\n";
    } else {
        std::cout << "n: " << opt.n << "\n"
                  << "distinct subproblems (instrumented): " << stats.distinct_subproblems << "\n"
                  << "unmemoized calls:                    " << to_string(stats.naive_calls)
                  << "\n"
                  << "reported formula 6^(n-2)+4:          " << to_string(stats.formula_vn) << "\n";
    }
    return exit_ok;
}

int run_bench(const options& opt) {
    using namespace wth;
    using clock = std::chrono::steady_clock;

    weight_matrix<float_arith> uniform;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            if (i != j) uniform.set(peg(i), peg(j), float_cost(1.0));

    std::cout << "n,operation,wall_time_ns\n";

    // log-spaced sweep of the memoized table construction
    std::vector<int> sweep;
    for (double x = 1; x <= opt.bench_max; x *= 1.5849) {
        int n = static_cast<int>(x);
        if (sweep.empty() || n > sweep.back()) sweep.push_back(n);
    }
    if (sweep.empty() || sweep.back() != opt.bench_max) sweep.push_back(opt.bench_max);
    for (int n : sweep) {
        int reps = std::max(1, 2000 / (n + 1));
        auto t0 = clock::now();
        for (int r = 0; r < reps; ++r) {
            auto table = compute_cost_table(uniform, n);
            (void)table;
        }
        auto dt = std::chrono::duration_cast<std::chrono::nanoseconds>(clock::now() - t0);
        std::cout << n << ",dp_cost_table," << dt.count() / reps << "\n";
    }

    for (int n = 1; n <= opt.oracle_cap; ++n) {
        auto t0 = clock::now();
        auto c = dijkstra_min_cost(uniform, n, peg(1), peg(3), opt.oracle_cap);
        auto dt = std::chrono::duration_cast<std::chrono::nanoseconds>(clock::now() - t0);
        (void)c;
        std::cout << n << ",oracle_dijkstra," << dt.count() << "\n";
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------

int dispatch(const CLI::App& app, const options& opt) {
    using namespace wth;

    if (app.got_subcommand("verify")) return run_verify(opt);
    if (app.got_subcommand("count")) return run_count(opt);
    if (app.got_subcommand("bench")) return run_bench(opt);

    std::optional<variant_digraph> digraph;
    if (app.got_subcommand("variants") || app.got_subcommand("synth"))
        digraph = variant_digraph::parse(opt.digraph);

    auto weights = load_weights(opt.weights);
    if (app.got_subcommand("cost")) {
        return weights.mode == weight_mode::exact ? run_cost(weights.exact, opt)
                                                  : run_cost(weights.floating, opt);
    }
    if (app.got_subcommand("solve")) {
        return weights.mode == weight_mode::exact ? run_solve(weights.exact, opt)
                                                  : run_solve(weights.floating, opt);
    }
    if (app.got_subcommand("variants")) {
        return weights.mode == weight_mode::exact ? run_variants(weights.exact, *digraph, opt)
                                                  : run_variants(weights.floating, *digraph, opt);
    }
    if (app.got_subcommand("synth")) {
        return weights.mode == weight_mode::exact ? run_synth(weights.exact, *digraph, opt)
                                                  : run_synth(weights.floating, *digraph, opt);
    }
    return exit_input;
}

}  // namespace

int main(int argc, char** argv) {
    options opt;
    CLI::App app{"Weighted Tower of Hanoi solver"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub, bool needs_weights) {
        if (needs_weights)
            sub->add_option("--weights", opt.weights, "weights file path or inline JSON")
                ->required();
        sub->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"table", "json", "csv"}));
    };

    auto* cost = app.add_subcommand("cost", "minimum total transfer cost");
    add_common(cost, true);
    cost->add_option("--n", opt.n, "disc count")->required()->check(CLI::NonNegativeNumber);
    cost->add_option("--from", opt.from, "source peg")->check(CLI::Range(1, 3));
    cost->add_option("--to", opt.to, "destination peg")->check(CLI::Range(1, 3));
    cost->add_flag("--dump-table", opt.dump_table, "print the full L/R cost table");

    auto* solve = app.add_subcommand("solve", "optimal move sequence");
    add_common(solve, true);
    solve->add_option("--n", opt.n, "disc count")->required()->check(CLI::NonNegativeNumber);
    solve->add_option("--from", opt.from, "source peg")->check(CLI::Range(1, 3));
    solve->add_option("--to", opt.to, "destination peg")->check(CLI::Range(1, 3));
    solve->add_option("--emit-cap", opt.emit_cap, "largest n whose solution is materialized");

    auto* verify = app.add_subcommand(
        "verify", "randomized equivalence check against the exhaustive state-space oracle");
    add_common(verify, false);
    int verify_n = -1;
    verify->add_option("--n", verify_n, "disc count (default: sweep 1..6)")
        ->check(CLI::NonNegativeNumber);
    verify->add_option("--trials", opt.trials, "random matrices per n")
        ->check(CLI::PositiveNumber);
    verify->add_option("--seed", opt.seed, "random seed");
    verify->add_option("--oracle-cap", opt.oracle_cap, "largest n the oracle will search");

    auto* variants = app.add_subcommand("variants", "restriction compatibility report");
    add_common(variants, true);
    variants->add_option("--n", opt.n, "disc count")->required()->check(CLI::PositiveNumber);
    variants->add_option("--digraph", opt.digraph, "K3|K3-|L3|C3+|C3 or arc list \"1>2,2>1,...\"")
        ->required();
    variants->add_flag("--strict", opt.strict, "evaluate the conditions at every level m <= n");

    auto* synth = app.add_subcommand("synth",
                                     "synthesize finite forbidden-arc weights for a digraph");
    add_common(synth, true);
    synth->add_option("--n", opt.n, "disc count")->required()->check(CLI::PositiveNumber);
    synth->add_option("--digraph", opt.digraph, "movement digraph")->required();

    auto* count = app.add_subcommand("count", "recursion subproblem statistics");
    add_common(count, false);
    count->add_option("--n", opt.n, "disc count")->required()->check(CLI::NonNegativeNumber);

    auto* bench = app.add_subcommand("bench", "timing sweep (CSV on stdout)");
    bench->add_option("--n", opt.bench_max, "largest table size in the sweep")
        ->check(CLI::PositiveNumber);
    bench->add_option("--oracle-cap", opt.oracle_cap, "largest n for the oracle timing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_input;
    }
    if (verify_n >= 0) opt.verify_n = verify_n;

    try {
        return dispatch(app, opt);
    } catch (const wth::cap_exceeded_error& e) {
        std::cerr << e.what() << "\n";
        return exit_cap;
    } catch (const wth::input_error& e) {
        std::cerr << e.what() << "\n";
        return exit_input;
    } catch (const wth::not_strongly_connected_error& e) {
        std::cerr << e.what() << "\n";
        return exit_input;
    } catch (const wth::error& e) {
        std::cerr << e.what() << "\n";
        return exit_input;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return exit_input;
    }
}
