#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "wth/oracle.hpp"
#include "wth/random_weights.hpp"
#include "wth/variants.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace wth;
using wth::testing::example_weights;
using wth::testing::make_weights;
using wth::testing::rat;
using wth::testing::uniform_weights;

TEST_CASE("five canonical digraphs") {
    auto ds = five_digraphs();
    REQUIRE(ds.size() == 5);
    std::multiset<int> counts;
    for (const auto& d : ds) {
        counts.insert(d.arc_count());
        CHECK(d.is_strongly_connected());
    }
    CHECK(counts == std::multiset<int>{6, 5, 4, 4, 3});

    CHECK(ds[0].tag() == digraph_tag::k3);
    CHECK(ds[0].arc_count() == 6);
    const auto& c3 = ds[4];
    CHECK(c3.tag() == digraph_tag::c3);
    CHECK(c3.arc_count() == 3);
    CHECK(c3.has_arc(peg(1), peg(2)));
    CHECK(c3.has_arc(peg(2), peg(3)));
    CHECK(c3.has_arc(peg(3), peg(1)));
}

TEST_CASE("digraph parsing round-trips") {
    CHECK(variant_digraph::parse("L3") == variant_digraph::linear());
    CHECK(variant_digraph::parse("K3-") == variant_digraph::k3_minus());
    CHECK(variant_digraph::parse("C3+") == variant_digraph::c3_plus());
    CHECK(variant_digraph::parse("1>2,2>1,2>3,3>2") == variant_digraph::linear());
    for (const auto& d : five_digraphs()) CHECK(variant_digraph::parse(d.arc_list()) == d);
    CHECK_THROWS_AS(variant_digraph::parse("1>1"), std::invalid_argument);
    CHECK_THROWS_AS(variant_digraph::parse("nonsense"), std::invalid_argument);
    CHECK(!variant_digraph::parse("1>2,2>3").is_strongly_connected());
}

TEST_CASE("forbidden_arc_condition with an infinite arc") {
    auto w = make_weights({{{0, 1, -1}, {1, 0, 1}, {1, 1, 0}}});
    auto c = forbidden_arc_condition(w, 2, peg(1), peg(3));
    CHECK(c.inequality_holds);
    CHECK(c.equality_holds);
}

TEST_CASE("forbidden_arc_condition threshold on the worked example") {
    // threshold(1,3 at n=2) = w12 + w23 + max{0, 2C1[1,3] + C1[3,1]
    //                                           - C1[1,2] - C1[2,3]} = 15
    auto c = forbidden_arc_condition(example_weights(), 2, peg(1), peg(3));
    CHECK(c.threshold.value() == rat(15));
    CHECK(!c.inequality_holds);  // w13 = 15 is not strictly above
    CHECK(c.equality_holds);     // the L = R tie makes the right value the minimum
}

TEST_CASE("forbidden_arc_condition degenerates at n=1") {
    auto w = example_weights();
    for (int idx = 0; idx < num_ordered_pairs; ++idx) {
        auto [i, j] = pair_from_index(idx);
        peg k = intermediate_peg(i, j);
        auto c = forbidden_arc_condition(w, 1, i, j);
        CHECK(c.threshold == w.at(i, k) + w.at(k, j));
        CHECK(c.inequality_holds == (w.at(i, j) > c.threshold));
    }
}

TEST_CASE("respects_variant: complete digraph is vacuously compatible") {
    auto report = respects_variant(example_weights(), 5, variant_digraph::complete());
    CHECK(report.compatible);
    CHECK(report.per_forbidden_arc.empty());
}

TEST_CASE("respects_variant: infinite 1<->3 arcs realize the linear variant") {
    auto w = make_weights({{{0, 1, -1}, {1, 0, 1}, {-1, 1, 0}}});
    for (int n = 1; n <= 8; ++n) {
        auto report = respects_variant(w, n, variant_digraph::linear());
        CHECK(report.compatible);
        CHECK(report.solution_checked);
        CHECK(report.solution_respects);
        instance<exact_arith> inst(n, peg(1), peg(3), w);
        auto sol = generate_solution(inst);
        CHECK(sol.move_count == checked_pow_u128(3, n) - 1);
        for (const auto& m : sol.moves) CHECK(variant_digraph::linear().has_arc(m.from, m.to));
    }
}

TEST_CASE("respects_variant: equal weights are incompatible with C3 and L3") {
    auto w = uniform_weights(1);
    auto c3 = respects_variant(w, 1, variant_digraph::cyclic());
    CHECK(!c3.compatible);
    for (const auto& arc : c3.per_forbidden_arc) CHECK(!arc.condition.inequality_holds);
    CHECK(!respects_variant(w, 3, variant_digraph::linear()).compatible);
}

TEST_CASE("respects_variant rejects non-strongly-connected digraphs") {
    CHECK_THROWS_AS(respects_variant(example_weights(), 3, variant_digraph::parse("1>2,2>3")),
                    not_strongly_connected_error);
}

TEST_CASE("linear_condition matches the L3 inequality part") {
    auto inf13 = make_weights({{{0, 1, -1}, {1, 0, 1}, {-1, 1, 0}}});
    CHECK(linear_condition(inf13, 4));
    CHECK(!linear_condition(uniform_weights(1), 3));

    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        auto w = random_integer_weights(rng);
        int n = 1 + static_cast<int>(rng() % 6);
        auto report = respects_variant(w, n, variant_digraph::linear());
        bool ineq_part = true;
        for (const auto& arc : report.per_forbidden_arc)
            ineq_part = ineq_part && arc.condition.inequality_holds;
        CHECK(linear_condition(w, n) == ineq_part);
    }
}

TEST_CASE("cyclic_condition matches the C3 inequality part") {
    auto w = make_weights({{{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}}});
    CHECK(cyclic_condition(w, 3));
    CHECK(!cyclic_condition(uniform_weights(2), 2));

    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 200; ++trial) {
        auto w = random_integer_weights(rng);
        int n = 1 + static_cast<int>(rng() % 6);
        auto report = respects_variant(w, n, variant_digraph::cyclic());
        bool ineq_part = true;
        for (const auto& arc : report.per_forbidden_arc)
            ineq_part = ineq_part && arc.condition.inequality_holds;
        CHECK(cyclic_condition(w, n) == ineq_part);
    }
}

TEST_CASE("lemma-1 iff against the oracle's optimal-arc usage") {
    // for the instance transferring from i to j, the condition for arc
    // (i,j) holds iff no minimum-cost solution moves a disc from i to j;
    // arc usage is decided from forward/backward search distances, which
    // covers every optimal solution at once
    std::mt19937_64 rng(33);
    int cond_cases = 0;
    for (int trial = 0; trial < 150; ++trial) {
        auto w = random_integer_weights(rng);
        int n = 1 + static_cast<int>(rng() % 5);
        for (int idx = 0; idx < num_ordered_pairs; ++idx) {
            auto [i, j] = pair_from_index(idx);
            auto c = forbidden_arc_condition(w, n, i, j);
            bool cond = c.inequality_holds && c.equality_holds;
            bool used = optimal_arc_usage(w, n, i, j)[i.value() - 1][j.value() - 1];
            CHECK(cond == !used);
            if (cond) ++cond_cases;
        }
    }
    CHECK(cond_cases >= 15);  // the sample genuinely exercises the condition
}

TEST_CASE("permutation equivariance of thresholds") {
    std::mt19937_64 rng(34);
    const std::array<std::array<int, 3>, 6> perms = {
        {{1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1}}};
    for (int trial = 0; trial < 40; ++trial) {
        auto w = random_integer_weights(rng);
        int n = 1 + static_cast<int>(rng() % 5);
        for (const auto& perm : perms) {
            auto wp = w.permuted(perm);
            for (int idx = 0; idx < num_ordered_pairs; ++idx) {
                auto [i, j] = pair_from_index(idx);
                auto cp = forbidden_arc_condition(wp, n, i, j);
                auto c = forbidden_arc_condition(w, n, peg(perm[i.value() - 1]),
                                                 peg(perm[j.value() - 1]));
                CHECK(cp.threshold == c.threshold);
                CHECK(cp.inequality_holds == c.inequality_holds);
                CHECK(cp.equality_holds == c.equality_holds);
            }
        }
    }
}

TEST_CASE("digraph permutation matches weight permutation") {
    const std::array<int, 3> perm = {2, 3, 1};
    auto l3p = variant_digraph::linear().permuted(perm);
    CHECK(l3p.arc_count() == 4);
    CHECK(l3p.is_strongly_connected());
    // arc (i,j) allowed in the image iff (perm i, perm j) allowed originally
    for (int idx = 0; idx < num_ordered_pairs; ++idx) {
        auto [i, j] = pair_from_index(idx);
        CHECK(l3p.has_arc(i, j) == variant_digraph::linear().has_arc(peg(perm[i.value() - 1]),
                                                                     peg(perm[j.value() - 1])));
    }
}

TEST_CASE("synthesize_weights: complete digraph returns the base unchanged") {
    auto base = example_weights();
    auto syn = synthesize_weights(variant_digraph::complete(), base, 4);
    for (int idx = 0; idx < num_ordered_pairs; ++idx) {
        auto [i, j] = pair_from_index(idx);
        CHECK(syn.at(i, j) == base.at(i, j));
    }
}

TEST_CASE("synthesize_weights: linear variant from uniform base") {
    auto base = uniform_weights(1);
    auto syn = synthesize_weights(variant_digraph::linear(), base, 3);
    auto report = respects_variant(syn, 3, variant_digraph::linear());
    CHECK(report.compatible);
    CHECK(report.solution_respects);
    CHECK(!syn.at(peg(1), peg(3)).is_infinite());
    CHECK(!syn.at(peg(3), peg(1)).is_infinite());

    instance<exact_arith> inst(3, peg(1), peg(3), syn);
    auto sol = generate_solution(inst);
    CHECK(sol.move_count == 26);
    CHECK(sol.move_count == bfs_min_moves(variant_digraph::linear(), 3, peg(1), peg(3)));
    for (const auto& m : sol.moves) CHECK(variant_digraph::linear().has_arc(m.from, m.to));
}

TEST_CASE("synthesize_weights: cyclic variant from uniform base") {
    auto base = uniform_weights(1);
    auto syn = synthesize_weights(variant_digraph::cyclic(), base, 2);
    CHECK(respects_variant(syn, 2, variant_digraph::cyclic()).compatible);
    instance<exact_arith> inst(2, peg(1), peg(3), syn);
    for (const auto& m : generate_solution(inst).moves)
        CHECK(variant_digraph::cyclic().has_arc(m.from, m.to));
}

TEST_CASE("synthesize_weights is idempotent") {
    std::mt19937_64 rng(35);
    for (const auto& d : five_digraphs()) {
        for (int trial = 0; trial < 4; ++trial) {
            auto base = random_integer_weights(rng, 6, false);
            int n = 1 + static_cast<int>(rng() % 4);
            auto syn = synthesize_weights(d, base, n);
            CHECK(respects_variant(syn, n, d).compatible);
            auto syn2 = synthesize_weights(d, syn, n);
            for (int idx = 0; idx < num_ordered_pairs; ++idx) {
                auto [i, j] = pair_from_index(idx);
                CHECK(syn2.at(i, j).cmp(syn.at(i, j)) == 0);
            }
        }
    }
}

TEST_CASE("synthesize_weights stays just above the reported threshold") {
    auto base = uniform_weights(2);
    for (int n : {1, 2, 3, 4}) {
        auto syn = synthesize_weights(variant_digraph::linear(), base, n);
        auto report = respects_variant(syn, n, variant_digraph::linear());
        REQUIRE(report.compatible);
        for (const auto& arc : report.per_forbidden_arc) {
            REQUIRE(!arc.condition.threshold.is_infinite());
            const auto& v = syn.at(arc.from, arc.to).value();
            const auto& t = arc.condition.threshold.value();
            CHECK(v > t);
            // within a hair of the critical boundary
            CHECK(v - t < rat(1, 1000));
        }
    }
}

TEST_CASE("synthesize_weights rejects non-strongly-connected digraphs") {
    CHECK_THROWS_AS(synthesize_weights(variant_digraph::parse("1>2,2>3"), uniform_weights(1), 3),
                    not_strongly_connected_error);
}

TEST_CASE("synthesize_weights requires finite allowed arcs") {
    auto base = make_weights({{{0, -1, 1}, {1, 0, 1}, {1, 1, 0}}});
    CHECK_THROWS_AS(synthesize_weights(variant_digraph::complete(), base, 2),
                    std::invalid_argument);
    // K3 with no forbidden arcs returns base before validation only when
    // nothing needs synthesizing; forbidden-arc digraphs must validate
    CHECK_THROWS_AS(synthesize_weights(variant_digraph::linear(), base, 2),
                    std::invalid_argument);
}

TEST_CASE("strict mode reports levels where the conditions fail") {
    // compatible at the top level does not imply compatible at every
    // level; strict mode surfaces whichever levels fail
    std::mt19937_64 rng(36);
    int divergences = 0;
    for (int trial = 0; trial < 300; ++trial) {
        auto w = random_integer_weights(rng);
        int n = 2 + static_cast<int>(rng() % 5);
        for (const auto& d : {variant_digraph::linear(), variant_digraph::cyclic()}) {
            auto report = respects_variant(w, n, d, true);
            CHECK(report.strict_checked);
            bool any_failing = false;
            for (const auto& arc : report.per_forbidden_arc)
                any_failing = any_failing || !arc.failing_levels.empty();
            CHECK(report.strict_compatible == !any_failing);
            if (report.compatible && !report.strict_compatible) ++divergences;
            // failing levels never include a level that actually passes
            for (const auto& arc : report.per_forbidden_arc) {
                for (int m : arc.failing_levels) {
                    auto c = forbidden_arc_condition(w, m, arc.from, arc.to);
                    CHECK(!(c.inequality_holds && c.equality_holds));
                }
            }
        }
    }
    (void)divergences;  // may legitimately be zero on this seed
}
