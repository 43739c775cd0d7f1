#pragma once

// Domain types for the weighted Tower of Hanoi: pegs, weight matrices,
// instances, moves, solutions, and the move-legality checker (replay).

#include "wth/numeric.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wth {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct input_error : error {
    using error::error;
};

struct illegal_move_error : error {
    illegal_move_error(std::size_t index, const std::string& reason)
        : error("illegal move at index " + std::to_string(index) + ": " + reason),
          index(index),
          reason(reason) {}
    std::size_t index;
    std::string reason;
};

struct wrong_final_state_error : error {
    wrong_final_state_error() : error("final configuration is not the goal tower") {}
};

struct infinite_cost_error : error {
    infinite_cost_error() : error("no finite-cost plan exists under the given weights") {}
};

struct not_symmetric_error : error {
    not_symmetric_error() : error("weight matrix is not symmetric") {}
};

struct cap_exceeded_error : error {
    using error::error;
};

struct unreachable_error : error {
    using error::error;
};

struct not_strongly_connected_error : error {
    not_strongly_connected_error() : error("movement digraph is not strongly connected") {}
};

struct synthesis_failed_error : error {
    using error::error;
};

// One of the three pegs, numbered 1..3.
class peg {
public:
    explicit peg(int value) : value_(value) {
        if (value < 1 || value > 3) throw std::invalid_argument("peg must be 1, 2 or 3");
    }

    int value() const { return value_; }

    bool operator==(const peg& o) const { return value_ == o.value_; }
    bool operator!=(const peg& o) const { return value_ != o.value_; }

private:
    int value_;
};

// The peg distinct from both i and j (k = 6 - i - j in 1-based numbering).
inline peg intermediate_peg(peg i, peg j) {
    if (i == j) throw std::invalid_argument("intermediate_peg requires distinct pegs");
    return peg(6 - i.value() - j.value());
}

// Index of an ordered peg pair in the fixed order
// (1,2) (1,3) (2,1) (2,3) (3,1) (3,2).
inline int pair_index(peg from, peg to) {
    if (from == to) throw std::invalid_argument("pair_index requires distinct pegs");
    static constexpr int table[3][3] = {{-1, 0, 1}, {2, -1, 3}, {4, 5, -1}};
    return table[from.value() - 1][to.value() - 1];
}

inline std::pair<peg, peg> pair_from_index(int idx) {
    static constexpr int table[6][2] = {{1, 2}, {1, 3}, {2, 1}, {2, 3}, {3, 1}, {3, 2}};
    if (idx < 0 || idx >= 6) throw std::invalid_argument("pair index out of range");
    return {peg(table[idx][0]), peg(table[idx][1])};
}

constexpr int num_ordered_pairs = 6;

// 3x3 matrix of arc costs, indexed (from, to). The diagonal is forced to
// zero at construction; no rule ever reads it.
template <class Arith>
class weight_matrix {
public:
    using cost = ext_cost<Arith>;

    weight_matrix() = default;

    explicit weight_matrix(const std::array<std::array<cost, 3>, 3>& w) : w_(w) {
        for (int i = 0; i < 3; ++i) w_[i][i] = cost();
    }

    const cost& at(peg from, peg to) const { return w_[from.value() - 1][to.value() - 1]; }

    void set(peg from, peg to, cost c) {
        if (from == to) return;  // diagonal stays zero
        w_[from.value() - 1][to.value() - 1] = std::move(c);
    }

    bool is_symmetric() const {
        for (int i = 1; i <= 3; ++i)
            for (int j = i + 1; j <= 3; ++j)
                if (at(peg(i), peg(j)).cmp(at(peg(j), peg(i))) != 0) return false;
        return true;
    }

    bool all_finite() const {
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j)
                if (i != j && at(peg(i), peg(j)).is_infinite()) return false;
        return true;
    }

    // relabel pegs: entry (i,j) of the result is entry (perm(i), perm(j))
    // of this matrix, where perm maps new labels to old ones
    weight_matrix permuted(const std::array<int, 3>& perm) const {
        weight_matrix r;
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j)
                if (i != j) r.set(peg(i), peg(j), at(peg(perm[i - 1]), peg(perm[j - 1])));
        return r;
    }

    weight_matrix scaled(const typename Arith::number& factor) const {
        weight_matrix r;
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j)
                if (i != j) r.set(peg(i), peg(j), at(peg(i), peg(j)).scaled(factor));
        return r;
    }

private:
    std::array<std::array<cost, 3>, 3> w_{};
};

// A single disc move. Disc 1 is the smallest.
struct move {
    int disc;
    peg from;
    peg to;

    move(int disc, peg from, peg to) : disc(disc), from(from), to(to) {
        if (from == to) throw std::invalid_argument("move requires distinct pegs");
        if (disc < 1) throw std::invalid_argument("disc numbers start at 1");
    }

    bool operator==(const move& o) const {
        return disc == o.disc && from == o.from && to == o.to;
    }
};

// A transfer problem: move an n-disc tower from source to destination
// under the given arc weights.
template <class Arith>
struct instance {
    int n;
    peg source;
    peg destination;
    weight_matrix<Arith> weights;

    instance(int n, peg source, peg destination, weight_matrix<Arith> weights)
        : n(n), source(source), destination(destination), weights(std::move(weights)) {
        if (n < 0) throw std::invalid_argument("disc count must be nonnegative");
    }
};

template <class Arith>
struct solution {
    std::vector<move> moves;
    ext_cost<Arith> total_cost;
    u128 move_count = 0;
};

using move_sink = std::function<void(const move&)>;

// Simulates a move list from the full tower on `source`, enforcing the
// three placement rules, and checks the final configuration is the full
// tower on `destination`. Returns the validated solution with its cost
// recomputed from the arc weights.
template <class Arith>
solution<Arith> replay(const instance<Arith>& inst, const std::vector<move>& moves) {
    // towers[p] holds disc numbers bottom-to-top
    std::array<std::vector<int>, 3> towers;
    for (int d = inst.n; d >= 1; --d) towers[inst.source.value() - 1].push_back(d);

    ext_cost<Arith> total;
    for (std::size_t idx = 0; idx < moves.size(); ++idx) {
        const move& m = moves[idx];
        if (m.disc > inst.n)
            throw illegal_move_error(idx, "disc " + std::to_string(m.disc) + " does not exist");
        auto& from = towers[m.from.value() - 1];
        auto& to = towers[m.to.value() - 1];
        if (from.empty() || from.back() != m.disc)
            throw illegal_move_error(idx, "disc " + std::to_string(m.disc) + " not topmost on peg " +
                                              std::to_string(m.from.value()));
        if (!to.empty() && to.back() < m.disc)
            throw illegal_move_error(idx, "disc " + std::to_string(m.disc) + " placed on smaller disc " +
                                              std::to_string(to.back()));
        to.push_back(m.disc);
        from.pop_back();
        total += inst.weights.at(m.from, m.to);
    }

    const auto& goal = towers[inst.destination.value() - 1];
    bool done = static_cast<int>(goal.size()) == inst.n;
    for (int d = 0; done && d < inst.n; ++d)
        if (goal[d] != inst.n - d) done = false;
    if (!done) throw wrong_final_state_error();

    return solution<Arith>{moves, total, static_cast<u128>(moves.size())};
}

}  // namespace wth
