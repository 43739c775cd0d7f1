#pragma once

#include "wth/model.hpp"
#include "wth/numeric.hpp"

#include <array>

namespace wth::testing {

// rows are from-pegs, columns to-pegs; -1 stands for infinity
inline weight_matrix<exact_arith> make_weights(const std::array<std::array<long long, 3>, 3>& vals) {
    weight_matrix<exact_arith> w;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            if (i != j)
                w.set(peg(i), peg(j),
                      vals[i - 1][j - 1] < 0
                          ? exact_cost::infinity()
                          : exact_cost(exact_arith::from_int(vals[i - 1][j - 1])));
    return w;
}

// the worked-example matrix
inline weight_matrix<exact_arith> example_weights() {
    return make_weights({{{0, 3, 15}, {8, 0, 2}, {5, 6, 0}}});
}

inline weight_matrix<exact_arith> uniform_weights(long long x) {
    return make_weights({{{0, x, x}, {x, 0, x}, {x, x, 0}}});
}

inline exact_arith::number rat(long long p, long long q = 1) {
    return exact_arith::number(p) / q;
}

}  // namespace wth::testing
