#pragma once

// Seeded weight-matrix generators for randomized verification. Values
// are produced from raw mt19937_64 outputs so the same seed gives the
// same matrices on every platform. Small integer entries include zeros,
// and with probability ~1/5 one arc is forced to w_ij = w_ik + w_kj,
// because ties are where the move-count tie-break bites.

#include "wth/model.hpp"
#include "wth/numeric.hpp"

#include <random>

namespace wth {

inline weight_matrix<exact_arith> random_integer_weights(std::mt19937_64& rng, int max_value = 10,
                                                         bool force_ties = true) {
    weight_matrix<exact_arith> w;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            if (i != j)
                w.set(peg(i), peg(j),
                      exact_cost(exact_arith::from_int(
                          static_cast<long long>(rng() % (max_value + 1)))));
    if (force_ties && rng() % 5 == 0) {
        auto [i, j] = pair_from_index(static_cast<int>(rng() % num_ordered_pairs));
        peg k = intermediate_peg(i, j);
        w.set(i, j, w.at(i, k) + w.at(k, j));
    }
    return w;
}

inline weight_matrix<exact_arith> random_symmetric_weights(std::mt19937_64& rng,
                                                           int max_value = 10) {
    weight_matrix<exact_arith> w;
    for (int i = 1; i <= 3; ++i) {
        for (int j = i + 1; j <= 3; ++j) {
            exact_cost c(exact_arith::from_int(static_cast<long long>(rng() % (max_value + 1))));
            w.set(peg(i), peg(j), c);
            w.set(peg(j), peg(i), c);
        }
    }
    return w;
}

}  // namespace wth
