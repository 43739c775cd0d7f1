#pragma once

// Movement digraphs over the three pegs. An arc (i,j) means moves from
// peg i to peg j are permitted. The five canonical strongly connected
// digraphs are:
//
//   K3   all six arcs
//   K3-  all arcs except 1>3
//   L3   1<->2 and 2<->3
//   C3+  the cycle 1>2>3>1 plus the reverse arc 2>1
//   C3   the cycle 1>2>3>1
//
// Other orientations are obtained by permuting pegs, not by new
// canonical forms.

#include "wth/model.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace wth {

enum class digraph_tag { k3, k3_minus, l3, c3_plus, c3, custom };

class variant_digraph {
public:
    // mask bit = pair_index(from, to)
    explicit variant_digraph(int arc_mask);

    static variant_digraph complete();  // K3
    static variant_digraph k3_minus();
    static variant_digraph linear();  // L3
    static variant_digraph c3_plus();
    static variant_digraph cyclic();  // C3

    // accepts a canonical name (K3, K3-, L3, C3+, C3) or an arc list
    // such as "1>2,2>1,2>3,3>2"
    static variant_digraph parse(const std::string& text);

    bool has_arc(peg from, peg to) const;
    int arc_count() const;
    int arc_mask() const { return mask_; }
    bool is_strongly_connected() const { return strongly_connected_; }

    digraph_tag tag() const { return tag_; }
    std::string name() const;      // canonical tag name, or the arc list
    std::string arc_list() const;  // "1>2,2>3,..."

    std::vector<std::pair<peg, peg>> arcs() const;
    std::vector<std::pair<peg, peg>> forbidden_arcs() const;

    // relabel pegs: the result has arc (i,j) iff this has
    // (perm[i-1], perm[j-1]); mirrors weight_matrix::permuted
    variant_digraph permuted(const std::array<int, 3>& perm) const;

    bool operator==(const variant_digraph& o) const { return mask_ == o.mask_; }
    bool operator!=(const variant_digraph& o) const { return mask_ != o.mask_; }

private:
    int mask_;
    digraph_tag tag_;
    bool strongly_connected_;
};

// The five strongly connected digraphs on three pegs, in canonical
// labeling, with arc counts 6, 5, 4, 4, 3.
std::vector<variant_digraph> five_digraphs();

}  // namespace wth
