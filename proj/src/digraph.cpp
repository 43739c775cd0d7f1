#include "wth/digraph.hpp"

#include <sstream>
#include <stdexcept>

namespace wth {

namespace {

constexpr int full_mask = (1 << num_ordered_pairs) - 1;

int mask_of(std::initializer_list<std::pair<int, int>> arcs) {
    int mask = 0;
    for (auto [i, j] : arcs) mask |= 1 << pair_index(peg(i), peg(j));
    return mask;
}

const int k3_mask = full_mask;
const int k3_minus_mask = full_mask & ~(1 << pair_index(peg(1), peg(3)));
const int l3_mask = mask_of({{1, 2}, {2, 1}, {2, 3}, {3, 2}});
const int c3_mask = mask_of({{1, 2}, {2, 3}, {3, 1}});
const int c3_plus_mask = c3_mask | (1 << pair_index(peg(2), peg(1)));

digraph_tag classify(int mask) {
    if (mask == k3_mask) return digraph_tag::k3;
    if (mask == k3_minus_mask) return digraph_tag::k3_minus;
    if (mask == l3_mask) return digraph_tag::l3;
    if (mask == c3_plus_mask) return digraph_tag::c3_plus;
    if (mask == c3_mask) return digraph_tag::c3;
    return digraph_tag::custom;
}

bool compute_strong_connectivity(int mask) {
    // reachability closure over 3 vertices
    bool reach[3][3] = {};
    for (int v = 0; v < 3; ++v) reach[v][v] = true;
    for (int idx = 0; idx < num_ordered_pairs; ++idx) {
        if (mask & (1 << idx)) {
            auto [f, t] = pair_from_index(idx);
            reach[f.value() - 1][t.value() - 1] = true;
        }
    }
    for (int k = 0; k < 3; ++k)
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                if (reach[a][k] && reach[k][b]) reach[a][b] = true;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            if (!reach[a][b]) return false;
    return true;
}

}  // namespace

variant_digraph::variant_digraph(int arc_mask)
    : mask_(arc_mask), tag_(classify(arc_mask)), strongly_connected_(compute_strong_connectivity(arc_mask)) {
    if (arc_mask < 0 || arc_mask > full_mask)
        throw std::invalid_argument("arc mask out of range");
}

variant_digraph variant_digraph::complete() { return variant_digraph(k3_mask); }
variant_digraph variant_digraph::k3_minus() { return variant_digraph(k3_minus_mask); }
variant_digraph variant_digraph::linear() { return variant_digraph(l3_mask); }
variant_digraph variant_digraph::c3_plus() { return variant_digraph(c3_plus_mask); }
variant_digraph variant_digraph::cyclic() { return variant_digraph(c3_mask); }

variant_digraph variant_digraph::parse(const std::string& text) {
    if (text == "K3") return complete();
    if (text == "K3-") return k3_minus();
    if (text == "L3") return linear();
    if (text == "C3+") return c3_plus();
    if (text == "C3") return cyclic();

    int mask = 0;
    std::istringstream in(text);
    std::string token;
    bool any = false;
    while (std::getline(in, token, ',')) {
        if (token.size() != 3 || token[1] != '>' || token[0] < '1' || token[0] > '3' ||
            token[2] < '1' || token[2] > '3' || token[0] == token[2])
            throw std::invalid_argument("bad arc '" + token + "' (expected e.g. \"1>2\")");
        mask |= 1 << pair_index(peg(token[0] - '0'), peg(token[2] - '0'));
        any = true;
    }
    if (!any) throw std::invalid_argument("empty digraph literal");
    return variant_digraph(mask);
}

bool variant_digraph::has_arc(peg from, peg to) const {
    return mask_ & (1 << pair_index(from, to));
}

int variant_digraph::arc_count() const {
    int c = 0;
    for (int idx = 0; idx < num_ordered_pairs; ++idx)
        if (mask_ & (1 << idx)) ++c;
    return c;
}

std::string variant_digraph::name() const {
    switch (tag_) {
        case digraph_tag::k3: return "K3";
        case digraph_tag::k3_minus: return "K3-";
        case digraph_tag::l3: return "L3";
        case digraph_tag::c3_plus: return "C3+";
        case digraph_tag::c3: return "C3";
        case digraph_tag::custom: return arc_list();
    }
    return arc_list();
}

std::string variant_digraph::arc_list() const {
    std::string out;
    for (auto [f, t] : arcs()) {
        if (!out.empty()) out.push_back(',');
        out += std::to_string(f.value());
        out.push_back('>');
        out += std::to_string(t.value());
    }
    return out;
}

std::vector<std::pair<peg, peg>> variant_digraph::arcs() const {
    std::vector<std::pair<peg, peg>> out;
    for (int idx = 0; idx < num_ordered_pairs; ++idx)
        if (mask_ & (1 << idx)) out.push_back(pair_from_index(idx));
    return out;
}

std::vector<std::pair<peg, peg>> variant_digraph::forbidden_arcs() const {
    std::vector<std::pair<peg, peg>> out;
    for (int idx = 0; idx < num_ordered_pairs; ++idx)
        if (!(mask_ & (1 << idx))) out.push_back(pair_from_index(idx));
    return out;
}

variant_digraph variant_digraph::permuted(const std::array<int, 3>& perm) const {
    int mask = 0;
    for (int idx = 0; idx < num_ordered_pairs; ++idx) {
        auto [f, t] = pair_from_index(idx);
        if (has_arc(peg(perm[f.value() - 1]), peg(perm[t.value() - 1]))) mask |= 1 << idx;
    }
    return variant_digraph(mask);
}

std::vector<variant_digraph> five_digraphs() {
    return {variant_digraph::complete(), variant_digraph::k3_minus(), variant_digraph::linear(),
            variant_digraph::c3_plus(), variant_digraph::cyclic()};
}

}  // namespace wth
