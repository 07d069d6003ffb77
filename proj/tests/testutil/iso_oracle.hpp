// Brute-force pattern isomorphism: permutation enumeration over vertex ids,
// multiset edge comparison with variable labels collapsed to one wildcard.
// Independent of the DFS-code machinery it is used to check.
#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "ecsched/pattern.hpp"

namespace testutil {

using CollapsedEdge = std::tuple<int, int, bool, std::string>;  // src, dst, wildcard, label

inline std::vector<CollapsedEdge> collapsed_edges(const ecsched::Pattern& p) {
    std::vector<CollapsedEdge> out;
    for (const auto& e : p.edges) {
        bool wc = e.label.is_variable();
        out.emplace_back(e.src, e.dst, wc, wc ? std::string() : e.label.text);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline bool bf_isomorphic(const ecsched::Pattern& a, const ecsched::Pattern& b) {
    if (a.var_count != b.var_count || a.edges.size() != b.edges.size()) return false;
    std::vector<CollapsedEdge> eb = collapsed_edges(b);
    std::vector<int> perm(a.var_count);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::vector<CollapsedEdge> mapped;
        mapped.reserve(a.edges.size());
        for (const auto& e : a.edges) {
            bool wc = e.label.is_variable();
            mapped.emplace_back(perm[e.src], perm[e.dst], wc, wc ? std::string() : e.label.text);
        }
        std::sort(mapped.begin(), mapped.end());
        if (mapped == eb) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

}  // namespace testutil
