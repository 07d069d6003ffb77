#pragma once

#include <map>
#include <string>
#include <vector>

#include "ecsched/bgp.hpp"
#include "ecsched/term.hpp"

namespace ecsched {

/// One edge of a pattern graph. Endpoints are variable ids; the label is
/// either a concrete IRI or a variable.
struct PatternEdge {
    int src = 0;
    int dst = 0;
    Term label;

    friend bool operator==(const PatternEdge&, const PatternEdge&) = default;
    friend auto operator<=>(const PatternEdge&, const PatternEdge&) = default;
};

/// A query with all subject/object constants erased to variables: the unit
/// of edge-server data placement. Weakly connected, no constant vertices.
struct Pattern {
    std::vector<PatternEdge> edges;
    int var_count = 0;

    friend bool operator==(const Pattern&, const Pattern&) = default;
};

/// Erases every distinct subject/object term (constant or variable) to a
/// fresh variable id in first-occurrence order. Predicates are kept
/// verbatim, so two queries differing only in constant names generalize to
/// the same pattern.
inline Pattern generalize(const BgpQuery& query) {
    Pattern p;
    std::map<Term, int> ids;
    auto id_of = [&](const Term& t) {
        auto [it, fresh] = ids.emplace(t, p.var_count);
        if (fresh) ++p.var_count;
        return it->second;
    };
    for (const TriplePattern& tp : query.patterns) {
        int s = id_of(tp.subject);
        int o = id_of(tp.object);
        p.edges.push_back({s, o, tp.predicate});
    }
    return p;
}

/// Renders the pattern back into a runnable query, for matching it over a
/// graph. Vertex id i becomes ?vi; a variable label named X becomes ?l_X so
/// label sharing between edges survives without clashing with vertex names.
inline BgpQuery pattern_query(const Pattern& p) {
    BgpQuery q;
    for (const PatternEdge& e : p.edges) {
        TriplePattern tp;
        tp.subject = variable("v" + std::to_string(e.src));
        tp.object = variable("v" + std::to_string(e.dst));
        tp.predicate = e.label.is_variable() ? variable("l_" + e.label.text) : e.label;
        q.patterns.push_back(std::move(tp));
    }
    q.projected.push_back("v0");
    return q;
}

}  // namespace ecsched
