// Independent test oracles. Everything here is deliberately naive: exhaustive
// enumeration over all candidate mappings, with no shared code paths with the
// library's search routines.
#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ecsched/bgp.hpp"
#include "ecsched/match.hpp"
#include "ecsched/rdf_graph.hpp"
#include "ecsched/term.hpp"

namespace testutil {

using ecsched::BgpQuery;
using ecsched::RdfGraph;
using ecsched::Term;
using ecsched::Triple;
using ecsched::TriplePattern;

// Enumerates all functions from query variables to (vertices U labels) and
// keeps the ones satisfying Def. 3, including the injective parallel-label
// condition. Returns the set of bindings keyed by variable name.
inline std::set<std::map<std::string, Term>> bf_match(const BgpQuery& q, const RdfGraph& g) {
    std::vector<std::string> vars;
    for (const TriplePattern& tp : q.patterns)
        for (const Term* t : {&tp.subject, &tp.predicate, &tp.object})
            if (t->is_variable() &&
                std::find(vars.begin(), vars.end(), t->text) == vars.end())
                vars.push_back(t->text);

    std::vector<Term> candidates = g.vertices();
    for (const Term& l : g.labels()) candidates.push_back(l);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::set<std::map<std::string, Term>> result;
    std::map<std::string, Term> assignment;

    auto resolve = [&](const Term& t) { return t.is_variable() ? assignment.at(t.text) : t; };

    auto valid = [&]() {
        for (const TriplePattern& tp : q.patterns) {
            Triple t{resolve(tp.subject), resolve(tp.predicate), resolve(tp.object)};
            if (!g.has_triple(t)) return false;
        }
        // Injective label mapping per ordered query-vertex pair.
        std::map<std::pair<Term, Term>, std::set<Term>> syntactic, resolved;
        for (const TriplePattern& tp : q.patterns) {
            auto key = std::make_pair(tp.subject, tp.object);
            syntactic[key].insert(tp.predicate);
            resolved[key].insert(resolve(tp.predicate));
        }
        for (const auto& [key, labels] : syntactic)
            if (resolved[key].size() != labels.size()) return false;
        return true;
    };

    // Odometer over candidate assignments.
    std::vector<std::size_t> pick(vars.size(), 0);
    if (candidates.empty() && !vars.empty()) return result;
    for (;;) {
        assignment.clear();
        for (std::size_t i = 0; i < vars.size(); ++i) assignment[vars[i]] = candidates[pick[i]];
        if (valid()) result.insert(assignment);
        std::size_t d = 0;
        while (d < pick.size()) {
            if (++pick[d] < candidates.size()) break;
            pick[d] = 0;
            ++d;
        }
        if (d == pick.size()) break;
    }
    return result;
}

// MatchSet bindings as a set of name->Term maps, for order-free comparison.
inline std::set<std::map<std::string, Term>> binding_set(const ecsched::MatchSet& ms) {
    std::set<std::map<std::string, Term>> out;
    for (const auto& row : ms.bindings) {
        std::map<std::string, Term> b;
        for (std::size_t i = 0; i < ms.variables.size(); ++i) b[ms.variables[i]] = row[i];
        out.insert(std::move(b));
    }
    return out;
}

}  // namespace testutil
