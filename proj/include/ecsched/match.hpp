#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ecsched/bgp.hpp"
#include "ecsched/rdf_graph.hpp"
#include "ecsched/term.hpp"

namespace ecsched {

/// All homomorphic matches of a query over a graph. `variables` lists the
/// query variables in first-occurrence order; each binding row is aligned to
/// it. `matched_edges[i]` holds one graph triple per query pattern, in
/// pattern order. `extensions_attempted` counts candidate edges tried by the
/// backtracking search and doubles as the deterministic work proxy for c_n.
struct MatchSet {
    std::vector<std::string> variables;
    std::vector<std::size_t> projected_columns;
    std::vector<std::vector<Term>> bindings;
    std::vector<std::vector<Triple>> matched_edges;
    std::uint64_t extensions_attempted = 0;

    std::size_t size() const { return bindings.size(); }
};

namespace detail {

struct Matcher {
    const BgpQuery& query;
    const RdfGraph& graph;
    MatchSet out;

    std::vector<std::string> vars;                         // first-occurrence order
    std::map<std::string, std::size_t> var_index;
    std::vector<std::optional<Term>> bound;
    std::vector<std::size_t> edge_order;                   // query pattern indices
    std::vector<Triple> chosen;                            // per query pattern
    // Parallel-edge label groups: distinct predicate terms per ordered
    // (subject, object) query-vertex pair, for the injective-label check.
    std::vector<std::vector<Term>> label_groups;

    Matcher(const BgpQuery& q, const RdfGraph& g) : query(q), graph(g) {
        collect_variables();
        order_edges();
        collect_label_groups();
        chosen.resize(query.patterns.size());
    }

    void collect_variables() {
        auto note = [&](const Term& t) {
            if (t.is_variable() && var_index.emplace(t.text, vars.size()).second)
                vars.push_back(t.text);
        };
        for (const TriplePattern& tp : query.patterns) {
            note(tp.subject);
            note(tp.predicate);
            note(tp.object);
        }
        bound.assign(vars.size(), std::nullopt);
        out.variables = vars;
        for (const std::string& p : query.projected)
            out.projected_columns.push_back(var_index.at(p));
    }

    // Count graph edges compatible with the pattern's constant positions.
    std::size_t static_candidates(const TriplePattern& tp) const {
        if (tp.subject.is_constant()) return graph.out_edges(tp.subject).size();
        if (tp.object.is_constant()) return graph.in_edges(tp.object).size();
        return graph.edge_count();
    }

    // Ascending candidate-set size; constant-anchored patterns first.
    // Stable, so equal counts keep query order.
    void order_edges() {
        edge_order.resize(query.patterns.size());
        for (std::size_t i = 0; i < edge_order.size(); ++i) edge_order[i] = i;
        std::stable_sort(edge_order.begin(), edge_order.end(), [&](std::size_t a, std::size_t b) {
            return static_candidates(query.patterns[a]) < static_candidates(query.patterns[b]);
        });
    }

    void collect_label_groups() {
        std::map<std::pair<Term, Term>, std::vector<Term>> groups;
        for (const TriplePattern& tp : query.patterns) {
            auto& labels = groups[{tp.subject, tp.object}];
            if (std::find(labels.begin(), labels.end(), tp.predicate) == labels.end())
                labels.push_back(tp.predicate);
        }
        for (auto& [key, labels] : groups)
            if (labels.size() > 1) label_groups.push_back(labels);
    }

    Term resolve(const Term& t) const {
        if (!t.is_variable()) return t;
        return *bound[var_index.at(t.text)];
    }

    // Def. 3 condition 4: within each group of parallel query edges, the
    // resolved labels must be pairwise distinct.
    bool labels_injective() const {
        for (const auto& group : label_groups) {
            std::vector<Term> resolved;
            resolved.reserve(group.size());
            for (const Term& l : group) resolved.push_back(resolve(l));
            std::sort(resolved.begin(), resolved.end());
            if (std::adjacent_find(resolved.begin(), resolved.end()) != resolved.end())
                return false;
        }
        return true;
    }

    // Try to unify pattern position `pt` with graph term `gt`; records newly
    // bound variables in `undo`.
    bool unify(const Term& pt, const Term& gt, std::vector<std::size_t>& undo) {
        if (!pt.is_variable()) return pt == gt;
        std::size_t idx = var_index.at(pt.text);
        if (bound[idx]) return *bound[idx] == gt;
        bound[idx] = gt;
        undo.push_back(idx);
        return true;
    }

    void search(std::size_t depth) {
        if (depth == edge_order.size()) {
            if (!labels_injective()) return;
            std::vector<Term> row;
            row.reserve(vars.size());
            for (const auto& b : bound) row.push_back(*b);
            out.bindings.push_back(std::move(row));
            out.matched_edges.push_back(chosen);
            return;
        }
        const TriplePattern& tp = query.patterns[edge_order[depth]];

        Term s = tp.subject.is_variable() ? Term{} : tp.subject;
        bool s_fixed = !tp.subject.is_variable();
        if (!s_fixed && bound[var_index.at(tp.subject.text)]) {
            s = *bound[var_index.at(tp.subject.text)];
            s_fixed = true;
        }
        Term o = tp.object.is_variable() ? Term{} : tp.object;
        bool o_fixed = !tp.object.is_variable();
        if (!o_fixed && bound[var_index.at(tp.object.text)]) {
            o = *bound[var_index.at(tp.object.text)];
            o_fixed = true;
        }

        auto try_edge = [&](const Triple& t) {
            ++out.extensions_attempted;
            std::vector<std::size_t> undo;
            if (unify(tp.subject, t.subject, undo) && unify(tp.predicate, t.predicate, undo) &&
                unify(tp.object, t.object, undo)) {
                chosen[edge_order[depth]] = t;
                search(depth + 1);
            }
            for (std::size_t idx : undo) bound[idx].reset();
        };

        if (s_fixed) {
            for (std::uint32_t e : graph.out_edges(s)) {
                const Triple& t = graph.edge(e);
                if (o_fixed && t.object != o) continue;
                try_edge(t);
            }
        } else if (o_fixed) {
            for (std::uint32_t e : graph.in_edges(o)) try_edge(graph.edge(e));
        } else {
            for (const Triple& t : graph.edges()) try_edge(t);
        }
    }
};

}  // namespace detail

/// Enumerates every homomorphism of the query into the graph (Def. 3
/// semantics: constants map to themselves, variables are unconstrained,
/// vertex mappings may be non-injective, parallel query edges map their
/// labels injectively). Deterministic result order.
inline MatchSet match(const BgpQuery& query, const RdfGraph& graph) {
    detail::Matcher m(query, graph);
    m.search(0);
    return std::move(m.out);
}

/// Result serialization: one row per binding, projected term texts joined by
/// a tab, '\n'-terminated.
inline std::string serialize_results(const MatchSet& ms) {
    std::string out;
    for (const auto& row : ms.bindings) {
        for (std::size_t i = 0; i < ms.projected_columns.size(); ++i) {
            if (i) out += '\t';
            out += row[ms.projected_columns[i]].text;
        }
        out += '\n';
    }
    return out;
}

/// Size in bytes of the serialized result set.
inline std::uint64_t result_bytes(const MatchSet& ms) {
    std::uint64_t total = 0;
    for (const auto& row : ms.bindings) {
        for (std::size_t i = 0; i < ms.projected_columns.size(); ++i) {
            if (i) ++total;  // tab
            total += row[ms.projected_columns[i]].text.size();
        }
        ++total;  // newline
    }
    return total;
}

}  // namespace ecsched
