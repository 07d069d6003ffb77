#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ecsched/errors.hpp"
#include "ecsched/pattern.hpp"
#include "ecsched/term.hpp"

namespace ecsched {

/// Orientation of a pattern edge relative to its code tuple: Forward means
/// the edge points from discovery id i to j, Backward the reverse.
enum class EdgeDir : std::uint8_t { Forward = 0, Backward = 1 };

/// One DFS traversal step. Tuple order is (i, j, dir, label) with
/// Forward < Backward and constant labels before the wildcard; all variable
/// labels collapse to a single wildcard token.
struct CodeTuple {
    int i = 0;
    int j = 0;
    EdgeDir dir = EdgeDir::Forward;
    bool wildcard = false;
    std::string label;  // IRI text; empty when wildcard

    friend bool operator==(const CodeTuple&, const CodeTuple&) = default;
    friend auto operator<=>(const CodeTuple&, const CodeTuple&) = default;
};

/// Canonical form of a pattern: the lexicographically smallest tuple
/// sequence over all valid DFS traversals. Equal codes <=> isomorphic
/// patterns (directed, edge-labeled, variable labels interchangeable).
struct DfsCode {
    std::vector<CodeTuple> tuples;

    friend bool operator==(const DfsCode&, const DfsCode&) = default;
    friend auto operator<=>(const DfsCode&, const DfsCode&) = default;
};

inline std::string code_to_string(const DfsCode& code) {
    std::string out;
    for (std::size_t t = 0; t < code.tuples.size(); ++t) {
        const CodeTuple& c = code.tuples[t];
        if (t) out += ';';
        out += '(';
        out += std::to_string(c.i);
        out += ',';
        out += std::to_string(c.j);
        out += c.dir == EdgeDir::Forward ? ",F," : ",B,";
        if (c.wildcard)
            out += '*';
        else {
            out += '<';
            out += c.label;
            out += '>';
        }
        out += ')';
    }
    return out;
}

/// FNV-1a, stable across platforms; used for the catalog index and dumps.
inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::uint64_t code_hash(const DfsCode& code) { return fnv1a64(code_to_string(code)); }

namespace detail {

struct CodeEdge {
    int src, dst;
    bool wildcard;
    std::string label;
};

struct MinCodeSearch {
    std::vector<CodeEdge> edges;
    std::vector<std::vector<int>> incident;  // vertex -> edge ids (self-loops once)
    std::vector<int> degree;
    int vertex_count = 0;
    std::optional<std::vector<CodeTuple>> best;

    CodeTuple tuple_for(int edge_id, int from_vertex, int from_id, int to_id) const {
        const CodeEdge& e = edges[edge_id];
        CodeTuple t;
        t.i = from_id;
        t.j = to_id;
        t.dir = (e.src == from_vertex) ? EdgeDir::Forward : EdgeDir::Backward;
        if (e.src == e.dst) t.dir = EdgeDir::Forward;  // self-loop orientation is symmetric
        t.wildcard = e.wildcard;
        if (!e.wildcard) t.label = e.label;
        return t;
    }

    // Compares the current prefix against the best code; <0 / 0 / >0.
    int compare_prefix(const std::vector<CodeTuple>& code) const {
        for (std::size_t d = 0; d < code.size(); ++d) {
            auto c = code[d] <=> best->at(d);
            if (c < 0) return -1;
            if (c > 0) return 1;
        }
        return 0;
    }

    struct Candidate {
        CodeTuple tuple;
        int edge_id;
        int new_vertex;  // -1 when no vertex is discovered
        int path_keep;   // rightmost path length to keep before appending
    };

    void run(std::vector<int>& ids, std::vector<int>& path, std::vector<bool>& used,
             std::vector<CodeTuple>& code, int next_id, std::size_t used_count) {
        if (used_count == edges.size()) {
            if (!best || compare_prefix(code) < 0) best = code;
            return;
        }

        std::vector<Candidate> cands;
        if (code.empty()) {
            for (int v = 0; v < vertex_count; ++v)
                for (int e : incident[v]) {
                    const CodeEdge& ce = edges[e];
                    bool self = ce.src == ce.dst;
                    Candidate c;
                    c.edge_id = e;
                    c.new_vertex = self ? -1 : (ce.src == v ? ce.dst : ce.src);
                    c.tuple = tuple_for(e, v, 0, self ? 0 : 1);
                    c.path_keep = 0;
                    // The root vertex is v; encode it via new_vertex bookkeeping below.
                    c.tuple.i = 0;
                    cands.push_back(std::move(c));
                    cands.back().path_keep = v;  // reuse: root vertex for the empty-code case
                }
        } else {
            int r = path.back();
            // Backward/self edges at the rightmost vertex, to path vertices.
            for (int e : incident[r]) {
                if (used[e]) continue;
                const CodeEdge& ce = edges[e];
                int other = ce.src == r ? ce.dst : ce.src;
                if (ce.src == ce.dst) {
                    Candidate c{tuple_for(e, r, ids[r], ids[r]), e, -1, int(path.size())};
                    cands.push_back(std::move(c));
                } else if (ids[other] >= 0 &&
                           std::find(path.begin(), path.end(), other) != path.end()) {
                    Candidate c{tuple_for(e, r, ids[r], ids[other]), e, -1, int(path.size())};
                    cands.push_back(std::move(c));
                }
            }
            // Forward edges from any rightmost-path vertex to a new vertex.
            for (std::size_t pos = 0; pos < path.size(); ++pos) {
                int u = path[pos];
                for (int e : incident[u]) {
                    if (used[e]) continue;
                    const CodeEdge& ce = edges[e];
                    if (ce.src == ce.dst) continue;  // self-loops handled at r only
                    int w = ce.src == u ? ce.dst : ce.src;
                    if (ids[w] >= 0) continue;
                    Candidate c{tuple_for(e, u, ids[u], next_id), e, w, int(pos + 1)};
                    cands.push_back(std::move(c));
                }
            }
        }

        // Interchangeable candidates produce identical subtrees: exact
        // parallel duplicates always, and same-tuple discoveries of degree-1
        // vertices. Keep the first of each group.
        std::stable_sort(cands.begin(), cands.end(), [&](const Candidate& a, const Candidate& b) {
            if (auto c = a.tuple <=> b.tuple; c != 0) return c < 0;
            return false;
        });
        std::vector<Candidate> kept;
        for (auto& c : cands) {
            bool dup = false;
            for (const auto& k : kept) {
                if (k.tuple != c.tuple) continue;
                if (code.empty() && k.path_keep != c.path_keep) continue;  // different root
                int kw = k.new_vertex, cw = c.new_vertex;
                if (kw == cw) { dup = true; break; }
                if (kw >= 0 && cw >= 0 && degree[kw] == 1 && degree[cw] == 1) { dup = true; break; }
            }
            if (!dup) kept.push_back(std::move(c));
        }

        for (const Candidate& c : kept) {
            code.push_back(c.tuple);
            if (best && compare_prefix(code) > 0) {
                code.pop_back();
                continue;
            }
            std::vector<int> saved_path = path;
            int root_vertex = -1;
            if (code.size() == 1) {
                root_vertex = c.path_keep;  // see empty-code candidate construction
                ids[root_vertex] = 0;
                path = {root_vertex};
                if (c.new_vertex >= 0) {
                    ids[c.new_vertex] = 1;
                    path.push_back(c.new_vertex);
                }
            } else if (c.new_vertex >= 0) {
                path.resize(static_cast<std::size_t>(c.path_keep));
                ids[c.new_vertex] = next_id;
                path.push_back(c.new_vertex);
            }
            used[c.edge_id] = true;

            int next = next_id + (c.new_vertex >= 0 ? 1 : 0);
            if (code.size() == 1) next = c.new_vertex >= 0 ? 2 : 1;
            run(ids, path, used, code, next, used_count + 1);

            used[c.edge_id] = false;
            if (code.size() == 1) {
                ids[root_vertex] = -1;
                if (c.new_vertex >= 0) ids[c.new_vertex] = -1;
            } else if (c.new_vertex >= 0) {
                ids[c.new_vertex] = -1;
            }
            path = std::move(saved_path);
            code.pop_back();
        }
    }
};

}  // namespace detail

/// Computes the minimal DFS code by exhaustive traversal enumeration with
/// prefix pruning. Guarded to small patterns; larger inputs are a usage
/// error, not a case to grind through.
inline DfsCode min_dfs_code(const Pattern& p) {
    constexpr std::size_t kMaxEdges = 10;
    if (p.edges.size() > kMaxEdges)
        throw SizeError("pattern has " + std::to_string(p.edges.size()) +
                        " edges; minimal DFS codes are limited to " + std::to_string(kMaxEdges));
    if (p.edges.empty()) return {};

    detail::MinCodeSearch s;
    s.vertex_count = p.var_count;
    s.incident.resize(p.var_count);
    s.degree.assign(p.var_count, 0);
    for (const PatternEdge& e : p.edges) {
        detail::CodeEdge ce{e.src, e.dst, e.label.is_variable(),
                            e.label.is_variable() ? std::string() : e.label.text};
        int id = static_cast<int>(s.edges.size());
        s.edges.push_back(std::move(ce));
        s.incident[e.src].push_back(id);
        if (e.dst != e.src) s.incident[e.dst].push_back(id);
        ++s.degree[e.src];
        if (e.dst != e.src) ++s.degree[e.dst];
    }

    std::vector<int> ids(p.var_count, -1);
    std::vector<int> path;
    std::vector<bool> used(p.edges.size(), false);
    std::vector<CodeTuple> code;
    s.run(ids, path, used, code, 0, 0);
    if (!s.best) throw Error("pattern is not connected");
    return DfsCode{*s.best};
}

/// Rebuilds a pattern from its code (up to isomorphism). Wildcard labels
/// come back as distinct variables per edge; the code does not record label
/// sharing between edges.
inline Pattern pattern_from_code(const DfsCode& code) {
    Pattern p;
    int wc = 0;
    for (const CodeTuple& t : code.tuples) {
        PatternEdge e;
        e.src = t.dir == EdgeDir::Forward ? t.i : t.j;
        e.dst = t.dir == EdgeDir::Forward ? t.j : t.i;
        e.label = t.wildcard ? variable("w" + std::to_string(wc++)) : iri(t.label);
        p.var_count = std::max({p.var_count, e.src + 1, e.dst + 1});
        p.edges.push_back(std::move(e));
    }
    return p;
}

}  // namespace ecsched
