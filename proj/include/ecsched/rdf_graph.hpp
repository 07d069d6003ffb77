#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "ecsched/term.hpp"

namespace ecsched {

/// In-memory directed edge-labeled multigraph of triples. Subjects and
/// objects are vertices; parallel edges with distinct predicates between the
/// same vertex pair are preserved, byte-identical triples collapse to one
/// edge. Immutable after construction.
class RdfGraph {
public:
    RdfGraph() = default;

    explicit RdfGraph(std::vector<Triple> triples) {
        std::sort(triples.begin(), triples.end());
        triples.erase(std::unique(triples.begin(), triples.end()), triples.end());
        edges_ = std::move(triples);
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            intern_vertex(edges_[e].subject);
            intern_vertex(edges_[e].object);
        }
        out_.resize(vertices_.size());
        in_.resize(vertices_.size());
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            out_[vertex_index_.at(edges_[e].subject)].push_back(static_cast<std::uint32_t>(e));
            in_[vertex_index_.at(edges_[e].object)].push_back(static_cast<std::uint32_t>(e));
        }
    }

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const std::vector<Term>& vertices() const { return vertices_; }
    const std::vector<Triple>& edges() const { return edges_; }
    const Triple& edge(std::size_t e) const { return edges_[e]; }

    bool has_vertex(const Term& v) const { return vertex_index_.count(v) != 0; }

    bool has_triple(const Triple& t) const {
        return std::binary_search(edges_.begin(), edges_.end(), t);
    }

    static const std::vector<std::uint32_t>& no_edges() {
        static const std::vector<std::uint32_t> empty;
        return empty;
    }

    /// Edge ids with the given subject, in deterministic (sorted-edge) order.
    const std::vector<std::uint32_t>& out_edges(const Term& v) const {
        auto it = vertex_index_.find(v);
        return it == vertex_index_.end() ? no_edges() : out_[it->second];
    }

    /// Edge ids with the given object.
    const std::vector<std::uint32_t>& in_edges(const Term& v) const {
        auto it = vertex_index_.find(v);
        return it == vertex_index_.end() ? no_edges() : in_[it->second];
    }

    /// Distinct edge labels, sorted.
    std::vector<Term> labels() const {
        std::vector<Term> out;
        for (const Triple& t : edges_) out.push_back(t.predicate);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    friend bool operator==(const RdfGraph& a, const RdfGraph& b) {
        return a.edges_ == b.edges_;
    }

private:
    void intern_vertex(const Term& v) {
        if (vertex_index_.emplace(v, vertices_.size()).second) vertices_.push_back(v);
    }

    std::vector<Triple> edges_;                    // sorted, unique
    std::vector<Term> vertices_;                   // first-seen order over sorted edges
    std::unordered_map<Term, std::size_t, TermHash> vertex_index_;
    std::vector<std::vector<std::uint32_t>> out_;
    std::vector<std::vector<std::uint32_t>> in_;
};

/// Byte length of one serialized N-Triples line for `t` (including ' . and
/// trailing newline). Summing these over distinct triples equals the length
/// of the serialized graph.
inline std::size_t ntriples_line_bytes(const Triple& t) {
    return render_term(t.subject).size() + render_term(t.predicate).size() +
           render_term(t.object).size() + 5;  // two separating spaces + " .\n"
}

/// Serializes in sorted-edge order; the output reparses to an equal graph.
inline std::string to_ntriples(const RdfGraph& g) {
    std::string out;
    for (const Triple& t : g.edges()) {
        out += render_term(t.subject);
        out += ' ';
        out += render_term(t.predicate);
        out += ' ';
        out += render_term(t.object);
        out += " .\n";
    }
    return out;
}

}  // namespace ecsched
