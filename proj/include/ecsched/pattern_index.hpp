#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "ecsched/dfs_code.hpp"
#include "ecsched/match.hpp"
#include "ecsched/pattern.hpp"
#include "ecsched/rdf_graph.hpp"

namespace ecsched {

/// Pattern-induced subgraph G[P]: the union of vertices and edges involved
/// in at least one homomorphic match of a pattern in `patterns`.
inline RdfGraph induce(const RdfGraph& graph, const std::vector<Pattern>& patterns) {
    std::set<Triple> triples;
    for (const Pattern& p : patterns) {
        MatchSet ms = match(pattern_query(p), graph);
        for (const auto& row : ms.matched_edges)
            for (const Triple& t : row) triples.insert(t);
    }
    return RdfGraph(std::vector<Triple>(triples.begin(), triples.end()));
}

namespace detail {

/// Matched triples of one pattern, as a sorted set (the building block of
/// union-size accounting during placement).
inline std::set<Triple> induced_triples(const RdfGraph& graph, const Pattern& p) {
    std::set<Triple> triples;
    MatchSet ms = match(pattern_query(p), graph);
    for (const auto& row : ms.matched_edges)
        for (const Triple& t : row) triples.insert(t);
    return triples;
}

inline std::uint64_t triple_set_bytes(const std::set<Triple>& ts) {
    std::uint64_t total = 0;
    for (const Triple& t : ts) total += ntriples_line_bytes(t);
    return total;
}

}  // namespace detail

/// Serialized N-Triples byte size of the pattern's induced subgraph.
inline std::uint64_t induced_subgraph_bytes(const RdfGraph& graph, const Pattern& p) {
    return detail::triple_set_bytes(detail::induced_triples(graph, p));
}

struct CatalogEntry {
    Pattern pattern;
    DfsCode code;
    std::uint64_t frequency = 0;
    std::uint64_t subgraph_bytes = 0;
};

/// Canonical-code-hash index over patterns. Entries are unique per DfsCode;
/// adding an existing code accumulates its frequency.
class PatternCatalog {
public:
    void add(Pattern pattern, DfsCode code, std::uint64_t frequency, std::uint64_t bytes) {
        std::uint64_t h = code_hash(code);
        for (std::size_t idx : by_hash_[h]) {
            if (entries_[idx].code == code) {
                entries_[idx].frequency += frequency;
                return;
            }
        }
        by_hash_[h].push_back(entries_.size());
        entries_.push_back({std::move(pattern), std::move(code), frequency, bytes});
    }

    const CatalogEntry* find(const DfsCode& code) const {
        auto it = by_hash_.find(code_hash(code));
        if (it == by_hash_.end()) return nullptr;
        for (std::size_t idx : it->second)
            if (entries_[idx].code == code) return &entries_[idx];
        return nullptr;
    }

    const std::vector<CatalogEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

private:
    std::vector<CatalogEntry> entries_;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_hash_;
};

/// Which induced subgraphs each edge server stores. used_bytes counts the
/// materialized union subgraph, so overlap between patterns is charged once.
struct Placement {
    std::vector<std::set<DfsCode>> per_server;
    std::vector<std::uint64_t> used_bytes;

    friend bool operator==(const Placement&, const Placement&) = default;
};

/// Per-server candidate codes. An empty optional means every catalog entry
/// is eligible on every server.
using Eligibility = std::optional<std::vector<std::set<DfsCode>>>;

/// Realizes Eq. (2): a query is executable iff its generalized pattern's
/// minimal DFS code is stored. Isomorphism, not homomorphism; a query merely
/// homomorphic to a stored pattern is not executable.
inline bool executable(const BgpQuery& query, const std::set<DfsCode>& stored) {
    if (stored.empty()) return false;
    return stored.count(min_dfs_code(generalize(query))) != 0;
}

/// Storage-constrained greedy placement, independently per server: scan
/// eligible entries by descending frequency/size ratio (ties: higher
/// frequency, then lexicographically smaller code) and accept an entry when
/// the marginal bytes of the union subgraph fit the remaining capacity.
inline Placement place_greedy(const RdfGraph& graph, const PatternCatalog& catalog,
                              const std::vector<std::uint64_t>& capacities,
                              const Eligibility& eligibility = std::nullopt) {
    const auto& entries = catalog.entries();

    std::vector<std::size_t> order(entries.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const CatalogEntry& ea = entries[a];
        const CatalogEntry& eb = entries[b];
        bool inf_a = ea.subgraph_bytes == 0;
        bool inf_b = eb.subgraph_bytes == 0;
        if (inf_a != inf_b) return inf_a;
        if (!inf_a) {
            // frequency/bytes compared by cross-multiplication, no rounding.
            auto lhs = static_cast<unsigned __int128>(ea.frequency) * eb.subgraph_bytes;
            auto rhs = static_cast<unsigned __int128>(eb.frequency) * ea.subgraph_bytes;
            if (lhs != rhs) return lhs > rhs;
        }
        if (ea.frequency != eb.frequency) return ea.frequency > eb.frequency;
        return ea.code < eb.code;
    });

    // Induced triple sets are computed on demand, once per entry.
    std::vector<std::optional<std::set<Triple>>> triples(entries.size());
    auto triples_of = [&](std::size_t idx) -> const std::set<Triple>& {
        if (!triples[idx]) triples[idx] = detail::induced_triples(graph, entries[idx].pattern);
        return *triples[idx];
    };

    Placement placement;
    placement.per_server.resize(capacities.size());
    placement.used_bytes.assign(capacities.size(), 0);

    for (std::size_t k = 0; k < capacities.size(); ++k) {
        std::set<Triple> stored_union;
        for (std::size_t idx : order) {
            const CatalogEntry& entry = entries[idx];
            if (eligibility && !(*eligibility)[k].count(entry.code)) continue;
            std::uint64_t marginal = 0;
            for (const Triple& t : triples_of(idx))
                if (!stored_union.count(t)) marginal += ntriples_line_bytes(t);
            if (placement.used_bytes[k] + marginal > capacities[k]) continue;
            stored_union.insert(triples_of(idx).begin(), triples_of(idx).end());
            placement.used_bytes[k] += marginal;
            placement.per_server[k].insert(entry.code);
        }
    }
    return placement;
}

struct PlacementUpdate {
    PatternCatalog catalog;
    Placement placement;
};

/// Frequency-driven re-placement: merges cloud-side frequency counts into
/// the catalog (codes unseen so far are materialized from their DFS code)
/// and recomputes the greedy placement. A synchronous stand-in for a
/// background refresh; the returned placement replaces `current`.
inline PlacementUpdate update_placement(const RdfGraph& graph, const PatternCatalog& catalog,
                                        const std::map<DfsCode, std::uint64_t>& cloud_frequencies,
                                        const Placement& current,
                                        const std::vector<std::uint64_t>& capacities,
                                        const Eligibility& eligibility = std::nullopt) {
    if (cloud_frequencies.empty()) return {catalog, current};
    PatternCatalog merged = catalog;
    for (const auto& [code, count] : cloud_frequencies) {
        if (merged.find(code)) {
            merged.add(Pattern{}, code, count, 0);  // existing entry: bump frequency
        } else {
            Pattern p = pattern_from_code(code);
            std::uint64_t bytes = induced_subgraph_bytes(graph, p);
            merged.add(std::move(p), code, count, bytes);
        }
    }
    return {merged, place_greedy(graph, merged, capacities, eligibility)};
}

/// Catalog dump: one line per entry, `hash<TAB>frequency<TAB>bytes<TAB>code`,
/// sorted by code.
inline std::string format_catalog(const PatternCatalog& catalog) {
    std::vector<const CatalogEntry*> sorted;
    for (const CatalogEntry& e : catalog.entries()) sorted.push_back(&e);
    std::sort(sorted.begin(), sorted.end(),
              [](const CatalogEntry* a, const CatalogEntry* b) { return a->code < b->code; });
    std::string out;
    for (const CatalogEntry* e : sorted) {
        out += std::to_string(code_hash(e->code));
        out += '\t';
        out += std::to_string(e->frequency);
        out += '\t';
        out += std::to_string(e->subgraph_bytes);
        out += '\t';
        out += code_to_string(e->code);
        out += '\n';
    }
    return out;
}

/// Placement dump: `server-id<TAB>code-hash` lines.
inline std::string format_placement(const Placement& placement) {
    std::string out;
    for (std::size_t k = 0; k < placement.per_server.size(); ++k) {
        for (const DfsCode& code : placement.per_server[k]) {
            out += std::to_string(k);
            out += '\t';
            out += std::to_string(code_hash(code));
            out += '\n';
        }
    }
    return out;
}

}  // namespace ecsched
