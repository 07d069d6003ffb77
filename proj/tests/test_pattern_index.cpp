#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ecsched/bgp.hpp"
#include "ecsched/dfs_code.hpp"
#include "ecsched/match.hpp"
#include "ecsched/ntriples.hpp"
#include "ecsched/pattern.hpp"
#include "ecsched/pattern_index.hpp"
#include "testutil/brute_force.hpp"
#include "testutil/iso_oracle.hpp"

using namespace ecsched;

TEST(Generalize, SingleEdgeDirectorPattern) {
    Pattern p = generalize(parse_bgp("SELECT ?f WHERE { ?f <director> <Anderson> }"));
    EXPECT_EQ(p.var_count, 2);
    ASSERT_EQ(p.edges.size(), 1u);
    EXPECT_EQ(p.edges[0], (PatternEdge{0, 1, iri("director")}));
}

TEST(Generalize, AllVariableQueryIsFixedPoint) {
    BgpQuery q = parse_bgp("SELECT ?x WHERE { ?x <p> ?y . ?y <q> ?z }");
    Pattern p = generalize(q);
    EXPECT_EQ(p.var_count, 3);
    EXPECT_EQ(p.edges[0], (PatternEdge{0, 1, iri("p")}));
    EXPECT_EQ(p.edges[1], (PatternEdge{1, 2, iri("q")}));
}

TEST(Generalize, ConstantNamesIrrelevant) {
    Pattern a = generalize(parse_bgp("SELECT ?f WHERE { ?f <director> <Anderson> }"));
    Pattern b = generalize(parse_bgp("SELECT ?f WHERE { ?f <director> <Nolan> }"));
    EXPECT_EQ(a, b);
}

TEST(Generalize, VariablePredicateKept) {
    Pattern p = generalize(parse_bgp("SELECT ?p WHERE { <a> ?p <b> }"));
    EXPECT_TRUE(p.edges[0].label.is_variable());
}

TEST(MinDfsCode, SingleEdge) {
    Pattern p{{{0, 1, iri("a")}}, 2};
    DfsCode code = min_dfs_code(p);
    ASSERT_EQ(code.tuples.size(), 1u);
    EXPECT_EQ(code.tuples[0], (CodeTuple{0, 1, EdgeDir::Forward, false, "a"}));
}

TEST(MinDfsCode, SelfLoop) {
    Pattern p{{{0, 0, iri("a")}}, 1};
    DfsCode code = min_dfs_code(p);
    ASSERT_EQ(code.tuples.size(), 1u);
    EXPECT_EQ(code.tuples[0], (CodeTuple{0, 0, EdgeDir::Forward, false, "a"}));
}

TEST(MinDfsCode, PathVersusFan) {
    Pattern path{{{0, 1, iri("a")}, {1, 2, iri("a")}}, 3};
    Pattern fan{{{0, 1, iri("a")}, {0, 2, iri("a")}}, 3};
    EXPECT_FALSE(testutil::bf_isomorphic(path, fan));
    EXPECT_NE(min_dfs_code(path), min_dfs_code(fan));
}

TEST(MinDfsCode, DirectionMatters) {
    Pattern chain{{{0, 1, iri("a")}, {1, 2, iri("a")}}, 3};
    Pattern meet{{{0, 1, iri("a")}, {2, 1, iri("a")}}, 3};
    EXPECT_NE(min_dfs_code(chain), min_dfs_code(meet));
}

TEST(MinDfsCode, EdgeBoundGuard) {
    Pattern big;
    big.var_count = 12;
    for (int i = 0; i < 11; ++i) big.edges.push_back({i, i + 1, iri("a")});
    EXPECT_THROW(min_dfs_code(big), SizeError);
}

namespace {

Pattern random_pattern(std::mt19937_64& rng, int max_extra_edges) {
    int n = 1 + int(rng() % 4);
    Pattern p;
    p.var_count = n;
    std::vector<std::string> labels = {"a", "b"};
    auto label = [&]() -> Term {
        if (rng() % 4 == 0) return variable("x");
        return iri(labels[rng() % labels.size()]);
    };
    for (int v = 1; v < n; ++v) {
        int u = int(rng() % v);
        if (rng() % 2)
            p.edges.push_back({u, v, label()});
        else
            p.edges.push_back({v, u, label()});
    }
    int extra = int(rng() % (max_extra_edges + 1));
    for (int i = 0; i < extra; ++i) {
        int u = int(rng() % n);
        int v = int(rng() % n);
        p.edges.push_back({u, v, label()});
    }
    if (p.edges.empty()) p.edges.push_back({0, 0, label()});
    return p;
}

Pattern relabel(const Pattern& p, std::mt19937_64& rng) {
    std::vector<int> perm(p.var_count);
    for (int i = 0; i < p.var_count; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    Pattern out;
    out.var_count = p.var_count;
    for (const PatternEdge& e : p.edges) out.edges.push_back({perm[e.src], perm[e.dst], e.label});
    std::shuffle(out.edges.begin(), out.edges.end(), rng);
    return out;
}

}  // namespace

TEST(MinDfsCode, InvariantUnderRelabeling) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        Pattern p = random_pattern(rng, 3);
        EXPECT_EQ(min_dfs_code(p), min_dfs_code(relabel(p, rng))) << "trial " << trial;
    }
}

TEST(MinDfsCode, EqualityMatchesIsomorphismOracle) {
    std::mt19937_64 rng(12);
    int equal_seen = 0;
    for (int trial = 0; trial < 400; ++trial) {
        Pattern a = random_pattern(rng, 3);
        Pattern b = (trial % 3 == 0) ? relabel(a, rng) : random_pattern(rng, 3);
        bool iso = testutil::bf_isomorphic(a, b);
        bool same = min_dfs_code(a) == min_dfs_code(b);
        EXPECT_EQ(same, iso) << "trial " << trial;
        if (same) ++equal_seen;
    }
    EXPECT_GT(equal_seen, 50);  // the suite exercises both verdicts
}

TEST(MinDfsCode, PatternFromCodeRoundTrips) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        Pattern p = random_pattern(rng, 3);
        DfsCode code = min_dfs_code(p);
        EXPECT_EQ(min_dfs_code(pattern_from_code(code)), code) << "trial " << trial;
    }
}

TEST(Induce, EmptyPatternSet) {
    RdfGraph g = parse_ntriples(std::string("<u> <a> <v> .\n"));
    RdfGraph sub = induce(g, {});
    EXPECT_EQ(sub.vertex_count(), 0u);
    EXPECT_EQ(sub.edge_count(), 0u);
}

TEST(Induce, SingleEdgePatternSelectsLabel) {
    RdfGraph g = parse_ntriples(std::string("<u> <a> <v> .\n<u> <b> <w> .\n"));
    Pattern p{{{0, 1, iri("a")}}, 2};
    RdfGraph sub = induce(g, {p});
    EXPECT_EQ(sub.edge_count(), 1u);
    EXPECT_EQ(sub.vertex_count(), 2u);
    EXPECT_TRUE(sub.has_triple({iri("u"), iri("a"), iri("v")}));
}

namespace {

RdfGraph random_small_graph(std::mt19937_64& rng, int max_v, int max_e) {
    int nv = 1 + int(rng() % max_v);
    std::vector<std::string> labels = {"a", "b", "c"};
    std::vector<Triple> ts;
    int ne = int(rng() % (max_e + 1));
    for (int i = 0; i < ne; ++i)
        ts.push_back({iri("v" + std::to_string(rng() % nv)),
                      iri(labels[rng() % labels.size()]),
                      iri("v" + std::to_string(rng() % nv))});
    return RdfGraph(std::move(ts));
}

}  // namespace

TEST(Induce, UnionDistributesOverPatternSets) {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 60; ++trial) {
        RdfGraph g = random_small_graph(rng, 5, 12);
        Pattern p1 = random_pattern(rng, 2);
        Pattern p2 = random_pattern(rng, 2);
        RdfGraph joint = induce(g, {p1, p2});
        RdfGraph a = induce(g, {p1});
        RdfGraph b = induce(g, {p2});
        std::set<Triple> expect(a.edges().begin(), a.edges().end());
        expect.insert(b.edges().begin(), b.edges().end());
        RdfGraph merged{std::vector<Triple>(expect.begin(), expect.end())};
        EXPECT_EQ(joint, merged) << "trial " << trial;
    }
}

TEST(Induce, MatchesAreContainedInInducedSubgraph) {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 60; ++trial) {
        RdfGraph g = random_small_graph(rng, 5, 12);
        Pattern p = random_pattern(rng, 2);
        RdfGraph sub = induce(g, {p});
        MatchSet ms = match(pattern_query(p), g);
        for (const auto& row : ms.matched_edges)
            for (const Triple& t : row) EXPECT_TRUE(sub.has_triple(t));
    }
}

TEST(Induce, CompletenessOnInducedData) {
    // Matching a query over the induced subgraph of its own pattern loses no
    // answers: the correctness claim behind storing G[P] at the edges.
    std::mt19937_64 rng(16);
    for (int trial = 0; trial < 60; ++trial) {
        RdfGraph g = random_small_graph(rng, 5, 14);
        if (g.edge_count() == 0) continue;
        const Triple& seed = g.edges()[rng() % g.edge_count()];
        std::string text = "SELECT ?x WHERE { ?x " + render_term(seed.predicate) + " " +
                           render_term(seed.object) + " }";
        if (rng() % 2)
            text = "SELECT ?x ?y WHERE { ?x " + render_term(seed.predicate) + " ?y }";
        BgpQuery q = parse_bgp(text);
        RdfGraph sub = induce(g, {generalize(q)});
        EXPECT_EQ(testutil::binding_set(match(q, g)), testutil::binding_set(match(q, sub)))
            << "trial " << trial;
    }
}

TEST(Executable, MembershipAndEmptySet) {
    BgpQuery q = parse_bgp("SELECT ?f WHERE { ?f <director> <Anderson> }");
    DfsCode code = min_dfs_code(generalize(q));
    EXPECT_TRUE(executable(q, {code}));
    EXPECT_FALSE(executable(q, {}));
}

TEST(Executable, HomomorphicButNotIsomorphicIsRejected) {
    // Single-edge query versus a stored two-edge chain pattern: homomorphic
    // into it, but not isomorphic, so not executable.
    BgpQuery q = parse_bgp("SELECT ?x WHERE { ?x <a> ?y }");
    Pattern chain{{{0, 1, iri("a")}, {1, 2, iri("a")}}, 3};
    EXPECT_FALSE(executable(q, {min_dfs_code(chain)}));
}

namespace {

PatternCatalog three_entry_catalog(const RdfGraph& g, const std::vector<Pattern>& ps,
                                   const std::vector<std::uint64_t>& freqs) {
    PatternCatalog cat;
    for (std::size_t i = 0; i < ps.size(); ++i)
        cat.add(ps[i], min_dfs_code(ps[i]), freqs[i], induced_subgraph_bytes(g, ps[i]));
    return cat;
}

}  // namespace

TEST(PlaceGreedy, ZeroCapacity) {
    RdfGraph g = parse_ntriples(std::string("<u> <a> <v> .\n"));
    Pattern p{{{0, 1, iri("a")}}, 2};
    PatternCatalog cat = three_entry_catalog(g, {p}, {1});
    Placement pl = place_greedy(g, cat, {0});
    EXPECT_TRUE(pl.per_server[0].empty());
    EXPECT_EQ(pl.used_bytes[0], 0u);
}

TEST(PlaceGreedy, SingleEntryFits) {
    RdfGraph g = parse_ntriples(std::string("<u> <a> <v> .\n"));
    Pattern p{{{0, 1, iri("a")}}, 2};
    std::uint64_t bytes = induced_subgraph_bytes(g, p);
    PatternCatalog cat = three_entry_catalog(g, {p}, {1});
    Placement pl = place_greedy(g, cat, {bytes});
    EXPECT_EQ(pl.per_server[0].size(), 1u);
    EXPECT_EQ(pl.used_bytes[0], bytes);
}

TEST(PlaceGreedy, RatioOrderHandTrace) {
    // Disjoint single-edge patterns whose subgraph sizes are controlled via
    // IRI lengths. Frequencies tuned so the ratio order is p2 > p1 > p3 and
    // the capacity admits exactly p2 then p1, mirroring the
    // (10,4),(6,2),(5,5) / capacity-6 trace of the greedy rule.
    std::string nt;
    nt += "<s1> <a> <o1xxxxxxxxxx> .\n";  // pattern 1 subgraph, larger
    nt += "<s2> <b> <o2> .\n";            // pattern 2 subgraph, smaller
    nt += "<s3> <c> <o3xxxxxxxxxxxxxxxxxxxx> .\n";  // pattern 3, largest
    RdfGraph g = parse_ntriples(nt);
    Pattern p1{{{0, 1, iri("a")}}, 2};
    Pattern p2{{{0, 1, iri("b")}}, 2};
    Pattern p3{{{0, 1, iri("c")}}, 2};
    std::uint64_t b1 = induced_subgraph_bytes(g, p1);
    std::uint64_t b2 = induced_subgraph_bytes(g, p2);
    std::uint64_t b3 = induced_subgraph_bytes(g, p3);
    ASSERT_LT(b2, b1);
    ASSERT_LT(b1, b3);
    // freq ratios: p2 highest, then p1, then p3.
    std::uint64_t f1 = 10 * b1 / 4, f2 = 6 * b2 / 2, f3 = b3;
    ASSERT_GT(double(f2) / double(b2), double(f1) / double(b1));
    ASSERT_GT(double(f1) / double(b1), double(f3) / double(b3));
    PatternCatalog cat = three_entry_catalog(g, {p1, p2, p3}, {f1, f2, f3});
    Placement pl = place_greedy(g, cat, {b1 + b2});
    EXPECT_EQ(pl.per_server[0].size(), 2u);
    EXPECT_TRUE(pl.per_server[0].count(min_dfs_code(p1)));
    EXPECT_TRUE(pl.per_server[0].count(min_dfs_code(p2)));
    EXPECT_FALSE(pl.per_server[0].count(min_dfs_code(p3)));
    EXPECT_EQ(pl.used_bytes[0], b1 + b2);
}

TEST(PlaceGreedy, OverlapChargedOnce) {
    // Two patterns inducing the same triple: the union is charged once, so
    // both fit in the capacity of one.
    RdfGraph g = parse_ntriples(std::string("<u> <a> <u> .\n"));
    Pattern loop_pattern{{{0, 0, iri("a")}}, 1};
    Pattern edge_pattern{{{0, 1, iri("a")}}, 2};  // matches u->u homomorphically
    std::uint64_t bytes = induced_subgraph_bytes(g, loop_pattern);
    ASSERT_EQ(induced_subgraph_bytes(g, edge_pattern), bytes);
    PatternCatalog cat = three_entry_catalog(g, {loop_pattern, edge_pattern}, {2, 1});
    Placement pl = place_greedy(g, cat, {bytes});
    EXPECT_EQ(pl.per_server[0].size(), 2u);
    EXPECT_EQ(pl.used_bytes[0], bytes);
}

TEST(PlaceGreedy, EligibilityRestricts) {
    RdfGraph g = parse_ntriples(std::string("<u> <a> <v> .\n<u> <b> <v> .\n"));
    Pattern pa{{{0, 1, iri("a")}}, 2};
    Pattern pb{{{0, 1, iri("b")}}, 2};
    PatternCatalog cat = three_entry_catalog(g, {pa, pb}, {1, 1});
    Eligibility elig = std::vector<std::set<DfsCode>>{
        {min_dfs_code(pa)},
        {min_dfs_code(pb)},
    };
    Placement pl = place_greedy(g, cat, {1000, 1000}, elig);
    EXPECT_TRUE(pl.per_server[0].count(min_dfs_code(pa)));
    EXPECT_FALSE(pl.per_server[0].count(min_dfs_code(pb)));
    EXPECT_TRUE(pl.per_server[1].count(min_dfs_code(pb)));
    EXPECT_FALSE(pl.per_server[1].count(min_dfs_code(pa)));
}

TEST(PlaceGreedy, CapacityInvariantOnRandomCatalogs) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        RdfGraph g = random_small_graph(rng, 6, 16);
        PatternCatalog cat;
        int np = 1 + int(rng() % 4);
        for (int i = 0; i < np; ++i) {
            Pattern p = random_pattern(rng, 2);
            cat.add(p, min_dfs_code(p), rng() % 20, induced_subgraph_bytes(g, p));
        }
        std::vector<std::uint64_t> caps = {rng() % 200, rng() % 200};
        Placement pl = place_greedy(g, cat, caps);
        for (std::size_t k = 0; k < caps.size(); ++k) {
            EXPECT_LE(pl.used_bytes[k], caps[k]);
            // used_bytes equals the materialized union's serialized size.
            std::vector<Pattern> stored;
            for (const DfsCode& c : pl.per_server[k]) stored.push_back(cat.find(c)->pattern);
            EXPECT_EQ(pl.used_bytes[k], to_ntriples(induce(g, stored)).size());
        }
    }
}

TEST(UpdatePlacement, NoChangeIsIdentity) {
    RdfGraph g = parse_ntriples(std::string("<u> <a> <v> .\n"));
    Pattern p{{{0, 1, iri("a")}}, 2};
    PatternCatalog cat = three_entry_catalog(g, {p}, {3});
    Placement before = place_greedy(g, cat, {1000});
    PlacementUpdate upd = update_placement(g, cat, {}, before, {1000});
    EXPECT_EQ(upd.placement, before);
}

TEST(UpdatePlacement, OvertakingFrequencyEvicts) {
    std::string nt = "<s1> <a> <o1> .\n<s2> <b> <o2> .\n";
    RdfGraph g = parse_ntriples(nt);
    Pattern pa{{{0, 1, iri("a")}}, 2};
    Pattern pb{{{0, 1, iri("b")}}, 2};
    std::uint64_t ba = induced_subgraph_bytes(g, pa);
    PatternCatalog cat = three_entry_catalog(g, {pa, pb}, {5, 1});
    // Capacity fits one pattern only; pa wins initially.
    Placement before = place_greedy(g, cat, {ba});
    ASSERT_TRUE(before.per_server[0].count(min_dfs_code(pa)));
    ASSERT_FALSE(before.per_server[0].count(min_dfs_code(pb)));
    // Cloud reports pb far more often; after the update pb evicts pa.
    PlacementUpdate upd =
        update_placement(g, cat, {{min_dfs_code(pb), 100}}, before, {ba});
    EXPECT_TRUE(upd.placement.per_server[0].count(min_dfs_code(pb)));
    EXPECT_FALSE(upd.placement.per_server[0].count(min_dfs_code(pa)));
}

TEST(UpdatePlacement, UnknownCodeMaterializedFromCode) {
    RdfGraph g = parse_ntriples(std::string("<u> <a> <v> .\n"));
    PatternCatalog cat;
    Pattern p{{{0, 1, iri("a")}}, 2};
    DfsCode code = min_dfs_code(p);
    PlacementUpdate upd = update_placement(g, cat, {{code, 4}}, Placement{}, {1000});
    ASSERT_NE(upd.catalog.find(code), nullptr);
    EXPECT_EQ(upd.catalog.find(code)->frequency, 4u);
    EXPECT_EQ(upd.catalog.find(code)->subgraph_bytes, induced_subgraph_bytes(g, p));
    EXPECT_TRUE(upd.placement.per_server[0].count(code));
}

TEST(UpdatePlacement, ZeroedFrequenciesStayFeasible) {
    std::mt19937_64 rng(18);
    RdfGraph g = random_small_graph(rng, 5, 10);
    PatternCatalog cat;
    for (int i = 0; i < 3; ++i) {
        Pattern p = random_pattern(rng, 1);
        cat.add(p, min_dfs_code(p), 0, induced_subgraph_bytes(g, p));
    }
    std::vector<std::uint64_t> caps = {60};
    Placement pl = place_greedy(g, cat, caps);
    EXPECT_LE(pl.used_bytes[0], caps[0]);
}

TEST(Dumps, CatalogAndPlacementFormats) {
    RdfGraph g = parse_ntriples(std::string("<u> <a> <v> .\n"));
    Pattern p{{{0, 1, iri("a")}}, 2};
    DfsCode code = min_dfs_code(p);
    PatternCatalog cat = three_entry_catalog(g, {p}, {7});
    std::string dump = format_catalog(cat);
    std::string expect_line = std::to_string(code_hash(code)) + "\t7\t" +
                              std::to_string(induced_subgraph_bytes(g, p)) + "\t" +
                              code_to_string(code) + "\n";
    EXPECT_EQ(dump, expect_line);

    Placement pl = place_greedy(g, cat, {1000});
    EXPECT_EQ(format_placement(pl), "0\t" + std::to_string(code_hash(code)) + "\n");
}

TEST(Catalog, DuplicateCodesMerge) {
    PatternCatalog cat;
    Pattern p{{{0, 1, iri("a")}}, 2};
    DfsCode code = min_dfs_code(p);
    cat.add(p, code, 2, 10);
    cat.add(p, code, 3, 10);
    EXPECT_EQ(cat.size(), 1u);
    EXPECT_EQ(cat.find(code)->frequency, 5u);
}
