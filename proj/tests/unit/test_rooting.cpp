#include "ultrabubble/error.hpp"
#include "ultrabubble/rooting.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <string>

using namespace ultrabubble;

namespace {

BiedgedGraph from_links(size_t segments, const std::vector<std::pair<int, int>>& links) {
    BiedgedBuilder b;
    for (size_t s = 1; s <= segments; ++s) b.add_segment(std::to_string(s));
    for (auto [from, to] : links) b.add_grey(oracle::R(from), oracle::L(to));
    return b.build();
}

bool contains(const std::vector<std::string>& log, const std::string& needle) {
    return std::any_of(log.begin(), log.end(), [&](const std::string& l) { return l.find(needle) != std::string::npos; });
}

NodePair rl(const BiedgedGraph& b, const char* r, const char* l) { return {b.at(r), b.at(l)}; }

}  // namespace

TEST_CASE("condensation of an acyclic graph is the graph itself") {
    auto b = from_links(3, {{1, 2}, {2, 3}});
    auto c = condense(b);
    CHECK(c.size() == b.node_count());
    for (const auto& s : c.supernodes) CHECK(s.size() == 1);
    CHECK(candidate_roots(c) == std::vector<std::uint32_t>{c.mapping[b.at("1_L")]});
    CHECK(candidate_sinks(c) == std::vector<std::uint32_t>{c.mapping[b.at("3_R")]});
}

TEST_CASE("condensation collapses a directed cycle") {
    // 1 -> 2 -> 3 -> 4 with 3 looping back to 2
    auto b = from_links(4, {{1, 2}, {2, 3}, {3, 4}, {3, 2}});
    auto c = condense(b);
    CHECK(c.size() == 5);
    const auto loop = c.supernodes[c.mapping[b.at("2_L")]];
    CHECK(loop == std::vector<NodeId>{b.at("2_L"), b.at("2_R"), b.at("3_L"), b.at("3_R")});
    // ordered by smallest member
    for (size_t i = 1; i < c.size(); ++i) CHECK(c.supernodes[i - 1][0] < c.supernodes[i][0]);
    for (auto [from, to] : c.dag_edges) CHECK(from != to);
    CHECK(condense(BiedgedBuilder{}.build()).size() == 0);
}

TEST_CASE("an existing single source is kept") {
    auto b = from_links(3, {{1, 2}, {1, 3}, {2, 3}});
    auto s = synthesize_root(b);
    CHECK(!s.changed);
    CHECK(s.graph.name(s.graph.root()) == "1_L");
    CHECK(s.graph.node_count() == b.node_count());
    CHECK(contains(s.log, "existing source 1_L"));
}

TEST_CASE("forcing the root adds 00 anyway") {
    auto b = from_links(2, {{1, 2}});
    auto s = synthesize_root(b, {true});
    CHECK(s.changed);
    CHECK(s.graph.name(s.graph.root()) == "00_L");
    CHECK(s.graph.has_grey(s.graph.at("00_R"), s.graph.at("1_L")));
    CHECK(s.graph.grey_out(s.graph.at("00_R")).size() == 1);
}

TEST_CASE("several sources share one artificial root") {
    auto b = from_links(4, {{1, 3}, {2, 3}, {3, 4}});
    auto s = synthesize_root(b);
    const auto& g = s.graph;
    CHECK(g.name(g.root()) == "00_L");
    CHECK(g.has_grey(g.at("00_R"), g.at("1_L")));
    CHECK(g.has_grey(g.at("00_R"), g.at("2_L")));
    CHECK(g.grey_out(g.at("00_R")).size() == 2);
    CHECK_NOTHROW(bfs_tree(g));
}

TEST_CASE("reserved root id") {
    BiedgedBuilder bb;
    bb.add_segment("00");
    bb.add_segment("1");
    auto b = bb.build();
    try {
        synthesize_root(b);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::structure);
    }
}

TEST_CASE("a source SCC without snarls is entered at its smallest L node") {
    // one segment looping onto itself: a single black edge cannot frame a snarl
    auto b = from_links(1, {{1, 1}});
    auto s = synthesize_root(b);
    CHECK(s.graph.has_grey(s.graph.at("00_R"), s.graph.at("1_L")));
    CHECK(s.graph.node_count() == 4);
}

TEST_CASE("outermost snarl of a two-level SCC") {
    auto b = from_links(8, {{1, 2}, {2, 3}, {2, 8}, {3, 4}, {3, 5}, {4, 6}, {5, 6}, {6, 7}, {8, 7}, {7, 1}});
    auto c = condense(b);
    REQUIRE(c.size() == 1);
    const auto& scc = c.supernodes[0];
    const std::vector<NodePair> snarls{rl(b, "3_R", "6_L"), rl(b, "2_R", "7_L")};
    CHECK(outermost_rl_snarl_in_scc(b, scc, snarls) == rl(b, "2_R", "7_L"));

    auto s = synthesize_root(b);
    const auto& g = s.graph;
    CHECK(g.name(g.root()) == "00_L");
    CHECK(contains(s.log, "split black edge"));
    CHECK(g.node_count() == b.node_count() + 4);
    CHECK(g.grey_out(g.at("00_R")).size() == 1);
    CHECK_NOTHROW(bfs_tree(g));
    const auto before = oracle::ultrabubble_names(b, MinimalityRule::no_black_bridge);
    const auto after = oracle::ultrabubble_names(g, MinimalityRule::no_black_bridge);
    CHECK(before.count({"3_R", "6_L"}));
    CHECK(std::includes(after.begin(), after.end(), before.begin(), before.end()));
}

TEST_CASE("a split never cuts through a crossing ultrabubble") {
    // one SCC where the snarls (4_R, 2_L) and (3_R, 1_L) cross; only the
    // second is an ultrabubble and black edge 4 lies inside it
    auto b = from_links(4, {{1, 3}, {2, 4}, {3, 1}, {3, 2}, {4, 1}});
    auto s = synthesize_root(b);
    const auto after = oracle::ultrabubble_names(s.graph, MinimalityRule::no_black_bridge);
    CHECK(after.count({"3_R", "1_L"}));
    CHECK(s.graph.partner(s.graph.at("4_L")) == s.graph.at("4_R"));
}

TEST_CASE("outermost snarl of a three-level SCC") {
    auto b = from_links(11, {{1, 2}, {2, 3}, {2, 10}, {3, 4}, {3, 9}, {4, 5}, {4, 6}, {5, 7}, {6, 7}, {7, 8},
                             {9, 8}, {8, 11}, {10, 11}, {11, 1}});
    auto c = condense(b);
    REQUIRE(c.size() == 1);
    const std::vector<NodePair> snarls{rl(b, "4_R", "7_L"), rl(b, "3_R", "8_L"), rl(b, "2_R", "11_L")};
    CHECK(outermost_rl_snarl_in_scc(b, c.supernodes[0], snarls) == rl(b, "2_R", "11_L"));
    // any inner start gives the same answer
    const std::vector<NodePair> middle_first{rl(b, "3_R", "8_L"), rl(b, "4_R", "7_L"), rl(b, "2_R", "11_L")};
    CHECK(outermost_rl_snarl_in_scc(b, c.supernodes[0], middle_first) == rl(b, "2_R", "11_L"));
    CHECK(outermost_rl_snarl_in_scc(b, c.supernodes[0], {rl(b, "3_R", "8_L")}) == rl(b, "3_R", "8_L"));
    CHECK_THROWS_AS(outermost_rl_snarl_in_scc(b, c.supernodes[0], {}), Error);
}

TEST_CASE("synthesized roots reach everything") {
    oracle::Rng rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        const auto n = oracle::pick(rng, 1, 25);
        auto b = oracle::random_graph(rng, n, oracle::pick(rng, 0, 2 * n));
        if (connected_components(b).size() != 1) continue;
        auto s = synthesize_root(b);
        const auto& g = s.graph;
        REQUIRE(g.has_root());
        CHECK(g.in_degree(g.root()) == 0);
        CHECK_NOTHROW(bfs_tree(g));  // throws on any unreachable node
        // original nodes keep their names
        for (NodeId v = 0; v < b.node_count(); ++v) CHECK(g.find(b.name(v)));
        if (s.changed) CHECK(g.name(g.root()) == "00_L");
    }
}

TEST_CASE("rooting keeps existing ultrabubbles") {
    oracle::Rng rng(17);
    int checked = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const auto n = oracle::pick(rng, 2, 12);
        auto b = oracle::random_graph(rng, n, oracle::pick(rng, n, 2 * n));
        if (connected_components(b).size() != 1) continue;
        for (auto rule : {MinimalityRule::no_black_bridge, MinimalityRule::frontier_separating}) {
            const auto before = oracle::ultrabubble_names(b, rule);
            auto s = synthesize_root(b, {false, 5000, rule});
            const auto after = oracle::ultrabubble_names(s.graph, rule);
            CHECK(std::includes(after.begin(), after.end(), before.begin(), before.end()));
            ++checked;
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("sinks") {
    auto single = from_links(3, {{1, 2}, {2, 3}});
    auto s = synthesize_sink(synthesize_root(single).graph);
    CHECK(!s.changed);
    CHECK(s.graph.name(s.graph.end()) == "3_R");

    auto fork = from_links(3, {{1, 2}, {1, 3}});
    auto f = synthesize_sink(synthesize_root(fork).graph);
    const auto& g = f.graph;
    CHECK(f.changed);
    CHECK(g.name(g.end()) == "ZZ_R");
    CHECK(g.name(g.root()) == "1_L");
    CHECK(g.has_grey(g.at("2_R"), g.at("ZZ_L")));
    CHECK(g.has_grey(g.at("3_R"), g.at("ZZ_L")));
    CHECK(sinks(g) == std::vector<NodeId>{g.at("ZZ_R")});

    BiedgedBuilder bb;
    for (const char* seg : {"1", "2", "ZZ"}) bb.add_segment(seg);
    bb.add_grey("1_R", "2_L");
    bb.add_grey("1_R", "ZZ_L");
    CHECK_THROWS_AS(synthesize_sink(bb.build()), Error);
}

TEST_CASE("a sink SCC with a snarl is split and stays rooted") {
    // 1 -> 2, then a loop 2 -> 3 -> {4,5} -> 6 -> 2 with no exit
    auto b = from_links(6, {{1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 6}, {5, 6}, {6, 2}});
    auto rooted = synthesize_root(b).graph;
    auto s = synthesize_sink(rooted);
    const auto& g = s.graph;
    CHECK(g.name(g.end()) == "ZZ_R");
    // the split leaves a fresh source, so 00 goes in front of 1
    CHECK(g.name(g.root()) == "00_L");
    CHECK(g.has_grey(g.at("00_R"), g.at("1_L")));
    CHECK(g.in_degree(g.at("1_L")) == 1);
    CHECK_NOTHROW(bfs_tree(g));
    CHECK(contains(s.log, "split black edge"));
}

TEST_CASE("sink synthesis keeps existing ultrabubbles") {
    oracle::Rng rng(29);
    int checked = 0;
    for (int trial = 0; trial < 600 && checked < 150; ++trial) {
        const auto n = oracle::pick(rng, 2, 12);
        auto b = oracle::random_rooted(rng, n, oracle::pick(rng, 0, n));
        if (!sinks(b).empty()) continue;
        const auto before = oracle::ultrabubble_names(b, MinimalityRule::no_black_bridge);
        auto s = synthesize_sink(b);
        const auto& g = s.graph;
        CHECK(sinks(g) == std::vector<NodeId>{g.at("ZZ_R")});
        CHECK((g.name(g.root()) == "1_L" || g.name(g.root()) == "00_L"));
        CHECK(g.in_degree(g.root()) == 0);
        CHECK_NOTHROW(bfs_tree(g));
        const auto after = oracle::ultrabubble_names(g, MinimalityRule::no_black_bridge);
        CHECK(std::includes(after.begin(), after.end(), before.begin(), before.end()));
        ++checked;
    }
    CHECK(checked > 20);
}
