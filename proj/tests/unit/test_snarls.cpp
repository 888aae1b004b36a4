#include "ultrabubble/error.hpp"
#include "ultrabubble/snarls.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstdlib>

using namespace ultrabubble;

namespace {

BiedgedGraph rooted(const char* text) {
    auto b = to_biedged(parse_gfa(text));
    b.set_root(b.at("1_L"));
    return b;
}

const char* kDiamond = "S\t1\tA\nS\t2\tC\nS\t3\tG\nS\t4\tT\n"
                       "L\t1\t+\t2\t+\t*\nL\t1\t+\t3\t+\t*\nL\t2\t+\t4\t+\t*\nL\t3\t+\t4\t+\t*\n";

std::vector<std::pair<std::string, std::string>> names(const BiedgedGraph& b, const std::vector<NodePair>& pairs) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& p : pairs) out.emplace_back(b.name(p.first), b.name(p.second));
    return out;
}

}  // namespace

TEST_CASE("trivial snarl graph") {
    auto b = rooted("S\t1\tA\nS\t2\tC\nL\t1\t+\t2\t+\t*\n");
    auto s = enumerate_snarls_naive(b);
    CHECK(names(b, s) == std::vector<std::pair<std::string, std::string>>{{"1_R", "2_L"}});
}

TEST_CASE("diamond has a single snarl") {
    auto b = rooted(kDiamond);
    auto literal = enumerate_snarls_naive(b, {5000, MinimalityRule::no_black_bridge});
    CHECK(names(b, literal) == std::vector<std::pair<std::string, std::string>>{{"1_R", "4_L"}});
    // the two branch ends also separate once only the frontiers must stay joined
    auto frontier = enumerate_snarls_naive(b, {5000, MinimalityRule::frontier_separating});
    CHECK(names(b, frontier) ==
          std::vector<std::pair<std::string, std::string>>{{"1_R", "4_L"}, {"2_L", "3_L"}, {"2_R", "3_R"}});
    CHECK(!satisfies_snarl_definition(b, b.at("1_R"), b.at("2_L"), MinimalityRule::no_black_bridge));
    CHECK(separated_component(b, b.at("1_R"), b.at("4_L")).size() == 6);
}

TEST_CASE("tips split the two minimality readings") {
    // 1 -> 2 -> 4 and 1 -> 3 -> 4 with a dead end 5 hanging off 2
    auto b = rooted("S\t1\tA\nS\t2\tC\nS\t3\tG\nS\t4\tT\nS\t5\tT\n"
                    "L\t1\t+\t2\t+\t*\nL\t1\t+\t3\t+\t*\nL\t2\t+\t4\t+\t*\nL\t3\t+\t4\t+\t*\nL\t2\t+\t5\t+\t*\n");
    const NodeId x = b.at("1_R"), y = b.at("4_L");
    CHECK(!satisfies_snarl_definition(b, x, y, MinimalityRule::no_black_bridge));
    CHECK(satisfies_snarl_definition(b, x, y, MinimalityRule::frontier_separating));
    auto literal = enumerate_snarls_naive(b, {5000, MinimalityRule::no_black_bridge});
    auto frontier = enumerate_snarls_naive(b, {5000, MinimalityRule::frontier_separating});
    CHECK(std::find(literal.begin(), literal.end(), NodePair{x, y}) == literal.end());
    CHECK(std::find(frontier.begin(), frontier.end(), NodePair{x, y}) != frontier.end());
}

TEST_CASE("size guard") {
    oracle::Rng rng(1);
    auto b = oracle::random_rooted(rng, 30, 10);
    CHECK_THROWS_AS(enumerate_snarls_naive(b, {59, MinimalityRule::no_black_bridge}), Error);
    CHECK_NOTHROW(enumerate_snarls_naive(b, {60, MinimalityRule::no_black_bridge}));
}

TEST_CASE("enumerator matches the definition on random graphs") {
    oracle::Rng rng(101);
    for (int trial = 0; trial < 250; ++trial) {
        const auto n = oracle::pick(rng, 1, 14);
        const auto m = oracle::pick(rng, 0, 2 * n + 2);
        // unrooted, possibly disconnected, with self loops and parallel edges
        auto b = trial % 2 ? oracle::random_graph(rng, n, m) : oracle::random_rooted(rng, n, m / 2);
        for (auto rule : {MinimalityRule::no_black_bridge, MinimalityRule::frontier_separating}) {
            const auto fast = enumerate_snarls_naive(b, {5000, rule});
            const auto slow = oracle::all_snarls(b, rule);
            CHECK(fast == slow);
            for (const auto& p : fast) CHECK(satisfies_snarl_definition(b, p.first, p.second, rule));
        }
    }
}

TEST_CASE("literal snarls are a subset of frontier snarls") {
    oracle::Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        auto b = oracle::random_rooted(rng, oracle::pick(rng, 2, 40), oracle::pick(rng, 0, 30));
        auto literal = enumerate_snarls_naive(b, {5000, MinimalityRule::no_black_bridge});
        auto frontier = enumerate_snarls_naive(b, {5000, MinimalityRule::frontier_separating});
        CHECK(std::includes(frontier.begin(), frontier.end(), literal.begin(), literal.end()));
    }
}

TEST_CASE("classification by depth") {
    auto b = rooted(kDiamond);
    auto t = bfs_tree(b);
    auto s = classify({b.at("4_L"), b.at("1_R")}, t, b, SnarlSource::external);
    CHECK(s.sn1 == b.at("1_R"));
    CHECK(s.sn2 == b.at("4_L"));
    CHECK(s.orientation == Orientation::RL);
    auto ll = classify({b.at("3_L"), b.at("2_L")}, t, b, SnarlSource::external);
    CHECK(ll.orientation == Orientation::LL);
    CHECK(ll.sn1 == b.at("2_L"));
    auto lr = classify({b.at("2_L"), b.at("4_R")}, t, b, SnarlSource::external);
    CHECK(lr.orientation == Orientation::LR);
    auto rr = classify({b.at("2_R"), b.at("3_R")}, t, b, SnarlSource::external);
    CHECK(rr.orientation == Orientation::RR);
}

TEST_CASE("mixed-side snarls never tie on depth") {
    oracle::Rng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        auto b = oracle::random_rooted(rng, oracle::pick(rng, 2, 30), oracle::pick(rng, 0, 20));
        auto t = bfs_tree(b);
        for (const auto& s : classify_all(enumerate_snarls_naive(b), t, b, SnarlSource::brute_force)) {
            CHECK(t.depth[s.sn1] <= t.depth[s.sn2]);
            if (b.side(s.sn1) != b.side(s.sn2)) CHECK(t.depth[s.sn1] != t.depth[s.sn2]);
        }
    }
}

TEST_CASE("snarl TSV parsing") {
    auto b = rooted(kDiamond);
    auto t = bfs_tree(b);

    auto empty = parse_snarls("", b, t);
    CHECK(empty.snarls.empty());

    auto loaded = parse_snarls("# header\n4_L\t1_R\tacyclic\n1_R\t4_L\n\n2_L 3_L\n", b, t);
    REQUIRE(loaded.snarls.size() == 2);
    CHECK(loaded.snarls[0].sn1 == b.at("1_R"));
    CHECK(loaded.snarls[0].upstream_flag == "acyclic");
    CHECK(loaded.snarls[0].source == SnarlSource::external);
    CHECK(loaded.snarls[1].orientation == Orientation::LL);
    REQUIRE(loaded.warnings.size() == 1);
    CHECK(loaded.warnings[0].find("line 3") != std::string::npos);
    CHECK(snarls_tsv(b, loaded.snarls) == "1_R\t4_L\tacyclic\n2_L\t3_L\n");

    try {
        parse_snarls("1_R\t4_L\n1_R\t9_L\n", b, t);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::reference);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_snarls("1_R\n", b, t), Error);
    CHECK_THROWS_AS(parse_snarls("1_R\t4_L\tmaybe\n", b, t), Error);
    CHECK_THROWS_AS(parse_snarls("1_L\t1_R\n", b, t), Error);
    CHECK_THROWS_AS(load_snarls("/nonexistent.tsv", b, t), Error);
}

TEST_CASE("thread count does not change the result") {
    oracle::Rng rng(55);
    auto b = oracle::random_rooted(rng, 300, 150);
    setenv("ULTRABUBBLE_THREADS", "1", 1);
    auto one = enumerate_snarls_naive(b);
    setenv("ULTRABUBBLE_THREADS", "4", 1);
    auto four = enumerate_snarls_naive(b);
    unsetenv("ULTRABUBBLE_THREADS");
    CHECK(one == four);
    CHECK(!one.empty());
}
