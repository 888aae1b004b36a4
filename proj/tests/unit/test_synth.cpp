#include "ultrabubble/error.hpp"
#include "ultrabubble/synth.hpp"
#include "ultrabubble/ultrabubbles.hpp"

#include <doctest.h>

#include <set>

using namespace ultrabubble;

namespace {

SynthParams params(std::uint64_t segments, double rate, std::uint64_t cycles, std::uint64_t tips, std::uint64_t seed) {
    SynthParams p;
    p.n_segments = segments;
    p.bubble_rate = rate;
    p.n_cycles = cycles;
    p.n_tips = tips;
    p.seed = seed;
    return p;
}

std::vector<Verdict> verdicts(const BiedgedGraph& b) {
    auto t = bfs_tree(b);
    auto snarls = classify_all(enumerate_snarls_naive(b), t, b, SnarlSource::brute_force);
    return classify_lca(snarls, b, compute_features(b), LcaIndex(t));
}

}  // namespace

TEST_CASE("split mix streams") {
    SplitMix a(1), b(1), c(2);
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next();
        CHECK(x == b.next());
        CHECK(x != c.next());
    }
    SplitMix r(9);
    for (int i = 0; i < 1000; ++i) {
        CHECK(r.below(7) < 7);
        const auto v = r.between(3, 5);
        CHECK((v >= 3 && v <= 5));
        const double u = r.unit();
        CHECK((u >= 0.0 && u < 1.0));
    }
    CHECK(SplitMix(4).fork(1).next() == SplitMix(4).fork(1).next());
    CHECK(SplitMix(4).fork(1).next() != SplitMix(4).fork(2).next());
}

TEST_CASE("two segments give the trivial snarl graph") {
    auto b = generate(params(2, 0.0, 0, 0, 11));
    CHECK(b.node_count() == 4);
    CHECK(b.name(b.root()) == "1_L");
    CHECK(b.name(b.end()) == "2_R");
    CHECK(b.has_grey(b.at("1_R"), b.at("2_L")));
    auto v = verdicts(b);
    REQUIRE(v.size() == 1);
    CHECK(v[0].is_ultrabubble);
    CHECK(v[0].trivial);
}

TEST_CASE("same seed, same graph") {
    const auto p = params(300, 0.4, 3, 5, 42);
    CHECK(write_gfa(generate_gfa(p)) == write_gfa(generate_gfa(p)));
    auto q = p;
    q.seed = 43;
    CHECK(write_gfa(generate_gfa(p)) != write_gfa(generate_gfa(q)));
}

TEST_CASE("requested counts are met") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const std::uint64_t segments = 60 + seed * 7, tips = seed % 6, cycles = seed % 4;
        auto b = generate(params(segments, 0.5, cycles, tips, seed));
        CHECK(b.node_count() == 2 * segments);
        auto f = compute_features(b);
        // the extra two are the root and the sink
        CHECK(f.tips.size() == tips + 2);
        CHECK(f.back_edges == cycles);
        CHECK(f.cycle_closers.size() == cycles);
        // tips are sinks too, but the end is the only deepest one
        auto t = bfs_tree(b);
        for (NodeId s : sinks(b)) {
            if (s != b.end()) CHECK(t.depth[s] < t.depth[b.end()]);
        }
    }
}

TEST_CASE("impossible placements") {
    CHECK_THROWS_AS(generate(params(10, 0.0, 1, 0, 1)), Error);
    CHECK_THROWS_AS(generate(params(1, 0.0, 0, 0, 1)), Error);
    CHECK_THROWS_AS(generate(params(5, 1.5, 0, 0, 1)), Error);
    CHECK_THROWS_AS(generate(params(4, 0.0, 0, 10, 1)), Error);
}

TEST_CASE("without cycles and tips every RL snarl is an ultrabubble") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        auto b = generate(params(40 + seed * 9, 0.6, 0, 0, seed));
        size_t rl = 0;
        for (const auto& v : verdicts(b)) {
            if (v.snarl.orientation != Orientation::RL) continue;
            ++rl;
            CHECK(v.is_ultrabubble);
        }
        CHECK(rl > 0);
        auto naive = classify_naive(classify_all(enumerate_snarls_naive(b), bfs_tree(b), b, SnarlSource::brute_force), b);
        for (const auto& v : naive) {
            if (v.snarl.orientation == Orientation::RL) CHECK(v.is_ultrabubble);
        }
    }
}

TEST_CASE("bubble chain") {
    auto chain = bubble_chain(5, 3);
    CHECK(chain.bubbles.size() == 5);
    CHECK(chain.gfa.segments().size() == 2 + 5 * 4 + 1);
    auto b = to_biedged(chain.gfa);
    b.set_root(b.at("1_L"));
    std::set<std::pair<std::string, std::string>> ub;
    for (const auto& v : verdicts(b)) {
        if (v.is_ultrabubble) ub.emplace(b.name(v.snarl.sn1), b.name(v.snarl.sn2));
    }
    for (const auto& p : chain.bubbles) CHECK(ub.count(p));

    auto tipped = bubble_chain(3, 2, 2, 1);
    auto tb = to_biedged(tipped.gfa);
    tb.set_root(tb.at("1_L"));
    auto f = compute_features(tb);
    CHECK(f.tips.size() == 2 + 2);
    CHECK(f.cycle_closers.size() == 1);
    CHECK_THROWS_AS(bubble_chain(2, 2, 0, 5), Error);
    CHECK_THROWS_AS(bubble_chain(2, 0), Error);
}
