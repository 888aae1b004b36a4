#include "ultrabubble/synth.hpp"

#include "ultrabubble/error.hpp"

#include <algorithm>

namespace ultrabubble {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class GfaSketch {
public:
    explicit GfaSketch(SplitMix& rng) : rng_(rng) {}

    std::uint64_t segment() {
        const std::uint64_t id = next_++;
        static constexpr char bases[] = {'A', 'C', 'G', 'T'};
        std::string seq(rng_.between(1, 8), 'A');
        for (char& c : seq) c = bases[rng_.below(4)];
        g_.add_segment({std::to_string(id), std::move(seq), {}});
        return id;
    }

    void link(std::uint64_t from, std::uint64_t to) {
        g_.add_link({std::to_string(from), Orient::forward, std::to_string(to), Orient::forward, "*", {}});
    }

    std::uint64_t next_id() const { return next_; }
    BidirectedGraph take() { return std::move(g_); }

private:
    SplitMix& rng_;
    BidirectedGraph g_;
    std::uint64_t next_ = 1;
};

}  // namespace

std::uint64_t SplitMix::next() {
    return splitmix64(seed_ ^ splitmix64(counter_++));
}

std::uint64_t SplitMix::below(std::uint64_t n) {
    if (n == 0) throw Error(ErrorKind::argument, "random range must be nonempty");
    // rejection sampling keeps the result unbiased
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = next();
    } while (x >= limit);
    return x % n;
}

double SplitMix::unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

SplitMix SplitMix::fork(std::uint64_t key) const {
    return SplitMix(splitmix64(seed_ ^ splitmix64(~key)));
}

BidirectedGraph generate_gfa(const SynthParams& p) {
    if (!(p.bubble_rate >= 0.0 && p.bubble_rate <= 1.0)) {
        throw Error(ErrorKind::argument, "bubble rate must lie in [0, 1]");
    }
    if (p.n_segments < 2 || p.n_segments - 2 < p.n_tips) {
        throw Error(ErrorKind::argument, "need at least two backbone segments besides the " +
                                             std::to_string(p.n_tips) + " tip segments");
    }
    const std::uint64_t core = p.n_segments - p.n_tips;
    if (p.n_tips > 0 && core < 3) {
        throw Error(ErrorKind::argument, "tips need a backbone of at least three segments");
    }
    // The last `tail` segments carry no tips, which keeps the sink deepest.
    const std::uint64_t tail = std::min<std::uint64_t>(2, core - 1);

    SplitMix rng(p.seed);
    GfaSketch sketch(rng);
    std::vector<std::vector<std::uint64_t>> branches;

    std::uint64_t prev = sketch.segment();
    std::uint64_t budget = core - 1 - tail;
    while (budget > 0) {
        if (budget >= 3 && rng.chance(p.bubble_rate)) {
            const std::uint64_t k = rng.between(2, std::min<std::uint64_t>(4, budget - 1));
            std::uint64_t spare = budget - 1 - k;
            std::vector<std::uint64_t> ends;
            for (std::uint64_t i = 0; i < k; ++i) {
                std::vector<std::uint64_t> branch{sketch.segment()};
                sketch.link(prev, branch.back());
                if (spare > 0 && rng.chance(0.5)) {
                    --spare;
                    branch.push_back(sketch.segment());
                    sketch.link(branch[0], branch[1]);
                }
                budget -= branch.size();
                ends.push_back(branch.back());
                branches.push_back(std::move(branch));
            }
            const std::uint64_t join = sketch.segment();
            --budget;
            for (std::uint64_t e : ends) sketch.link(e, join);
            prev = join;
        } else {
            const std::uint64_t s = sketch.segment();
            sketch.link(prev, s);
            prev = s;
            --budget;
        }
    }
    const std::uint64_t last_tippable = sketch.next_id() - 1;
    for (std::uint64_t i = 0; i < tail; ++i) {
        const std::uint64_t s = sketch.segment();
        sketch.link(prev, s);
        prev = s;
    }

    if (p.n_cycles > branches.size()) {
        throw Error(ErrorKind::argument, std::to_string(p.n_cycles) + " cycles requested but only " +
                                             std::to_string(branches.size()) + " bubble branches exist");
    }
    // partial Fisher-Yates: the first n_cycles branches get a back edge
    for (std::uint64_t i = 0; i < p.n_cycles; ++i) {
        std::swap(branches[i], branches[i + rng.below(branches.size() - i)]);
        sketch.link(branches[i].back(), branches[i].front());
    }
    for (std::uint64_t i = 0; i < p.n_tips; ++i) {
        const std::uint64_t anchor = rng.between(1, last_tippable);
        sketch.link(anchor, sketch.segment());
    }
    return sketch.take();
}

BiedgedGraph generate(const SynthParams& p) {
    BiedgedGraph b = to_biedged(generate_gfa(p));
    b.set_root(b.at("1_L"));
    const BfsTree t = bfs_tree(b);
    const NodeId end = choose_end(b, t);
    for (NodeId s : sinks(b)) {
        if (s != end && t.depth[s] >= t.depth[end]) {
            throw Error(ErrorKind::structure, "synthetic graph has no unique deepest sink");
        }
    }
    b.set_end(end);
    return b;
}

BubbleChain bubble_chain(std::uint64_t bubbles, std::uint64_t width, std::uint64_t tips, std::uint64_t cycles) {
    if (width < 1) throw Error(ErrorKind::argument, "bubble width must be positive");
    if (cycles > width * bubbles && cycles > 0) throw Error(ErrorKind::argument, "more cycles than branches");
    SplitMix rng(bubbles * 1000003 + width);
    GfaSketch sketch(rng);
    BubbleChain out;
    const std::uint64_t first = sketch.segment();
    std::uint64_t prev = sketch.segment();
    sketch.link(first, prev);
    std::vector<std::uint64_t> first_branches;
    for (std::uint64_t i = 0; i < bubbles; ++i) {
        std::vector<std::uint64_t> ends;
        for (std::uint64_t j = 0; j < width; ++j) {
            const std::uint64_t s = sketch.segment();
            sketch.link(prev, s);
            ends.push_back(s);
        }
        const std::uint64_t join = sketch.segment();
        for (std::uint64_t e : ends) sketch.link(e, join);
        out.bubbles.emplace_back(std::to_string(prev) + "_R", std::to_string(join) + "_L");
        if (first_branches.size() < cycles) {
            for (std::uint64_t e : ends) {
                if (first_branches.size() < cycles) first_branches.push_back(e);
            }
        }
        prev = join;
    }
    const std::uint64_t last = sketch.segment();
    sketch.link(prev, last);
    for (std::uint64_t c : first_branches) sketch.link(c, c);
    for (std::uint64_t i = 0; i < tips; ++i) sketch.link(first, sketch.segment());
    out.gfa = sketch.take();
    return out;
}

}  // namespace ultrabubble
