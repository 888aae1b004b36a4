#ifndef ULTRABUBBLE_SYNTH_HPP
#define ULTRABUBBLE_SYNTH_HPP

#include "ultrabubble/biedged.hpp"
#include "ultrabubble/gfa.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ultrabubble {

/// Counter-based generator (SplitMix64 over seed + counter). Streams for
/// different seeds never share state, and a stream can be forked by key.
class SplitMix {
public:
    explicit SplitMix(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next();
    /// Uniform in [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n);
    /// Uniform in [lo, hi].
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
    double unit();
    bool chance(double p) { return unit() < p; }
    SplitMix fork(std::uint64_t key) const;

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

struct SynthParams {
    std::uint64_t n_segments = 2;  // total, tips included
    double bubble_rate = 0.0;
    std::uint64_t n_cycles = 0;
    std::uint64_t n_tips = 0;
    std::uint64_t seed = 0;
};

/// Backbone chain with superbubble regions of 2-4 branches (1-2 segments
/// each); cycles are back edges inside single branches; tips are dead-end
/// segments hung off R nodes. Root 1_L, and the last backbone segment's R
/// node is the unique deepest sink. Throws an argument-kind Error when the
/// counts cannot be placed.
BidirectedGraph generate_gfa(const SynthParams& p);
BiedgedGraph generate(const SynthParams& p);

struct BubbleChain {
    BidirectedGraph gfa;
    /// (entry R, join L) of every bubble, by node name
    std::vector<std::pair<std::string, std::string>> bubbles;
};

/// `bubbles` bubbles in a row, each `width` single-segment branches. Extra
/// tips hang off the first backbone segment; cycles are self loops on
/// branches of the first bubble.
BubbleChain bubble_chain(std::uint64_t bubbles, std::uint64_t width, std::uint64_t tips = 0,
                         std::uint64_t cycles = 0);

}  // namespace ultrabubble

#endif  // ULTRABUBBLE_SYNTH_HPP
