#ifndef ULTRABUBBLE_SNARLS_HPP
#define ULTRABUBBLE_SNARLS_HPP

#include "ultrabubble/biedged.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace ultrabubble {

enum class Orientation { RL, LR, LL, RR };
enum class SnarlSource { brute_force, external };

/// How the minimality half of the snarl definition is read.
enum class MinimalityRule {
    /// No black edge inside X is a bridge of X (the literal reading; any X
    /// that holds a tip's whole black edge fails).
    no_black_bridge,
    /// No black edge inside X disconnects the two frontiers.
    frontier_separating,
};

const char* to_string(Orientation o);
const char* to_string(MinimalityRule r);
MinimalityRule parse_minimality(std::string_view s);

struct NodePair {
    NodeId first = kNoNode;
    NodeId second = kNoNode;

    auto operator<=>(const NodePair&) const = default;
};

struct SnarlPair {
    NodeId sn1 = kNoNode;  // frontier closer to the root
    NodeId sn2 = kNoNode;
    Orientation orientation = Orientation::RL;
    SnarlSource source = SnarlSource::brute_force;
    std::string upstream_flag;  // third snarl-TSV column, passed through

    bool operator==(const SnarlPair&) const = default;
};

struct EnumerateOptions {
    size_t node_limit = 5000;
    MinimalityRule rule = MinimalityRule::no_black_bridge;
};

/// Every pair {x, y} on distinct black edges that satisfies separation and
/// minimality, as (smaller id, larger id) in ascending order. Throws a
/// guard-kind Error above options.node_limit nodes.
std::vector<NodePair> enumerate_snarls_naive(const BiedgedGraph& b, const EnumerateOptions& options = {});

/// Direct check of the definition with union-find; independent of the
/// enumerator and quadratic per pair, so meant for small graphs.
bool satisfies_snarl_definition(const BiedgedGraph& b, NodeId x, NodeId y, MinimalityRule rule);

/// Component containing x once the black edges of x and y are removed,
/// ascending.
std::vector<NodeId> separated_component(const BiedgedGraph& b, NodeId x, NodeId y);

/// Orders a raw pair by BFS depth (same-side ties by id) and tags its
/// orientation.
SnarlPair classify(NodePair p, const BfsTree& t, const BiedgedGraph& b, SnarlSource source);
std::vector<SnarlPair> classify_all(const std::vector<NodePair>& pairs, const BfsTree& t, const BiedgedGraph& b,
                                    SnarlSource source);

struct LoadedSnarls {
    std::vector<SnarlPair> snarls;
    std::vector<std::string> warnings;
};

/// Snarl-TSV: `node1<TAB>node2[<TAB>acyclic|cyclic]`, '#' comments allowed.
LoadedSnarls parse_snarls(std::string_view text, const BiedgedGraph& b, const BfsTree& t);
LoadedSnarls load_snarls(const std::string& path, const BiedgedGraph& b, const BfsTree& t);
std::string snarls_tsv(const BiedgedGraph& b, const std::vector<SnarlPair>& snarls);

}  // namespace ultrabubble

#endif  // ULTRABUBBLE_SNARLS_HPP
