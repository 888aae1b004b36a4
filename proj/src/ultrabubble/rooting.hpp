#ifndef ULTRABUBBLE_ROOTING_HPP
#define ULTRABUBBLE_ROOTING_HPP

#include "ultrabubble/biedged.hpp"
#include "ultrabubble/snarls.hpp"

#include <span>
#include <string>
#include <vector>

namespace ultrabubble {

inline constexpr const char* kRootSegment = "00";
inline constexpr const char* kSinkSegment = "ZZ";

struct Condensation {
    /// Members ascending; supernodes ordered by their smallest member.
    std::vector<std::vector<NodeId>> supernodes;
    /// Distinct (from, to) supernode pairs, ascending.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> dag_edges;
    std::vector<std::uint32_t> mapping;  // node -> supernode

    size_t size() const { return supernodes.size(); }
};

/// Iterative Tarjan SCC over the directed biedged graph.
Condensation condense(const BiedgedGraph& b);

/// Supernodes with DAG in-degree 0 (resp. out-degree 0), ascending.
std::vector<std::uint32_t> candidate_roots(const Condensation& c);
std::vector<std::uint32_t> candidate_sinks(const Condensation& c);

struct RootingOptions {
    /// Add the artificial root even if the graph already has one source.
    bool force = false;
    /// Above this node count the SCC split rule is skipped (see warning).
    size_t snarl_node_limit = 5000;
    MinimalityRule rule = MinimalityRule::no_black_bridge;
};

struct Synthesis {
    BiedgedGraph graph;
    bool changed = false;
    std::vector<std::string> log;
};

/// Returns a graph whose root is set: either the existing single source, or
/// 00_L with 00_R grey-connected to every source component.
Synthesis synthesize_root(const BiedgedGraph& b, const RootingOptions& options = {});

/// Adds ZZ_L/ZZ_R fed by every sink component. Keeps the root of `b`, except
/// that splitting a sink SCC may put the artificial root 00 in front of it.
Synthesis synthesize_sink(const BiedgedGraph& b, const RootingOptions& options = {});

/// Picks a non-nested R-L snarl of an SCC by DFS finishing times. Pairs are
/// given as (R node, L node). With `reverse` set the DFS follows edges
/// backwards and the roles of the two frontiers swap (sink-side use).
NodePair outermost_rl_snarl_in_scc(const BiedgedGraph& b, std::span<const NodeId> scc,
                                   const std::vector<NodePair>& snarls, bool reverse = false);

}  // namespace ultrabubble

#endif  // ULTRABUBBLE_ROOTING_HPP
