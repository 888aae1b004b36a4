#ifndef ULTRABUBBLE_FEATURES_HPP
#define ULTRABUBBLE_FEATURES_HPP

#include "ultrabubble/biedged.hpp"

#include <string>
#include <vector>

namespace ultrabubble {

struct CycleCloser {
    NodeId node = kNoNode;
    /// grey back edge (R node, L node) that closed the cycle at `node`
    std::pair<NodeId, NodeId> closing_edge{kNoNode, kNoNode};
};

struct CycleScan {
    std::vector<CycleCloser> closers;  // ascending by node, one per node
    size_t back_edges = 0;             // every back edge, before deduplication
};

/// Tips and cycle-closing nodes; `ftip` is their union in scan order
/// (tips ascending, then closers ascending).
struct FtipSet {
    std::vector<NodeId> tips;
    std::vector<CycleCloser> cycle_closers;
    std::vector<NodeId> ftip;
    size_t back_edges = 0;
};

/// Nodes with no incident grey edge.
std::vector<NodeId> find_tips(const BiedgedGraph& b);

/// Iterative WHITE/GRAY/BLACK DFS from the root, children in ascending id
/// order. Throws a rooting-kind Error if some node is not reached.
CycleScan find_cycle_closers(const BiedgedGraph& b);

FtipSet build_ftip(std::vector<NodeId> tips, CycleScan closers);

FtipSet compute_features(const BiedgedGraph& b);

/// `kind<TAB>node[<TAB>closing_edge]` lines.
std::string features_tsv(const BiedgedGraph& b, const FtipSet& f);

}  // namespace ultrabubble

#endif  // ULTRABUBBLE_FEATURES_HPP
