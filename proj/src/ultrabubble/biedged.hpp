#ifndef ULTRABUBBLE_BIEDGED_HPP
#define ULTRABUBBLE_BIEDGED_HPP

#include "ultrabubble/gfa.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ultrabubble {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

enum class Side : std::uint8_t { L, R };

/// A segment end in the "SEGID_L" / "SEGID_R" naming convention.
struct NodeSide {
    std::string segment;
    Side side = Side::L;

    std::string name() const;
    bool operator==(const NodeSide&) const = default;
};

std::optional<NodeSide> parse_node_side(std::string_view name);
std::string node_name(std::string_view segment, Side side);

class BiedgedGraph;

/// Collects segments and grey edges by name; build() assigns node ids in
/// natural name order so that id order equals (segment-id, side) order.
class BiedgedBuilder {
public:
    /// Black edge SEGID_L -> SEGID_R.
    void add_segment(const std::string& id);
    /// Black edge with explicitly named ends (used when splitting edges).
    void add_black(const std::string& left_name, const std::string& right_name, const std::string& label);
    /// Grey edge from an R node to an L node, by node name.
    void add_grey(const std::string& from_r, const std::string& to_l, std::uint32_t count = 1);
    void set_root(std::string name) { root_ = std::move(name); }
    void set_end(std::string name) { end_ = std::move(name); }

    bool has_node(const std::string& name) const { return sides_.count(name) != 0; }
    /// Removes the black edge whose L node is `left_name` (and its R node).
    void remove_black(const std::string& left_name);
    void remove_grey(const std::string& from_r, const std::string& to_l);

    BiedgedGraph build() const;

private:
    struct Black {
        std::string left, right, label;
    };
    std::vector<Black> blacks_;
    std::unordered_map<std::string, Side> sides_;
    std::vector<std::pair<std::pair<std::string, std::string>, std::uint32_t>> greys_;
    std::string root_, end_;
};

/// Bipartite directed biedged graph: black edges L->R, grey edges R->L.
/// Immutable after build() except for the root/end designation.
class BiedgedGraph {
public:
    BiedgedGraph() = default;

    size_t node_count() const { return names_.size(); }
    size_t segment_count() const { return names_.size() / 2; }
    /// Distinct grey edges (parallel copies collapsed).
    size_t grey_edge_count() const { return grey_targets_.size(); }

    const std::string& name(NodeId v) const { return names_[v]; }
    Side side(NodeId v) const { return sides_[v]; }
    NodeId partner(NodeId v) const { return partners_[v]; }
    const std::string& label(NodeId v) const { return labels_[v]; }

    std::span<const NodeId> grey_out(NodeId v) const {
        return {grey_targets_.data() + out_offsets_[v], grey_targets_.data() + out_offsets_[v + 1]};
    }
    std::span<const std::uint32_t> grey_out_counts(NodeId v) const {
        return {grey_counts_.data() + out_offsets_[v], grey_counts_.data() + out_offsets_[v + 1]};
    }
    std::span<const NodeId> grey_in(NodeId v) const {
        return {grey_sources_.data() + in_offsets_[v], grey_sources_.data() + in_offsets_[v + 1]};
    }
    std::span<const std::uint32_t> grey_in_counts(NodeId v) const {
        return {grey_in_counts_.data() + in_offsets_[v], grey_in_counts_.data() + in_offsets_[v + 1]};
    }
    size_t grey_degree(NodeId v) const { return grey_out(v).size() + grey_in(v).size(); }
    size_t out_degree(NodeId v) const { return side(v) == Side::L ? 1 : grey_out(v).size(); }
    size_t in_degree(NodeId v) const { return side(v) == Side::R ? 1 : grey_in(v).size(); }
    bool has_grey(NodeId from, NodeId to) const;

    /// Directed successors in ascending id order: the partner for L nodes,
    /// grey targets for R nodes.
    std::span<const NodeId> successors(NodeId v) const {
        return side(v) == Side::L ? std::span<const NodeId>(&partners_[v], 1) : grey_out(v);
    }
    std::span<const NodeId> predecessors(NodeId v) const {
        return side(v) == Side::R ? std::span<const NodeId>(&partners_[v], 1) : grey_in(v);
    }

    std::optional<NodeId> find(std::string_view name) const;
    /// Throws a reference-kind Error for unknown names.
    NodeId at(std::string_view name) const;

    NodeId root() const { return root_; }
    NodeId end() const { return end_; }
    bool has_root() const { return root_ != kNoNode; }
    void set_root(NodeId v);
    void set_end(NodeId v);

    std::vector<std::pair<NodeId, NodeId>> grey_edges() const;
    BiedgedBuilder to_builder() const;

private:
    friend class BiedgedBuilder;

    std::vector<std::string> names_;
    std::vector<std::string> labels_;
    std::vector<Side> sides_;
    std::vector<NodeId> partners_;
    std::vector<std::uint32_t> out_offsets_, in_offsets_;
    std::vector<NodeId> grey_targets_, grey_sources_;
    std::vector<std::uint32_t> grey_counts_, grey_in_counts_;
    std::unordered_map<std::string, NodeId> index_;
    NodeId root_ = kNoNode;
    NodeId end_ = kNoNode;
};

/// One black edge per segment, one grey edge per link. (+,+) becomes
/// R(from)->L(to), (-,-) the equivalent R(to)->L(from); same-side links are
/// a structure error.
BiedgedGraph to_biedged(const BidirectedGraph& g);

/// Undirected connectivity over black and grey edges, ordered by the
/// smallest node contained.
std::vector<BiedgedGraph> connected_components(const BiedgedGraph& b);

BiedgedGraph induced_subgraph(const BiedgedGraph& b, std::span<const NodeId> nodes);

struct BfsTree {
    NodeId root = kNoNode;
    std::vector<NodeId> parent;        // kNoNode for the root
    std::vector<std::uint32_t> depth;  // edge count from the root

    size_t size() const { return parent.size(); }
};

/// BFS from b.root() under the traversal rules. Among equally deep
/// predecessors the smallest id becomes the parent. Throws a rooting-kind
/// Error when a node is unreachable.
BfsTree bfs_tree(const BiedgedGraph& b);

/// Deepest out-degree-0 node, smallest id on ties. Throws a rooting-kind
/// Error when the graph has no sink.
NodeId choose_end(const BiedgedGraph& b, const BfsTree& t);

std::vector<NodeId> sinks(const BiedgedGraph& b);

}  // namespace ultrabubble

#endif  // ULTRABUBBLE_BIEDGED_HPP
