#ifndef ULTRABUBBLE_LCA_INDEX_HPP
#define ULTRABUBBLE_LCA_INDEX_HPP

#include "ultrabubble/biedged.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace ultrabubble {

/// Constant-time lowest common ancestor over a rooted tree, by range-minimum
/// queries on the Euler tour depth sequence (sparse table, O(n log n) words).
///
/// Children are toured in ascending id order so two builds over the same
/// tree produce identical tours. The index is immutable after construction
/// and safe to query from several threads.
class LcaIndex {
public:
    LcaIndex() = default;

    /// Throws a structure-kind Error if the parent array is not a single
    /// tree rooted at t.root.
    explicit LcaIndex(const BfsTree& t);

    NodeId lca(NodeId a, NodeId b) const;

    bool contains(NodeId v) const { return v < first_.size() && first_[v] != kAbsent; }
    size_t tree_size() const { return tree_size_; }

    const std::vector<NodeId>& euler() const { return euler_; }
    const std::vector<std::uint32_t>& euler_depths() const { return depths_; }
    std::uint32_t first_occurrence(NodeId v) const { return first_[v]; }

    /// Versioned binary cache; load() throws an io-kind Error on a bad
    /// header or truncated stream.
    void save(std::ostream& out) const;
    static LcaIndex load(std::istream& in);

    bool operator==(const LcaIndex&) const = default;

private:
    static constexpr std::uint32_t kAbsent = UINT32_MAX;

    std::uint32_t min_position(std::uint32_t lo, std::uint32_t hi) const;
    void build_table();

    size_t tree_size_ = 0;
    std::vector<NodeId> euler_;
    std::vector<std::uint32_t> depths_;
    std::vector<std::uint32_t> first_;
    // table_[k * len + i] = position of the minimum depth in [i, i + 2^k)
    std::vector<std::uint32_t> table_;
    std::uint32_t levels_ = 0;
};

/// Walks parent pointers after equalizing depths. Test oracle.
NodeId lca_naive(const BfsTree& t, NodeId a, NodeId b);

}  // namespace ultrabubble

#endif  // ULTRABUBBLE_LCA_INDEX_HPP
