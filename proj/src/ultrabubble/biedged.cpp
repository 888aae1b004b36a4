#include "ultrabubble/biedged.hpp"

#include "ultrabubble/error.hpp"
#include "ultrabubble/natural_order.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace ultrabubble {

std::string node_name(std::string_view segment, Side side) {
    std::string n(segment);
    n += side == Side::L ? "_L" : "_R";
    return n;
}

std::string NodeSide::name() const { return node_name(segment, side); }

std::optional<NodeSide> parse_node_side(std::string_view name) {
    if (name.size() < 3 || name[name.size() - 2] != '_') return std::nullopt;
    const char s = name.back();
    if (s != 'L' && s != 'R') return std::nullopt;
    return NodeSide{std::string(name.substr(0, name.size() - 2)), s == 'L' ? Side::L : Side::R};
}

void BiedgedBuilder::add_segment(const std::string& id) {
    add_black(node_name(id, Side::L), node_name(id, Side::R), id);
}

void BiedgedBuilder::add_black(const std::string& left_name, const std::string& right_name,
                               const std::string& label) {
    if (sides_.count(left_name) || sides_.count(right_name) || left_name == right_name) {
        throw Error(ErrorKind::structure, "duplicate node name in black edge (" + left_name + ", " +
                                              right_name + ")");
    }
    sides_.emplace(left_name, Side::L);
    sides_.emplace(right_name, Side::R);
    blacks_.push_back({left_name, right_name, label});
}

void BiedgedBuilder::add_grey(const std::string& from_r, const std::string& to_l, std::uint32_t count) {
    greys_.push_back({{from_r, to_l}, count});
}

void BiedgedBuilder::remove_black(const std::string& left_name) {
    auto it = std::find_if(blacks_.begin(), blacks_.end(), [&](const Black& b) { return b.left == left_name; });
    if (it == blacks_.end()) throw Error(ErrorKind::reference, "no black edge at '" + left_name + "'");
    sides_.erase(it->left);
    sides_.erase(it->right);
    blacks_.erase(it);
}

void BiedgedBuilder::remove_grey(const std::string& from_r, const std::string& to_l) {
    std::erase_if(greys_, [&](const auto& g) { return g.first.first == from_r && g.first.second == to_l; });
}

BiedgedGraph BiedgedBuilder::build() const {
    BiedgedGraph g;
    const size_t n = blacks_.size() * 2;
    std::vector<std::string> names;
    names.reserve(n);
    for (const auto& b : blacks_) {
        names.push_back(b.left);
        names.push_back(b.right);
    }
    std::sort(names.begin(), names.end(), NaturalLess{});
    g.names_ = names;
    g.index_.reserve(n);
    for (NodeId i = 0; i < n; ++i) g.index_.emplace(g.names_[i], i);
    g.sides_.resize(n);
    g.partners_.resize(n);
    g.labels_.resize(n);
    for (const auto& b : blacks_) {
        NodeId l = g.index_.at(b.left), r = g.index_.at(b.right);
        g.sides_[l] = Side::L;
        g.sides_[r] = Side::R;
        g.partners_[l] = r;
        g.partners_[r] = l;
        g.labels_[l] = b.label;
        g.labels_[r] = b.label;
    }

    struct Edge {
        NodeId from, to;
        std::uint32_t count;
    };
    std::vector<Edge> edges;
    edges.reserve(greys_.size());
    for (const auto& [ends, count] : greys_) {
        auto f = g.index_.find(ends.first);
        auto t = g.index_.find(ends.second);
        if (f == g.index_.end() || t == g.index_.end()) {
            throw Error(ErrorKind::reference,
                        "grey edge (" + ends.first + ", " + ends.second + ") references an unknown node");
        }
        if (g.sides_[f->second] != Side::R || g.sides_[t->second] != Side::L) {
            throw Error(ErrorKind::structure,
                        "grey edge (" + ends.first + ", " + ends.second + ") does not run from an R node to an L node");
        }
        edges.push_back({f->second, t->second, count});
    }
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return std::tie(a.from, a.to) < std::tie(b.from, b.to); });
    std::vector<Edge> merged;
    for (const auto& e : edges) {
        if (!merged.empty() && merged.back().from == e.from && merged.back().to == e.to) {
            merged.back().count += e.count;
        } else {
            merged.push_back(e);
        }
    }

    g.out_offsets_.assign(n + 1, 0);
    g.in_offsets_.assign(n + 1, 0);
    for (const auto& e : merged) {
        ++g.out_offsets_[e.from + 1];
        ++g.in_offsets_[e.to + 1];
    }
    std::partial_sum(g.out_offsets_.begin(), g.out_offsets_.end(), g.out_offsets_.begin());
    std::partial_sum(g.in_offsets_.begin(), g.in_offsets_.end(), g.in_offsets_.begin());
    g.grey_targets_.resize(merged.size());
    g.grey_counts_.resize(merged.size());
    g.grey_sources_.resize(merged.size());
    g.grey_in_counts_.resize(merged.size());
    std::vector<std::uint32_t> fill_in(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
    // merged is sorted by (from, to): out lists come out ascending, and the
    // in lists are filled in ascending source order as well.
    for (size_t i = 0; i < merged.size(); ++i) {
        g.grey_targets_[i] = merged[i].to;
        g.grey_counts_[i] = merged[i].count;
        auto slot = fill_in[merged[i].to]++;
        g.grey_sources_[slot] = merged[i].from;
        g.grey_in_counts_[slot] = merged[i].count;
    }

    if (!root_.empty()) g.set_root(g.at(root_));
    if (!end_.empty()) g.set_end(g.at(end_));
    return g;
}

bool BiedgedGraph::has_grey(NodeId from, NodeId to) const {
    auto out = grey_out(from);
    return std::binary_search(out.begin(), out.end(), to);
}

std::optional<NodeId> BiedgedGraph::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

NodeId BiedgedGraph::at(std::string_view name) const {
    auto v = find(name);
    if (!v) throw Error(ErrorKind::reference, "unknown node '" + std::string(name) + "'");
    return *v;
}

void BiedgedGraph::set_root(NodeId v) {
    if (v != kNoNode && (v >= node_count() || side(v) != Side::L || in_degree(v) != 0)) {
        throw Error(ErrorKind::rooting, "root must be an L node with in-degree 0");
    }
    root_ = v;
}

void BiedgedGraph::set_end(NodeId v) {
    if (v != kNoNode && (v >= node_count() || out_degree(v) != 0)) {
        throw Error(ErrorKind::rooting, "end must be a node with out-degree 0");
    }
    end_ = v;
}

std::vector<std::pair<NodeId, NodeId>> BiedgedGraph::grey_edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    out.reserve(grey_edge_count());
    for (NodeId v = 0; v < node_count(); ++v) {
        for (NodeId w : grey_out(v)) out.emplace_back(v, w);
    }
    return out;
}

BiedgedBuilder BiedgedGraph::to_builder() const {
    BiedgedBuilder b;
    for (NodeId v = 0; v < node_count(); ++v) {
        if (side(v) == Side::L) b.add_black(name(v), name(partner(v)), label(v));
    }
    for (NodeId v = 0; v < node_count(); ++v) {
        auto out = grey_out(v);
        auto counts = grey_out_counts(v);
        for (size_t i = 0; i < out.size(); ++i) b.add_grey(name(v), name(out[i]), counts[i]);
    }
    if (has_root()) b.set_root(name(root_));
    if (end_ != kNoNode) b.set_end(name(end_));
    return b;
}

BiedgedGraph to_biedged(const BidirectedGraph& g) {
    BiedgedBuilder b;
    for (const auto& s : g.segments()) b.add_segment(s.id);
    for (size_t i = 0; i < g.links().size(); ++i) {
        const Link& l = g.links()[i];
        if (l.from_orient == Orient::forward && l.to_orient == Orient::forward) {
            b.add_grey(node_name(l.from, Side::R), node_name(l.to, Side::L));
        } else if (l.from_orient == Orient::reverse && l.to_orient == Orient::reverse) {
            b.add_grey(node_name(l.to, Side::R), node_name(l.from, Side::L));
        } else {
            throw Error(ErrorKind::structure, "link " + std::to_string(i + 1) + " (" + l.from +
                                                  static_cast<char>(l.from_orient) + " -> " + l.to +
                                                  static_cast<char>(l.to_orient) +
                                                  ") joins two same-side nodes; forwardize or strip first");
        }
    }
    return b.build();
}

BiedgedGraph induced_subgraph(const BiedgedGraph& b, std::span<const NodeId> nodes) {
    std::vector<char> keep(b.node_count(), 0);
    for (NodeId v : nodes) keep[v] = 1;
    BiedgedBuilder out;
    for (NodeId v : nodes) {
        if (b.side(v) != Side::L) continue;
        if (!keep[b.partner(v)]) {
            throw Error(ErrorKind::structure, "induced subgraph splits black edge at " + b.name(v));
        }
        out.add_black(b.name(v), b.name(b.partner(v)), b.label(v));
    }
    for (NodeId v : nodes) {
        auto targets = b.grey_out(v);
        auto counts = b.grey_out_counts(v);
        for (size_t i = 0; i < targets.size(); ++i) {
            if (keep[targets[i]]) out.add_grey(b.name(v), b.name(targets[i]), counts[i]);
        }
    }
    if (b.has_root() && keep[b.root()]) out.set_root(b.name(b.root()));
    if (b.end() != kNoNode && keep[b.end()]) out.set_end(b.name(b.end()));
    return out.build();
}

std::vector<BiedgedGraph> connected_components(const BiedgedGraph& b) {
    const size_t n = b.node_count();
    std::vector<std::uint32_t> comp(n, UINT32_MAX);
    std::vector<std::vector<NodeId>> members;
    std::vector<NodeId> stack;
    // scanning ids in ascending order means component k's smallest node is
    // smaller than component k+1's
    for (NodeId s = 0; s < n; ++s) {
        if (comp[s] != UINT32_MAX) continue;
        const auto c = static_cast<std::uint32_t>(members.size());
        members.emplace_back();
        comp[s] = c;
        stack.push_back(s);
        while (!stack.empty()) {
            NodeId v = stack.back();
            stack.pop_back();
            members[c].push_back(v);
            auto visit = [&](NodeId w) {
                if (comp[w] == UINT32_MAX) {
                    comp[w] = c;
                    stack.push_back(w);
                }
            };
            visit(b.partner(v));
            for (NodeId w : b.grey_out(v)) visit(w);
            for (NodeId w : b.grey_in(v)) visit(w);
        }
    }
    std::vector<BiedgedGraph> out;
    out.reserve(members.size());
    for (auto& m : members) {
        std::sort(m.begin(), m.end());
        out.push_back(induced_subgraph(b, m));
    }
    return out;
}

BfsTree bfs_tree(const BiedgedGraph& b) {
    if (!b.has_root()) throw Error(ErrorKind::rooting, "graph has no root");
    const size_t n = b.node_count();
    BfsTree t;
    t.root = b.root();
    t.parent.assign(n, kNoNode);
    t.depth.assign(n, UINT32_MAX);
    std::deque<NodeId> queue;
    t.depth[t.root] = 0;
    queue.push_back(t.root);
    while (!queue.empty()) {
        NodeId v = queue.front();
        queue.pop_front();
        for (NodeId w : b.successors(v)) {
            if (t.depth[w] == UINT32_MAX) {
                t.depth[w] = t.depth[v] + 1;
                t.parent[w] = v;
                queue.push_back(w);
            } else if (t.depth[w] == t.depth[v] + 1 && v < t.parent[w]) {
                t.parent[w] = v;
            }
        }
    }
    std::vector<NodeId> unreachable;
    for (NodeId v = 0; v < n; ++v) {
        if (t.depth[v] == UINT32_MAX) unreachable.push_back(v);
    }
    if (!unreachable.empty()) {
        std::string msg = std::to_string(unreachable.size()) + " node(s) unreachable from root " +
                          b.name(t.root) + ":";
        for (size_t i = 0; i < unreachable.size() && i < 10; ++i) msg += " " + b.name(unreachable[i]);
        if (unreachable.size() > 10) msg += " ...";
        throw Error(ErrorKind::rooting, msg);
    }
    return t;
}

std::vector<NodeId> sinks(const BiedgedGraph& b) {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < b.node_count(); ++v) {
        if (b.out_degree(v) == 0) out.push_back(v);
    }
    return out;
}

NodeId choose_end(const BiedgedGraph& b, const BfsTree& t) {
    NodeId best = kNoNode;
    for (NodeId v : sinks(b)) {
        if (best == kNoNode || t.depth[v] > t.depth[best]) best = v;
    }
    if (best == kNoNode) throw Error(ErrorKind::rooting, "graph has no sink; sink synthesis required");
    return best;
}

}  // namespace ultrabubble
