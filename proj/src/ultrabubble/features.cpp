#include "ultrabubble/features.hpp"

#include "ultrabubble/error.hpp"

#include <algorithm>

namespace ultrabubble {

std::vector<NodeId> find_tips(const BiedgedGraph& b) {
    std::vector<NodeId> tips;
    for (NodeId v = 0; v < b.node_count(); ++v) {
        if (b.grey_degree(v) == 0) tips.push_back(v);
    }
    return tips;
}

CycleScan find_cycle_closers(const BiedgedGraph& b) {
    if (!b.has_root()) throw Error(ErrorKind::rooting, "cycle scan needs a root");
    enum : std::uint8_t { white, gray, black };
    const size_t n = b.node_count();
    std::vector<std::uint8_t> color(n, white);
    std::vector<CycleCloser> first_closer(n);
    CycleScan scan;

    struct Frame {
        NodeId node;
        std::uint32_t next;  // index into successors(node)
    };
    std::vector<Frame> stack;
    stack.push_back({b.root(), 0});
    color[b.root()] = gray;
    while (!stack.empty()) {
        Frame& top = stack.back();
        auto succ = b.successors(top.node);
        if (top.next == succ.size()) {
            color[top.node] = black;
            stack.pop_back();
            continue;
        }
        NodeId w = succ[top.next++];
        if (color[w] == white) {
            color[w] = gray;
            stack.push_back({w, 0});
        } else if (color[w] == gray) {
            ++scan.back_edges;
            if (first_closer[w].node == kNoNode) first_closer[w] = {w, {top.node, w}};
        }
    }
    for (NodeId v = 0; v < n; ++v) {
        if (color[v] == white) {
            throw Error(ErrorKind::rooting, "node " + b.name(v) + " is unreachable from root " + b.name(b.root()));
        }
        if (first_closer[v].node != kNoNode) scan.closers.push_back(first_closer[v]);
    }
    return scan;
}

FtipSet build_ftip(std::vector<NodeId> tips, CycleScan closers) {
    FtipSet f;
    f.tips = std::move(tips);
    std::sort(f.tips.begin(), f.tips.end());
    f.cycle_closers = std::move(closers.closers);
    f.back_edges = closers.back_edges;
    f.ftip = f.tips;
    std::vector<NodeId> extra;
    for (const auto& c : f.cycle_closers) {
        if (!std::binary_search(f.tips.begin(), f.tips.end(), c.node)) extra.push_back(c.node);
    }
    std::sort(extra.begin(), extra.end());
    extra.erase(std::unique(extra.begin(), extra.end()), extra.end());
    f.ftip.insert(f.ftip.end(), extra.begin(), extra.end());
    return f;
}

FtipSet compute_features(const BiedgedGraph& b) {
    return build_ftip(find_tips(b), find_cycle_closers(b));
}

std::string features_tsv(const BiedgedGraph& b, const FtipSet& f) {
    std::string out;
    for (NodeId t : f.tips) out += "tip\t" + b.name(t) + '\n';
    for (const auto& c : f.cycle_closers) {
        out += "cycle_closer\t" + b.name(c.node) + '\t' + b.name(c.closing_edge.first) + "->" +
               b.name(c.closing_edge.second) + '\n';
    }
    return out;
}

}  // namespace ultrabubble
