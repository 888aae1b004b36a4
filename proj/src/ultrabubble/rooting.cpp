#include "ultrabubble/rooting.hpp"

#include "ultrabubble/error.hpp"
#include "ultrabubble/ultrabubbles.hpp"

#include <algorithm>
#include <optional>

namespace ultrabubble {

Condensation condense(const BiedgedGraph& b) {
    const size_t n = b.node_count();
    constexpr std::uint32_t unset = UINT32_MAX;
    std::vector<std::uint32_t> index(n, unset), low(n, 0), comp(n, unset);
    std::vector<char> on_stack(n, 0);
    std::vector<NodeId> tarjan_stack;
    struct Frame {
        NodeId node;
        std::uint32_t next;
    };
    std::vector<Frame> call;
    std::uint32_t counter = 0, comp_count = 0;

    for (NodeId s = 0; s < n; ++s) {
        if (index[s] != unset) continue;
        auto open = [&](NodeId v) {
            index[v] = low[v] = counter++;
            tarjan_stack.push_back(v);
            on_stack[v] = 1;
            call.push_back({v, 0});
        };
        open(s);
        while (!call.empty()) {
            Frame& f = call.back();
            auto succ = b.successors(f.node);
            if (f.next < succ.size()) {
                NodeId w = succ[f.next++];
                if (index[w] == unset) {
                    open(w);
                } else if (on_stack[w]) {
                    low[f.node] = std::min(low[f.node], index[w]);
                }
                continue;
            }
            const NodeId v = f.node;
            call.pop_back();
            if (!call.empty()) low[call.back().node] = std::min(low[call.back().node], low[v]);
            if (low[v] == index[v]) {
                NodeId w;
                do {
                    w = tarjan_stack.back();
                    tarjan_stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = comp_count;
                } while (w != v);
                ++comp_count;
            }
        }
    }

    // renumber components by smallest member
    std::vector<std::uint32_t> renumber(comp_count, unset);
    std::uint32_t next = 0;
    for (NodeId v = 0; v < n; ++v) {
        if (renumber[comp[v]] == unset) renumber[comp[v]] = next++;
    }
    Condensation c;
    c.supernodes.resize(comp_count);
    c.mapping.resize(n);
    for (NodeId v = 0; v < n; ++v) {
        c.mapping[v] = renumber[comp[v]];
        c.supernodes[c.mapping[v]].push_back(v);
    }
    for (NodeId v = 0; v < n; ++v) {
        for (NodeId w : b.successors(v)) {
            if (c.mapping[v] != c.mapping[w]) c.dag_edges.emplace_back(c.mapping[v], c.mapping[w]);
        }
    }
    std::sort(c.dag_edges.begin(), c.dag_edges.end());
    c.dag_edges.erase(std::unique(c.dag_edges.begin(), c.dag_edges.end()), c.dag_edges.end());
    return c;
}

std::vector<std::uint32_t> candidate_roots(const Condensation& c) {
    std::vector<char> has_in(c.size(), 0);
    for (const auto& e : c.dag_edges) has_in[e.second] = 1;
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < c.size(); ++i) {
        if (!has_in[i]) out.push_back(i);
    }
    return out;
}

std::vector<std::uint32_t> candidate_sinks(const Condensation& c) {
    std::vector<char> has_out(c.size(), 0);
    for (const auto& e : c.dag_edges) has_out[e.first] = 1;
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < c.size(); ++i) {
        if (!has_out[i]) out.push_back(i);
    }
    return out;
}

NodePair outermost_rl_snarl_in_scc(const BiedgedGraph& b, std::span<const NodeId> scc,
                                   const std::vector<NodePair>& snarls, bool reverse) {
    if (snarls.empty()) throw Error(ErrorKind::argument, "no snarls given for the SCC");
    std::vector<char> inside(b.node_count(), 0);
    for (NodeId v : scc) inside[v] = 1;
    // entry is the frontier the DFS would meet first in the walk direction
    auto entry = [&](const NodePair& p) { return reverse ? p.second : p.first; };
    auto exit = [&](const NodePair& p) { return reverse ? p.first : p.second; };

    constexpr std::uint32_t unset = UINT32_MAX;
    std::vector<std::uint32_t> finish(b.node_count(), unset);
    std::vector<char> seen(b.node_count(), 0);
    std::uint32_t clock = 0;
    struct Frame {
        NodeId node;
        std::uint32_t next;
    };
    auto run = [&](NodeId start) {
        std::vector<Frame> stack{{start, 0}};
        seen[start] = 1;
        while (!stack.empty()) {
            Frame& f = stack.back();
            auto adj = reverse ? b.predecessors(f.node) : b.successors(f.node);
            if (f.next < adj.size()) {
                NodeId w = adj[f.next++];
                if (inside[w] && !seen[w]) {
                    seen[w] = 1;
                    stack.push_back({w, 0});
                }
                continue;
            }
            finish[f.node] = clock++;
            stack.pop_back();
        }
    };
    run(entry(snarls.front()));
    for (NodeId v : scc) {
        if (!seen[v]) run(v);
    }

    std::optional<NodePair> best;
    for (const auto& p : snarls) {
        if (finish[entry(p)] < finish[exit(p)]) {
            if (!best || finish[entry(p)] > finish[entry(*best)]) best = p;
        }
    }
    return best ? *best : snarls.front();
}

namespace {

std::string fresh_segment(const BiedgedGraph& b, const BiedgedBuilder& builder, const std::string& base) {
    std::string id = base + "'";
    while (b.find(node_name(id, Side::L)) || b.find(node_name(id, Side::R)) ||
           builder.has_node(node_name(id, Side::L)) || builder.has_node(node_name(id, Side::R))) {
        id += "'";
    }
    return id;
}

std::string segment_of(const BiedgedGraph& b, NodeId v) {
    auto ns = parse_node_side(b.name(v));
    return ns ? ns->segment : b.name(v);
}

void check_reserved(const BiedgedGraph& b, const char* segment) {
    if (b.find(node_name(segment, Side::L)) || b.find(node_name(segment, Side::R))) {
        throw Error(ErrorKind::structure,
                    std::string("segment id '") + segment + "' is reserved for the artificial root/sink");
    }
}

/// Brute-force snarls, computed on first use; nullopt when the graph is too
/// large for the enumerator.
class LazySnarls {
public:
    LazySnarls(const BiedgedGraph& b, const RootingOptions& o) : b_(b), options_(o) {}

    const std::vector<NodePair>* get(std::vector<std::string>& log) {
        if (!tried_) {
            tried_ = true;
            if (b_.node_count() <= options_.snarl_node_limit) {
                pairs_ = enumerate_snarls_naive(b_, {options_.snarl_node_limit, options_.rule});
            } else {
                log.push_back("warning: graph too large for brute-force snarls; SCC candidates get the smallest L "
                              "node and snarl preservation inside them is unverified");
            }
        }
        return pairs_ ? &*pairs_ : nullptr;
    }

    /// First ultrabubble whose interior holds both ends of the black edge at
    /// v, if any. Only valid once get() returned snarls.
    std::optional<NodePair> cut_by_split(NodeId v) {
        if (!bubbles_) {
            std::vector<SnarlPair> pairs;
            for (const auto& p : *pairs_) {
                SnarlPair sp;
                sp.sn1 = p.first;
                sp.sn2 = p.second;
                pairs.push_back(sp);
            }
            bubbles_.emplace();
            for (const auto& verdict : classify_naive(pairs, b_)) {
                if (!verdict.is_ultrabubble) continue;
                const NodePair p{verdict.snarl.sn1, verdict.snarl.sn2};
                bubbles_->emplace_back(p, separated_component(b_, p.first, p.second));
            }
        }
        const NodeId w = b_.partner(v);
        for (const auto& [p, members] : *bubbles_) {
            if (std::binary_search(members.begin(), members.end(), v) &&
                std::binary_search(members.begin(), members.end(), w)) {
                return p;
            }
        }
        return std::nullopt;
    }

private:
    const BiedgedGraph& b_;
    RootingOptions options_;
    bool tried_ = false;
    std::optional<std::vector<NodePair>> pairs_;
    std::optional<std::vector<std::pair<NodePair, std::vector<NodeId>>>> bubbles_;
};

/// R-L snarls with both frontiers in supernode `c`, as (R, L).
std::vector<NodePair> rl_snarls_in(const BiedgedGraph& b, const Condensation& cond, std::uint32_t c,
                                   const std::vector<NodePair>& all) {
    std::vector<NodePair> out;
    for (const auto& p : all) {
        if (cond.mapping[p.first] != c || cond.mapping[p.second] != c) continue;
        if (b.side(p.first) == b.side(p.second)) continue;
        out.push_back(b.side(p.first) == Side::R ? p : NodePair{p.second, p.first});
    }
    return out;
}

/// The paper-style pick, unless splitting its frontier black edge would cut
/// through an existing ultrabubble (crossing snarls inside a cycle can do
/// that); then the first local snarl whose split is harmless.
NodePair choose_split(const BiedgedGraph& b, std::span<const NodeId> members, const std::vector<NodePair>& local,
                      bool reverse, LazySnarls& snarls, std::vector<std::string>& log, const char* tag) {
    const NodePair first = outermost_rl_snarl_in_scc(b, members, local, reverse);
    auto frontier = [&](const NodePair& p) { return reverse ? p.second : p.first; };
    const auto hit = snarls.cut_by_split(frontier(first));
    if (!hit) return first;
    for (const auto& p : local) {
        if (!snarls.cut_by_split(frontier(p))) {
            log.push_back(std::string(tag) + ": splitting at (" + b.name(first.first) + ", " + b.name(first.second) +
                          ") would cut ultrabubble (" + b.name(hit->first) + ", " + b.name(hit->second) +
                          "); using (" + b.name(p.first) + ", " + b.name(p.second) + ") instead");
            return p;
        }
    }
    log.push_back(std::string("warning: every split point in the SCC cuts an ultrabubble; (") + b.name(hit->first) +
                  ", " + b.name(hit->second) + ") will not survive " + tag + " synthesis");
    return first;
}

}  // namespace

Synthesis synthesize_root(const BiedgedGraph& b, const RootingOptions& options) {
    if (b.node_count() == 0) throw Error(ErrorKind::structure, "cannot root an empty graph");
    const Condensation cond = condense(b);
    const auto cands = candidate_roots(cond);
    Synthesis result;

    if (!options.force && cands.size() == 1 && cond.supernodes[cands[0]].size() == 1) {
        const NodeId v = cond.supernodes[cands[0]][0];
        result.graph = b;
        result.graph.set_root(v);
        result.log.push_back("root: existing source " + b.name(v));
        return result;
    }
    check_reserved(b, kRootSegment);

    BiedgedBuilder builder = b.to_builder();
    builder.set_root("");
    builder.set_end("");
    builder.add_segment(kRootSegment);
    const std::string root_r = node_name(kRootSegment, Side::R);
    LazySnarls snarls(b, options);

    for (std::uint32_t c : cands) {
        const auto& members = cond.supernodes[c];
        if (members.size() == 1) {
            const NodeId v = members[0];
            if (b.side(v) != Side::L) {
                throw Error(ErrorKind::structure, "source component " + b.name(v) + " is an R node");
            }
            builder.add_grey(root_r, b.name(v));
            result.log.push_back("root: grey edge " + root_r + " -> " + b.name(v));
            continue;
        }
        auto first_l = std::find_if(members.begin(), members.end(), [&](NodeId v) { return b.side(v) == Side::L; });
        if (first_l == members.end()) throw Error(ErrorKind::structure, "source SCC has no L node");

        const auto* all = snarls.get(result.log);
        const auto local = all ? rl_snarls_in(b, cond, c, *all) : std::vector<NodePair>{};
        if (local.empty()) {
            builder.add_grey(root_r, b.name(*first_l));
            result.log.push_back("root: grey edge " + root_r + " -> " + b.name(*first_l) + " (SCC of " +
                                 std::to_string(members.size()) + " nodes)");
            continue;
        }
        const NodePair pick = choose_split(b, members, local, false, snarls, result.log, "root");
        const NodeId r = pick.first;
        const NodeId n = b.partner(r);
        const std::string seg = fresh_segment(b, builder, segment_of(b, r));
        const std::string r_new = node_name(seg, Side::R), n_new = node_name(seg, Side::L);
        builder.remove_black(b.name(n));
        builder.add_black(b.name(n), r_new, b.label(n));
        builder.add_black(n_new, b.name(r), b.label(r));
        builder.add_grey(root_r, n_new);
        result.log.push_back("root: split black edge (" + b.name(n) + ", " + b.name(r) + ") of snarl (" +
                             b.name(pick.first) + ", " + b.name(pick.second) + "); grey edge " + root_r + " -> " +
                             n_new);
    }
    builder.set_root(node_name(kRootSegment, Side::L));
    result.graph = builder.build();
    result.changed = true;
    return result;
}

Synthesis synthesize_sink(const BiedgedGraph& b, const RootingOptions& options) {
    if (b.node_count() == 0) throw Error(ErrorKind::structure, "cannot add a sink to an empty graph");
    const Condensation cond = condense(b);
    const auto cands = candidate_sinks(cond);
    Synthesis result;

    if (!options.force && cands.size() == 1 && cond.supernodes[cands[0]].size() == 1) {
        const NodeId v = cond.supernodes[cands[0]][0];
        result.graph = b;
        result.graph.set_end(v);
        result.log.push_back("end: existing sink " + b.name(v));
        return result;
    }
    check_reserved(b, kSinkSegment);

    BiedgedBuilder builder = b.to_builder();
    builder.set_end("");
    builder.add_segment(kSinkSegment);
    const std::string sink_l = node_name(kSinkSegment, Side::L);
    LazySnarls snarls(b, options);
    bool added_root = false;

    for (std::uint32_t c : cands) {
        const auto& members = cond.supernodes[c];
        if (members.size() == 1) {
            const NodeId v = members[0];
            if (b.side(v) != Side::R) {
                throw Error(ErrorKind::structure, "sink component " + b.name(v) + " is an L node");
            }
            builder.add_grey(b.name(v), sink_l);
            result.log.push_back("end: grey edge " + b.name(v) + " -> " + sink_l);
            continue;
        }
        auto first_r = std::find_if(members.begin(), members.end(), [&](NodeId v) { return b.side(v) == Side::R; });
        if (first_r == members.end()) throw Error(ErrorKind::structure, "sink SCC has no R node");

        const auto* all = snarls.get(result.log);
        const auto local = all ? rl_snarls_in(b, cond, c, *all) : std::vector<NodePair>{};
        if (local.empty()) {
            builder.add_grey(b.name(*first_r), sink_l);
            result.log.push_back("end: grey edge " + b.name(*first_r) + " -> " + sink_l + " (SCC of " +
                                 std::to_string(members.size()) + " nodes)");
            continue;
        }
        const NodePair pick = choose_split(b, members, local, true, snarls, result.log, "end");
        const NodeId l = pick.second;
        const NodeId m = b.partner(l);
        const std::string seg = fresh_segment(b, builder, segment_of(b, l));
        const std::string m_new = node_name(seg, Side::R), l_new = node_name(seg, Side::L);
        builder.remove_black(b.name(l));
        builder.add_black(b.name(l), m_new, b.label(l));
        builder.add_black(l_new, b.name(m), b.label(m));
        builder.add_grey(m_new, sink_l);
        std::string line = "end: split black edge (" + b.name(l) + ", " + b.name(m) + ") of snarl (" +
                           b.name(pick.first) + ", " + b.name(pick.second) + "); grey edge " + m_new + " -> " + sink_l;
        // the split leaves l_new without predecessors. Feed it from the
        // artificial root so the root stays unique; an original root gets
        // 00 put in front of it (its R node must keep its own grey edges).
        if (b.has_root()) {
            const std::string root_r = node_name(kRootSegment, Side::R);
            if (b.name(b.root()) != node_name(kRootSegment, Side::L) && !added_root) {
                check_reserved(b, kRootSegment);
                builder.add_segment(kRootSegment);
                builder.add_grey(root_r, b.name(b.root()));
                builder.set_root(node_name(kRootSegment, Side::L));
                added_root = true;
                line += "; new root 00_L in front of " + b.name(b.root());
            }
            builder.add_grey(root_r, l_new);
            line += "; grey edge " + root_r + " -> " + l_new;
        }
        result.log.push_back(line);
    }
    builder.set_end(node_name(kSinkSegment, Side::R));
    result.graph = builder.build();
    result.changed = true;
    return result;
}

}  // namespace ultrabubble
