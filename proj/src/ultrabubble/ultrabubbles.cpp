#include "ultrabubble/ultrabubbles.hpp"

#include "ultrabubble/error.hpp"
#include "ultrabubble/parallel.hpp"

#include <algorithm>

namespace ultrabubble {

const char* to_string(Reason r) {
    switch (r) {
    case Reason::none: return "none";
    case Reason::orientation_LL_RR: return "orientation_LL_RR";
    case Reason::orientation_LR: return "orientation_LR";
    case Reason::ftip_witness: return "ftip_witness";
    case Reason::cycle_found: return "cycle_found";
    case Reason::tip_found: return "tip_found";
    }
    return "?";
}

bool is_trivial(const BiedgedGraph& b, NodeId sn1, NodeId sn2) {
    auto out = b.grey_out(sn1);
    auto in = b.grey_in(sn2);
    return b.side(sn1) == Side::R && b.side(sn2) == Side::L && out.size() == 1 && out[0] == sn2 && in.size() == 1 &&
           in[0] == sn1;
}

std::vector<Verdict> classify_lca(const std::vector<SnarlPair>& snarls, const BiedgedGraph& b, const FtipSet& ftip,
                                  const LcaIndex& idx) {
    std::vector<Verdict> out(snarls.size());
    parallel_for(
        snarls.size(),
        [&](size_t begin, size_t end) {
            for (size_t i = begin; i < end; ++i) {
                const SnarlPair& s = snarls[i];
                Verdict& v = out[i];
                v.snarl = s;
                if (!idx.contains(s.sn1) || !idx.contains(s.sn2)) {
                    throw Error(ErrorKind::reference,
                                "snarl frontier " + b.name(idx.contains(s.sn1) ? s.sn2 : s.sn1) + " is not in the BFS tree");
                }
                if (s.orientation == Orientation::LL || s.orientation == Orientation::RR) {
                    v.reason = Reason::orientation_LL_RR;
                    continue;
                }
                if (s.orientation == Orientation::LR) {
                    v.reason = Reason::orientation_LR;
                    continue;
                }
                for (NodeId t : ftip.ftip) {
                    if (idx.lca(t, s.sn1) == s.sn1 && idx.lca(t, s.sn2) != s.sn2) {
                        v.reason = Reason::ftip_witness;
                        v.witness = t;
                        break;
                    }
                }
                if (v.reason == Reason::none) {
                    v.is_ultrabubble = true;
                    v.trivial = is_trivial(b, s.sn1, s.sn2);
                }
            }
        },
        256);
    return out;
}

namespace {

/// Visit marks keyed by an epoch so one allocation serves many snarls.
struct SubgraphScratch {
    std::vector<std::uint32_t> member, colored;
    std::vector<std::uint8_t> color;
    std::vector<NodeId> nodes, stack;
    std::uint32_t epoch = 0;

    explicit SubgraphScratch(size_t n) : member(n, 0), colored(n, 0), color(n, 0) {}

    Verdict check(const BiedgedGraph& b, NodeId sn1, NodeId sn2) {
        if (sn1 == sn2 || b.partner(sn1) == sn2) {
            throw Error(ErrorKind::structure, "snarl frontiers " + b.name(sn1) + ", " + b.name(sn2) +
                                                  " share a black edge");
        }
        ++epoch;
        const NodeId p1 = b.partner(sn1), p2 = b.partner(sn2);
        auto frontier_black = [&](NodeId v) { return v == sn1 || v == sn2 || v == p1 || v == p2; };
        auto in_x = [&](NodeId v) { return member[v] == epoch; };

        nodes.clear();
        stack.assign(1, sn1);
        member[sn1] = epoch;
        while (!stack.empty()) {
            const NodeId v = stack.back();
            stack.pop_back();
            nodes.push_back(v);
            auto visit = [&](NodeId w) {
                if (!in_x(w)) {
                    member[w] = epoch;
                    stack.push_back(w);
                }
            };
            if (!frontier_black(v)) visit(b.partner(v));
            for (NodeId w : b.grey_out(v)) visit(w);
            for (NodeId w : b.grey_in(v)) visit(w);
        }
        if (!in_x(sn2) || in_x(p1) || in_x(p2)) {
            throw Error(ErrorKind::structure, "malformed snarl (" + b.name(sn1) + ", " + b.name(sn2) +
                                                  "): frontiers are not separated from the rest of the graph");
        }
        std::sort(nodes.begin(), nodes.end());

        Verdict v;
        for (NodeId u : nodes) {
            if (u != sn1 && u != sn2 && b.grey_degree(u) == 0) {
                v.reason = Reason::tip_found;
                v.witness = u;
                return v;
            }
        }

        enum : std::uint8_t { white, gray, black };
        auto color_of = [&](NodeId u) { return colored[u] == epoch ? color[u] : std::uint8_t{white}; };
        auto set_color = [&](NodeId u, std::uint8_t c) {
            colored[u] = epoch;
            color[u] = c;
        };
        struct Frame {
            NodeId node;
            std::uint32_t next;
        };
        std::vector<Frame> call;
        for (NodeId s : nodes) {
            if (color_of(s) != white) continue;
            set_color(s, gray);
            call.push_back({s, 0});
            while (!call.empty()) {
                Frame& f = call.back();
                std::span<const NodeId> succ;
                if (b.side(f.node) == Side::L) {
                    if (!frontier_black(f.node)) succ = b.successors(f.node);
                } else {
                    succ = b.grey_out(f.node);
                }
                if (f.next < succ.size()) {
                    const NodeId w = succ[f.next++];
                    const auto c = color_of(w);
                    if (c == white) {
                        set_color(w, gray);
                        call.push_back({w, 0});
                    } else if (c == gray) {
                        v.reason = Reason::cycle_found;
                        v.witness = w;
                        return v;
                    }
                    continue;
                }
                set_color(f.node, black);
                call.pop_back();
            }
        }
        v.is_ultrabubble = true;
        v.trivial = is_trivial(b, sn1, sn2);
        return v;
    }
};

}  // namespace

Verdict check_subgraph(const BiedgedGraph& b, NodeId sn1, NodeId sn2) {
    SubgraphScratch scratch(b.node_count());
    Verdict v = scratch.check(b, sn1, sn2);
    v.snarl.sn1 = sn1;
    v.snarl.sn2 = sn2;
    return v;
}

std::vector<Verdict> classify_naive(const std::vector<SnarlPair>& snarls, const BiedgedGraph& b) {
    std::vector<Verdict> out(snarls.size());
    parallel_for(
        snarls.size(),
        [&](size_t begin, size_t end) {
            SubgraphScratch scratch(b.node_count());
            for (size_t i = begin; i < end; ++i) {
                out[i] = scratch.check(b, snarls[i].sn1, snarls[i].sn2);
                out[i].snarl = snarls[i];
            }
        },
        8);
    return out;
}

Crosscheck crosscheck(const std::vector<Verdict>& a, const std::vector<Verdict>& b) {
    if (a.size() != b.size()) {
        throw Error(ErrorKind::argument, "crosscheck of verdict lists with different lengths (" +
                                             std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
    }
    Crosscheck c;
    c.compared = a.size();
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].snarl.sn1 != b[i].snarl.sn1 || a[i].snarl.sn2 != b[i].snarl.sn2) {
            throw Error(ErrorKind::argument, "crosscheck: verdict lists cover different snarls at position " +
                                                 std::to_string(i));
        }
        if (a[i].is_ultrabubble != b[i].is_ultrabubble) c.disagreements.push_back({i, a[i], b[i]});
    }
    return c;
}

std::string verdicts_tsv(const BiedgedGraph& b, const std::vector<Verdict>& verdicts) {
    std::string out;
    for (const auto& v : verdicts) {
        out += b.name(v.snarl.sn1);
        out += '\t';
        out += b.name(v.snarl.sn2);
        out += '\t';
        out += to_string(v.snarl.orientation);
        out += v.is_ultrabubble ? "\tultrabubble\t" : "\trejected\t";
        out += to_string(v.reason);
        if (v.witness != kNoNode) out += '\t' + b.name(v.witness);
        if (v.trivial) out += "\ttrivial";
        out += '\n';
    }
    return out;
}

}  // namespace ultrabubble
