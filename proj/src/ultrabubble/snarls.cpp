#include "ultrabubble/snarls.hpp"

#include "ultrabubble/error.hpp"
#include "ultrabubble/parallel.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace ultrabubble {

const char* to_string(Orientation o) {
    switch (o) {
    case Orientation::RL: return "RL";
    case Orientation::LR: return "LR";
    case Orientation::LL: return "LL";
    case Orientation::RR: return "RR";
    }
    return "?";
}

const char* to_string(MinimalityRule r) {
    return r == MinimalityRule::no_black_bridge ? "literal" : "frontier";
}

MinimalityRule parse_minimality(std::string_view s) {
    if (s == "literal") return MinimalityRule::no_black_bridge;
    if (s == "frontier") return MinimalityRule::frontier_separating;
    throw Error(ErrorKind::argument, "minimality must be 'literal' or 'frontier'");
}

namespace {

/// Undirected multigraph view: black edges take ids [0, segments), grey
/// edges the rest. Parallel grey copies share one id and carry a count.
struct UndirectedView {
    std::vector<std::uint32_t> offsets;
    std::vector<NodeId> neighbor;
    std::vector<std::uint32_t> edge;
    std::vector<std::uint8_t> is_black;
    std::vector<std::uint32_t> multiplicity;
    std::vector<std::uint32_t> black_of;  // node -> its black edge id

    explicit UndirectedView(const BiedgedGraph& b) {
        const size_t n = b.node_count();
        black_of.assign(n, 0);
        std::uint32_t next_id = 0;
        for (NodeId v = 0; v < n; ++v) {
            if (b.side(v) == Side::L) {
                black_of[v] = black_of[b.partner(v)] = next_id++;
                is_black.push_back(1);
                multiplicity.push_back(1);
            }
        }
        offsets.assign(n + 1, 0);
        for (NodeId v = 0; v < n; ++v) offsets[v + 1] = static_cast<std::uint32_t>(1 + b.grey_degree(v));
        std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
        neighbor.resize(offsets[n]);
        edge.resize(offsets[n]);
        std::vector<std::uint32_t> fill(offsets.begin(), offsets.end() - 1);
        auto put = [&](NodeId u, NodeId w, std::uint32_t e) {
            neighbor[fill[u]] = w;
            edge[fill[u]++] = e;
        };
        for (NodeId v = 0; v < n; ++v) put(v, b.partner(v), black_of[v]);
        for (NodeId v = 0; v < n; ++v) {
            auto out = b.grey_out(v);
            auto counts = b.grey_out_counts(v);
            for (size_t i = 0; i < out.size(); ++i) {
                const std::uint32_t e = next_id++;
                is_black.push_back(0);
                multiplicity.push_back(counts[i]);
                put(v, out[i], e);
                if (out[i] != v) put(out[i], v, e);
            }
        }
    }
};

/// Scratch for one first frontier x: Tarjan bridge DFS over G minus x's
/// black edge, restricted to x's component.
struct BridgeScan {
    std::vector<std::uint32_t> stamp;
    std::vector<std::uint32_t> tin, tout, low;
    std::vector<std::uint32_t> parent_edge;
    std::vector<NodeId> parent;
    std::vector<std::uint8_t> bridge_above;  // edge to parent is a bridge
    std::vector<std::uint32_t> black_path;   // black bridges on the root path
    std::vector<std::uint32_t> prefix;       // black-bridge marks by tin
    std::vector<NodeId> order;
    std::uint32_t current = 0;

    explicit BridgeScan(size_t n)
        : stamp(n, UINT32_MAX), tin(n), tout(n), low(n), parent_edge(n), parent(n), bridge_above(n),
          black_path(n), prefix(n + 1), order() {
        order.reserve(n);
    }

    bool visited(NodeId v) const { return stamp[v] == current; }

    void run(const UndirectedView& g, NodeId x, std::uint32_t skip_edge) {
        current = x;
        order.clear();
        struct Frame {
            NodeId node;
            std::uint32_t pos;
        };
        std::vector<Frame> stack;
        std::uint32_t timer = 0;
        auto enter = [&](NodeId v, NodeId p, std::uint32_t e) {
            stamp[v] = current;
            tin[v] = low[v] = timer++;
            parent[v] = p;
            parent_edge[v] = e;
            bridge_above[v] = 0;
            order.push_back(v);
            stack.push_back({v, g.offsets[v]});
        };
        enter(x, kNoNode, UINT32_MAX);
        while (!stack.empty()) {
            Frame& f = stack.back();
            const NodeId v = f.node;
            if (f.pos < g.offsets[v + 1]) {
                const NodeId w = g.neighbor[f.pos];
                const std::uint32_t e = g.edge[f.pos];
                ++f.pos;
                if (e == skip_edge || e == parent_edge[v]) continue;
                if (visited(w)) {
                    low[v] = std::min(low[v], tin[w]);
                } else {
                    enter(w, v, e);
                }
                continue;
            }
            tout[v] = timer - 1;
            stack.pop_back();
            if (parent[v] != kNoNode) {
                const NodeId p = parent[v];
                low[p] = std::min(low[p], low[v]);
                bridge_above[v] = low[v] > tin[p] && g.multiplicity[parent_edge[v]] == 1;
            }
        }
        prefix[0] = 0;
        for (size_t i = 0; i < order.size(); ++i) {
            const NodeId v = order[i];
            const std::uint32_t mark = (bridge_above[v] && g.is_black[parent_edge[v]]) ? 1 : 0;
            prefix[i + 1] = prefix[i] + mark;
            black_path[v] = (parent[v] == kNoNode ? 0 : black_path[parent[v]]) + mark;
        }
    }

    std::uint32_t black_bridges_total() const { return prefix[order.size()]; }
    /// Black bridges strictly below w (its own parent edge excluded).
    std::uint32_t black_bridges_below(NodeId w) const { return prefix[tout[w] + 1] - prefix[tin[w] + 1]; }
    bool in_subtree(NodeId v, NodeId root) const { return tin[root] <= tin[v] && tin[v] <= tout[root]; }
};

struct UnionFind {
    std::vector<NodeId> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    NodeId find(NodeId v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    }
    void unite(NodeId a, NodeId b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<NodePair> enumerate_snarls_naive(const BiedgedGraph& b, const EnumerateOptions& options) {
    const size_t n = b.node_count();
    if (n > options.node_limit) {
        throw Error(ErrorKind::guard, "brute-force snarl enumeration refused: " + std::to_string(n) +
                                          " nodes exceeds the limit of " + std::to_string(options.node_limit));
    }
    const UndirectedView g(b);
    std::vector<std::vector<NodePair>> found(n);
    parallel_for(
        n,
        [&](size_t begin, size_t end) {
            BridgeScan scan(n);
            for (size_t xi = begin; xi < end; ++xi) {
                const auto x = static_cast<NodeId>(xi);
                const NodeId x_partner = b.partner(x);
                scan.run(g, x, g.black_of[x]);
                const std::uint32_t total = scan.black_bridges_total();
                for (NodeId y : scan.order) {
                    if (y <= x || y == x_partner) continue;
                    const NodeId y_partner = b.partner(y);
                    // y's black edge must be a bridge with y on x's side
                    if (scan.parent[y_partner] != y || !scan.bridge_above[y_partner]) continue;
                    if (scan.visited(x_partner) && !scan.in_subtree(x_partner, y_partner)) continue;
                    bool minimal = false;
                    if (options.rule == MinimalityRule::no_black_bridge) {
                        minimal = total - scan.black_bridges_below(y_partner) - 1 == 0;
                    } else {
                        minimal = scan.black_path[y] == 0;
                    }
                    if (minimal) found[x].push_back({x, y});
                }
                std::sort(found[x].begin(), found[x].end());
            }
        },
        16);
    std::vector<NodePair> out;
    for (auto& f : found) out.insert(out.end(), f.begin(), f.end());
    return out;
}

bool satisfies_snarl_definition(const BiedgedGraph& b, NodeId x, NodeId y, MinimalityRule rule) {
    if (x == y || b.partner(x) == y) return false;
    const NodeId xp = b.partner(x), yp = b.partner(y);
    auto is_frontier_black = [&](NodeId u, NodeId w) {
        return (u == x && w == xp) || (u == xp && w == x) || (u == y && w == yp) || (u == yp && w == y);
    };
    const size_t n = b.node_count();
    UnionFind uf(n);
    for (NodeId v = 0; v < n; ++v) {
        if (b.side(v) == Side::L && !is_frontier_black(v, b.partner(v))) uf.unite(v, b.partner(v));
        for (NodeId w : b.grey_out(v)) uf.unite(v, w);
    }
    const NodeId cx = uf.find(x);
    if (uf.find(y) != cx || uf.find(xp) == cx || uf.find(yp) == cx) return false;
    std::vector<NodeId> members;
    for (NodeId v = 0; v < n; ++v) {
        if (uf.find(v) == cx) members.push_back(v);
    }
    for (NodeId u : members) {
        if (b.side(u) != Side::L || is_frontier_black(u, b.partner(u))) continue;
        // drop black edge (u, u') and see whether X falls apart
        UnionFind inner(n);
        for (NodeId v : members) {
            if (b.side(v) == Side::L && v != u && !is_frontier_black(v, b.partner(v))) inner.unite(v, b.partner(v));
            for (NodeId w : b.grey_out(v)) inner.unite(v, w);
        }
        if (rule == MinimalityRule::no_black_bridge) {
            const NodeId c = inner.find(members.front());
            for (NodeId v : members) {
                if (inner.find(v) != c) return false;
            }
        } else if (inner.find(x) != inner.find(y)) {
            return false;
        }
    }
    return true;
}

std::vector<NodeId> separated_component(const BiedgedGraph& b, NodeId x, NodeId y) {
    std::vector<char> seen(b.node_count(), 0);
    std::vector<NodeId> stack{x}, out;
    seen[x] = 1;
    auto blocked = [&](NodeId u, NodeId w) {
        return (b.partner(u) == w) && (u == x || w == x || u == y || w == y);
    };
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        out.push_back(v);
        auto visit = [&](NodeId w) {
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
        };
        if (!blocked(v, b.partner(v))) visit(b.partner(v));
        for (NodeId w : b.grey_out(v)) visit(w);
        for (NodeId w : b.grey_in(v)) visit(w);
    }
    std::sort(out.begin(), out.end());
    return out;
}

SnarlPair classify(NodePair p, const BfsTree& t, const BiedgedGraph& b, SnarlSource source) {
    NodeId a = p.first, c = p.second;
    if (a >= t.depth.size() || c >= t.depth.size()) {
        throw Error(ErrorKind::reference, "snarl frontier outside the BFS tree");
    }
    if (t.depth[c] < t.depth[a] || (t.depth[c] == t.depth[a] && c < a)) std::swap(a, c);
    SnarlPair s;
    s.sn1 = a;
    s.sn2 = c;
    s.source = source;
    const Side s1 = b.side(a), s2 = b.side(c);
    if (s1 == Side::R && s2 == Side::L) {
        s.orientation = Orientation::RL;
    } else if (s1 == Side::L && s2 == Side::R) {
        s.orientation = Orientation::LR;
    } else {
        s.orientation = s1 == Side::L ? Orientation::LL : Orientation::RR;
    }
    return s;
}

std::vector<SnarlPair> classify_all(const std::vector<NodePair>& pairs, const BfsTree& t, const BiedgedGraph& b,
                                    SnarlSource source) {
    std::vector<SnarlPair> out;
    out.reserve(pairs.size());
    for (const auto& p : pairs) out.push_back(classify(p, t, b, source));
    return out;
}

LoadedSnarls parse_snarls(std::string_view text, const BiedgedGraph& b, const BfsTree& t) {
    LoadedSnarls result;
    std::set<NodePair> seen;
    std::istringstream in{std::string(text)};
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        for (std::string f; ls >> f;) fields.push_back(f);
        if (fields.size() < 2 || fields.size() > 3) {
            throw Error(ErrorKind::parse, "snarl line " + std::to_string(line_no) + ": expected 2 or 3 fields");
        }
        if (fields.size() == 3 && fields[2] != "acyclic" && fields[2] != "cyclic") {
            throw Error(ErrorKind::parse, "snarl line " + std::to_string(line_no) +
                                              ": third column must be 'acyclic' or 'cyclic'");
        }
        auto a = b.find(fields[0]);
        auto c = b.find(fields[1]);
        if (!a || !c) {
            throw Error(ErrorKind::reference, "snarl line " + std::to_string(line_no) + ": unknown node '" +
                                                  (a ? fields[1] : fields[0]) + "'");
        }
        if (*a == *c || b.partner(*a) == *c) {
            throw Error(ErrorKind::parse, "snarl line " + std::to_string(line_no) +
                                              ": frontiers must lie on distinct black edges");
        }
        NodePair key{std::min(*a, *c), std::max(*a, *c)};
        if (!seen.insert(key).second) {
            result.warnings.push_back("snarl line " + std::to_string(line_no) + ": duplicate pair " + fields[0] +
                                      " " + fields[1] + " ignored");
            continue;
        }
        SnarlPair s = classify(key, t, b, SnarlSource::external);
        if (fields.size() == 3) s.upstream_flag = fields[2];
        result.snarls.push_back(std::move(s));
    }
    return result;
}

LoadedSnarls load_snarls(const std::string& path, const BiedgedGraph& b, const BfsTree& t) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::io, "cannot open snarl file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_snarls(buf.str(), b, t);
}

std::string snarls_tsv(const BiedgedGraph& b, const std::vector<SnarlPair>& snarls) {
    std::string out;
    for (const auto& s : snarls) {
        out += b.name(s.sn1) + '\t' + b.name(s.sn2);
        if (!s.upstream_flag.empty()) out += '\t' + s.upstream_flag;
        out += '\n';
    }
    return out;
}

}  // namespace ultrabubble
