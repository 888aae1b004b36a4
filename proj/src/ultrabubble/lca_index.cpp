#include "ultrabubble/lca_index.hpp"

#include "ultrabubble/error.hpp"

#include <bit>
#include <cstring>
#include <istream>
#include <ostream>

namespace ultrabubble {

namespace {

constexpr char kMagic[8] = {'U', 'B', 'L', 'C', 'A', 'I', 'D', 'X'};
constexpr std::uint32_t kFormatVersion = 1;

template <typename T>
void write_pod(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void write_vec(std::ostream& out, const std::vector<T>& v) {
    write_pod<std::uint64_t>(out, v.size());
    out.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(T)));
}

template <typename T>
T read_pod(std::istream& in) {
    T v{};
    if (!in.read(reinterpret_cast<char*>(&v), sizeof(T))) throw Error(ErrorKind::io, "truncated LCA cache");
    return v;
}

template <typename T>
std::vector<T> read_vec(std::istream& in) {
    auto n = read_pod<std::uint64_t>(in);
    if (n > (std::uint64_t{1} << 40)) throw Error(ErrorKind::io, "corrupt LCA cache");
    std::vector<T> v(n);
    if (!in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(T)))) {
        throw Error(ErrorKind::io, "truncated LCA cache");
    }
    return v;
}

}  // namespace

LcaIndex::LcaIndex(const BfsTree& t) {
    const size_t n = t.parent.size();
    if (t.root >= n) throw Error(ErrorKind::structure, "LCA index needs a rooted tree");

    std::vector<std::uint32_t> offsets(n + 1, 0);
    for (NodeId v = 0; v < n; ++v) {
        if (t.parent[v] != kNoNode) {
            if (v == t.root) throw Error(ErrorKind::structure, "tree root has a parent");
            ++offsets[t.parent[v] + 1];
        } else if (v != t.root && t.depth.size() == n && t.depth[v] != UINT32_MAX) {
            throw Error(ErrorKind::structure, "forest: node " + std::to_string(v) + " is a second root");
        }
    }
    for (size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
    std::vector<NodeId> children(offsets[n]);
    {
        std::vector<std::uint32_t> fill(offsets.begin(), offsets.end() - 1);
        for (NodeId v = 0; v < n; ++v) {
            if (t.parent[v] != kNoNode) children[fill[t.parent[v]]++] = v;
        }
    }

    first_.assign(n, kAbsent);
    euler_.reserve(2 * n);
    depths_.reserve(2 * n);
    struct Frame {
        NodeId node;
        std::uint32_t next;
    };
    std::vector<Frame> stack{{t.root, offsets[t.root]}};
    first_[t.root] = 0;
    euler_.push_back(t.root);
    depths_.push_back(0);
    while (!stack.empty()) {
        Frame& top = stack.back();
        if (top.next < offsets[top.node + 1]) {
            NodeId child = children[top.next++];
            if (first_[child] != kAbsent) throw Error(ErrorKind::structure, "parent pointers contain a cycle");
            const auto d = static_cast<std::uint32_t>(stack.size());
            first_[child] = static_cast<std::uint32_t>(euler_.size());
            euler_.push_back(child);
            depths_.push_back(d);
            stack.push_back({child, offsets[child]});
        } else {
            stack.pop_back();
            if (!stack.empty()) {
                euler_.push_back(stack.back().node);
                depths_.push_back(static_cast<std::uint32_t>(stack.size() - 1));
            }
        }
    }
    tree_size_ = (euler_.size() + 1) / 2;
    for (NodeId v = 0; v < n; ++v) {
        if (t.parent[v] != kNoNode && first_[v] == kAbsent) {
            throw Error(ErrorKind::structure, "node " + std::to_string(v) + " is not connected to the root");
        }
    }
    build_table();
}

void LcaIndex::build_table() {
    const auto len = static_cast<std::uint32_t>(depths_.size());
    levels_ = static_cast<std::uint32_t>(std::bit_width(len));
    table_.assign(static_cast<size_t>(levels_) * len, 0);
    for (std::uint32_t i = 0; i < len; ++i) table_[i] = i;
    for (std::uint32_t k = 1; k < levels_; ++k) {
        const std::uint32_t half = 1u << (k - 1);
        const std::uint32_t* prev = table_.data() + static_cast<size_t>(k - 1) * len;
        std::uint32_t* cur = table_.data() + static_cast<size_t>(k) * len;
        for (std::uint32_t i = 0; i + (1u << k) <= len; ++i) {
            std::uint32_t a = prev[i], b = prev[i + half];
            cur[i] = depths_[b] < depths_[a] ? b : a;
        }
    }
}

std::uint32_t LcaIndex::min_position(std::uint32_t lo, std::uint32_t hi) const {
    const auto len = static_cast<std::uint32_t>(depths_.size());
    const auto k = static_cast<std::uint32_t>(std::bit_width(hi - lo + 1) - 1);
    const std::uint32_t* row = table_.data() + static_cast<size_t>(k) * len;
    std::uint32_t a = row[lo], b = row[hi + 1 - (1u << k)];
    return depths_[b] < depths_[a] ? b : a;
}

NodeId LcaIndex::lca(NodeId a, NodeId b) const {
    if (!contains(a) || !contains(b)) {
        throw Error(ErrorKind::reference, "LCA query on a node outside the tree");
    }
    std::uint32_t lo = first_[a], hi = first_[b];
    if (lo > hi) std::swap(lo, hi);
    return euler_[min_position(lo, hi)];
}

void LcaIndex::save(std::ostream& out) const {
    out.write(kMagic, sizeof(kMagic));
    write_pod(out, kFormatVersion);
    write_pod<std::uint64_t>(out, tree_size_);
    write_pod(out, levels_);
    write_vec(out, euler_);
    write_vec(out, depths_);
    write_vec(out, first_);
    write_vec(out, table_);
    if (!out) throw Error(ErrorKind::io, "failed to write LCA cache");
}

LcaIndex LcaIndex::load(std::istream& in) {
    char magic[sizeof(kMagic)];
    if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
        throw Error(ErrorKind::io, "not an LCA cache file");
    }
    if (read_pod<std::uint32_t>(in) != kFormatVersion) throw Error(ErrorKind::io, "unsupported LCA cache version");
    LcaIndex idx;
    idx.tree_size_ = read_pod<std::uint64_t>(in);
    idx.levels_ = read_pod<std::uint32_t>(in);
    idx.euler_ = read_vec<NodeId>(in);
    idx.depths_ = read_vec<std::uint32_t>(in);
    idx.first_ = read_vec<std::uint32_t>(in);
    idx.table_ = read_vec<std::uint32_t>(in);
    if (idx.depths_.size() != idx.euler_.size() || idx.table_.size() != size_t{idx.levels_} * idx.euler_.size()) {
        throw Error(ErrorKind::io, "inconsistent LCA cache");
    }
    return idx;
}

NodeId lca_naive(const BfsTree& t, NodeId a, NodeId b) {
    auto depth_of = [&](NodeId v) {
        std::uint32_t d = 0;
        for (NodeId u = v; t.parent[u] != kNoNode; u = t.parent[u]) ++d;
        return d;
    };
    std::uint32_t da = depth_of(a), db = depth_of(b);
    while (da > db) {
        a = t.parent[a];
        --da;
    }
    while (db > da) {
        b = t.parent[b];
        --db;
    }
    while (a != b) {
        a = t.parent[a];
        b = t.parent[b];
    }
    return a;
}

}  // namespace ultrabubble
