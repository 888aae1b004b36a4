#ifndef ULTRABUBBLE_ULTRABUBBLES_HPP
#define ULTRABUBBLE_ULTRABUBBLES_HPP

#include "ultrabubble/features.hpp"
#include "ultrabubble/lca_index.hpp"
#include "ultrabubble/snarls.hpp"

#include <string>
#include <vector>

namespace ultrabubble {

enum class Reason { none, orientation_LL_RR, orientation_LR, ftip_witness, cycle_found, tip_found };

const char* to_string(Reason r);

struct Verdict {
    SnarlPair snarl;
    bool is_ultrabubble = false;
    Reason reason = Reason::none;
    NodeId witness = kNoNode;
    /// one grey edge between two black edges
    bool trivial = false;
};

/// A single grey edge sn1 -> sn2 with nothing else around it.
bool is_trivial(const BiedgedGraph& b, NodeId sn1, NodeId sn2);

/// LCA test over ftip (tips first, then cycle closers, ascending); the
/// first t with LCA(t, sn1) = sn1 and LCA(t, sn2) != sn2 rejects the snarl.
std::vector<Verdict> classify_lca(const std::vector<SnarlPair>& snarls, const BiedgedGraph& b, const FtipSet& ftip,
                                  const LcaIndex& idx);

/// Extracts each snarl's subgraph and looks for tips and directed cycles in
/// it. Orientation is not consulted. Throws a structure-kind Error for a
/// pair whose frontiers are not separated as a snarl requires.
std::vector<Verdict> classify_naive(const std::vector<SnarlPair>& snarls, const BiedgedGraph& b);

/// The naive check for one frontier pair; usable without a root.
Verdict check_subgraph(const BiedgedGraph& b, NodeId sn1, NodeId sn2);

struct Disagreement {
    size_t index = 0;
    Verdict first, second;
};

struct Crosscheck {
    size_t compared = 0;
    std::vector<Disagreement> disagreements;

    bool ok() const { return disagreements.empty(); }
};

Crosscheck crosscheck(const std::vector<Verdict>& a, const std::vector<Verdict>& b);

/// `sn1 sn2 orientation ultrabubble|rejected reason [witness] [trivial]`
std::string verdicts_tsv(const BiedgedGraph& b, const std::vector<Verdict>& verdicts);

}  // namespace ultrabubble

#endif  // ULTRABUBBLE_ULTRABUBBLES_HPP
