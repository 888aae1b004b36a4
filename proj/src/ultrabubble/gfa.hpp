#ifndef ULTRABUBBLE_GFA_HPP
#define ULTRABUBBLE_GFA_HPP

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ultrabubble {

enum class Orient : char { forward = '+', reverse = '-' };

struct Segment {
    std::string id;
    std::string sequence;  // upper-case ACGTN, or "*" when absent
    std::vector<std::string> tags;
};

struct Link {
    std::string from;
    Orient from_orient = Orient::forward;
    std::string to;
    Orient to_orient = Orient::forward;
    std::string overlap = "*";
    std::vector<std::string> tags;
};

struct PathStep {
    std::string segment;
    Orient orient = Orient::forward;

    bool operator==(const PathStep&) const = default;
};

struct Path {
    std::string name;
    std::vector<PathStep> steps;
    std::string overlaps = "*";
};

/// GFA v1 subset: segments, links and paths with per-end orientation.
class BidirectedGraph {
public:
    /// Appends a segment; throws a parse-kind Error on a duplicate id or
    /// an invalid sequence character.
    void add_segment(Segment segment);
    void add_link(Link link);
    void add_path(Path path);

    const std::vector<Segment>& segments() const { return segments_; }
    const std::vector<Link>& links() const { return links_; }
    const std::vector<Path>& paths() const { return paths_; }
    const std::vector<std::string>& headers() const { return headers_; }
    void add_header(std::string line) { headers_.push_back(std::move(line)); }

    bool has_segment(std::string_view id) const;
    const Segment& segment(std::string_view id) const;

    /// Throws a reference-kind Error if a link or path names a missing segment.
    void validate_references() const;

    bool operator==(const BidirectedGraph& other) const;

private:
    std::vector<std::string> headers_;
    std::vector<Segment> segments_;
    std::unordered_map<std::string, size_t> index_;
    std::vector<Link> links_;
    std::vector<Path> paths_;
};

/// Suffix of the reverse-complement copies created by forwardize().
inline constexpr std::string_view kReverseComplementSuffix = "_rc";

BidirectedGraph parse_gfa(std::istream& in);
BidirectedGraph parse_gfa(std::string_view text);
BidirectedGraph read_gfa_file(const std::string& path);

/// Records are written per type (H, S, L, P) in insertion order.
std::string write_gfa(const BidirectedGraph& g);

std::string reverse_complement(std::string_view seq);

/// Reverses the operation order of a CIGAR-like overlap ("3M2I" -> "2I3M").
/// Strings that are not a run of <count><op> pairs are returned unchanged.
std::string reverse_overlap(std::string_view overlap);

/// Rewrites every reverse link end and path step to a lazily created
/// reverse-complement copy, so all links become (+,+).
BidirectedGraph forwardize(const BidirectedGraph& g);

struct StripResult {
    BidirectedGraph graph;
    size_t removed = 0;
};

/// Drops links that would join two R sides or two L sides.
StripResult strip_same_side_links(const BidirectedGraph& g);

/// Spells a path as the concatenation of its oriented segment sequences
/// (overlaps ignored).
std::string spell_path(const BidirectedGraph& g, const Path& path);

}  // namespace ultrabubble

#endif  // ULTRABUBBLE_GFA_HPP
