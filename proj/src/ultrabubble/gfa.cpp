#include "ultrabubble/gfa.hpp"

#include "ultrabubble/error.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace ultrabubble {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    const bool tabbed = line.find('\t') != std::string_view::npos;
    size_t pos = 0;
    while (pos <= line.size()) {
        if (tabbed) {
            size_t next = line.find('\t', pos);
            if (next == std::string_view::npos) next = line.size();
            fields.push_back(line.substr(pos, next - pos));
            pos = next + 1;
        } else {
            while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
            if (pos >= line.size()) break;
            size_t next = pos;
            while (next < line.size() && !std::isspace(static_cast<unsigned char>(line[next]))) ++next;
            fields.push_back(line.substr(pos, next - pos));
            pos = next;
        }
    }
    return fields;
}

[[noreturn]] void parse_fail(size_t line_no, const std::string& msg) {
    throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": " + msg);
}

Orient parse_orient(std::string_view field, size_t line_no) {
    if (field == "+") return Orient::forward;
    if (field == "-") return Orient::reverse;
    parse_fail(line_no, "orientation must be '+' or '-', got '" + std::string(field) + "'");
}

std::string normalize_sequence(std::string_view raw, size_t line_no) {
    if (raw == "*") return "*";
    std::string seq(raw);
    for (char& c : seq) {
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        if (c != 'A' && c != 'C' && c != 'G' && c != 'T' && c != 'N') {
            parse_fail(line_no, std::string("invalid sequence character '") + c + "'");
        }
    }
    return seq;
}

std::vector<PathStep> parse_steps(std::string_view field, size_t line_no) {
    std::vector<PathStep> steps;
    size_t pos = 0;
    while (pos < field.size()) {
        size_t next = field.find(',', pos);
        if (next == std::string_view::npos) next = field.size();
        std::string_view step = field.substr(pos, next - pos);
        if (step.size() < 2) parse_fail(line_no, "malformed path step '" + std::string(step) + "'");
        steps.push_back({std::string(step.substr(0, step.size() - 1)),
                         parse_orient(step.substr(step.size() - 1), line_no)});
        pos = next + 1;
    }
    return steps;
}

std::vector<std::string> tail_tags(const std::vector<std::string_view>& fields, size_t from) {
    std::vector<std::string> tags;
    for (size_t i = from; i < fields.size(); ++i) tags.emplace_back(fields[i]);
    return tags;
}

char orient_char(Orient o) { return static_cast<char>(o); }

}  // namespace

void BidirectedGraph::add_segment(Segment segment) {
    if (index_.count(segment.id)) {
        throw Error(ErrorKind::parse, "duplicate segment id '" + segment.id + "'");
    }
    index_.emplace(segment.id, segments_.size());
    segments_.push_back(std::move(segment));
}

void BidirectedGraph::add_link(Link link) { links_.push_back(std::move(link)); }

void BidirectedGraph::add_path(Path path) { paths_.push_back(std::move(path)); }

bool BidirectedGraph::has_segment(std::string_view id) const {
    return index_.find(std::string(id)) != index_.end();
}

const Segment& BidirectedGraph::segment(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) {
        throw Error(ErrorKind::reference, "unknown segment '" + std::string(id) + "'");
    }
    return segments_[it->second];
}

void BidirectedGraph::validate_references() const {
    for (size_t i = 0; i < links_.size(); ++i) {
        for (const auto* end : {&links_[i].from, &links_[i].to}) {
            if (!has_segment(*end)) {
                throw Error(ErrorKind::reference,
                            "link " + std::to_string(i + 1) + " references unknown segment '" + *end + "'");
            }
        }
    }
    for (const auto& p : paths_) {
        for (const auto& s : p.steps) {
            if (!has_segment(s.segment)) {
                throw Error(ErrorKind::reference,
                            "path '" + p.name + "' references unknown segment '" + s.segment + "'");
            }
        }
    }
}

bool BidirectedGraph::operator==(const BidirectedGraph& other) const {
    return write_gfa(*this) == write_gfa(other);
}

BidirectedGraph parse_gfa(std::istream& in) {
    BidirectedGraph g;
    std::vector<size_t> link_lines;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_fields(line);
        if (fields.empty()) continue;
        const std::string_view type = fields[0];
        if (type == "H") {
            g.add_header(line);
        } else if (type == "S") {
            if (fields.size() < 3) parse_fail(line_no, "S record needs 3 fields");
            if (g.has_segment(fields[1])) {
                parse_fail(line_no, "duplicate segment id '" + std::string(fields[1]) + "'");
            }
            g.add_segment({std::string(fields[1]), normalize_sequence(fields[2], line_no),
                           tail_tags(fields, 3)});
        } else if (type == "L") {
            if (fields.size() < 5) parse_fail(line_no, "L record needs at least 5 fields");
            Link link;
            link.from = std::string(fields[1]);
            link.from_orient = parse_orient(fields[2], line_no);
            link.to = std::string(fields[3]);
            link.to_orient = parse_orient(fields[4], line_no);
            if (fields.size() > 5) link.overlap = std::string(fields[5]);
            link.tags = tail_tags(fields, 6);
            g.add_link(std::move(link));
            link_lines.push_back(line_no);
        } else if (type == "P") {
            if (fields.size() < 3) parse_fail(line_no, "P record needs at least 3 fields");
            Path p;
            p.name = std::string(fields[1]);
            p.steps = parse_steps(fields[2], line_no);
            if (fields.size() > 3) p.overlaps = std::string(fields[3]);
            g.add_path(std::move(p));
        }
        // other record types are tolerated and dropped
    }
    for (size_t i = 0; i < g.links().size(); ++i) {
        const Link& l = g.links()[i];
        for (const auto* end : {&l.from, &l.to}) {
            if (!g.has_segment(*end)) {
                throw Error(ErrorKind::reference, "line " + std::to_string(link_lines[i]) +
                                                      ": link references unknown segment '" + *end + "'");
            }
        }
    }
    g.validate_references();
    return g;
}

BidirectedGraph parse_gfa(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_gfa(in);
}

BidirectedGraph read_gfa_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::io, "cannot open '" + path + "'");
    return parse_gfa(in);
}

std::string write_gfa(const BidirectedGraph& g) {
    std::string out;
    auto append_tags = [&out](const std::vector<std::string>& tags) {
        for (const auto& t : tags) {
            out += '\t';
            out += t;
        }
    };
    for (const auto& h : g.headers()) {
        out += h;
        out += '\n';
    }
    for (const auto& s : g.segments()) {
        out += "S\t" + s.id + '\t' + s.sequence;
        append_tags(s.tags);
        out += '\n';
    }
    for (const auto& l : g.links()) {
        out += "L\t" + l.from + '\t' + orient_char(l.from_orient) + '\t' + l.to + '\t' +
               orient_char(l.to_orient) + '\t' + l.overlap;
        append_tags(l.tags);
        out += '\n';
    }
    for (const auto& p : g.paths()) {
        out += "P\t" + p.name + '\t';
        for (size_t i = 0; i < p.steps.size(); ++i) {
            if (i) out += ',';
            out += p.steps[i].segment;
            out += orient_char(p.steps[i].orient);
        }
        out += '\t' + p.overlaps + '\n';
    }
    return out;
}

std::string reverse_complement(std::string_view seq) {
    if (seq == "*") return "*";
    std::string rc(seq.rbegin(), seq.rend());
    for (char& c : rc) {
        switch (c) {
        case 'A': c = 'T'; break;
        case 'C': c = 'G'; break;
        case 'G': c = 'C'; break;
        case 'T': c = 'A'; break;
        default: break;
        }
    }
    return rc;
}

std::string reverse_overlap(std::string_view overlap) {
    std::vector<std::string_view> ops;
    size_t pos = 0;
    while (pos < overlap.size()) {
        size_t start = pos;
        while (pos < overlap.size() && std::isdigit(static_cast<unsigned char>(overlap[pos]))) ++pos;
        if (pos == start || pos >= overlap.size() || !std::isalpha(static_cast<unsigned char>(overlap[pos]))) {
            return std::string(overlap);
        }
        ++pos;
        ops.push_back(overlap.substr(start, pos - start));
    }
    std::string out;
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) out += *it;
    return out;
}

BidirectedGraph forwardize(const BidirectedGraph& g) {
    BidirectedGraph out;
    for (const auto& h : g.headers()) out.add_header(h);
    for (const auto& s : g.segments()) out.add_segment(s);

    std::vector<Segment> copies;
    std::unordered_map<std::string, std::string> copy_of;
    auto forward_id = [&](const std::string& id) -> const std::string& {
        auto it = copy_of.find(id);
        if (it != copy_of.end()) return it->second;
        std::string rc_id = id + std::string(kReverseComplementSuffix);
        if (g.has_segment(rc_id)) {
            throw Error(ErrorKind::structure,
                        "reverse-complement id '" + rc_id + "' collides with an existing segment");
        }
        const Segment& src = g.segment(id);
        copies.push_back({rc_id, reverse_complement(src.sequence), src.tags});
        return copy_of.emplace(id, std::move(rc_id)).first->second;
    };

    std::vector<Link> links;
    links.reserve(g.links().size());
    for (const auto& l : g.links()) {
        Link f = l;
        const bool from_flip = l.from_orient == Orient::reverse;
        const bool to_flip = l.to_orient == Orient::reverse;
        if (from_flip) f.from = forward_id(l.from);
        if (to_flip) f.to = forward_id(l.to);
        f.from_orient = Orient::forward;
        f.to_orient = Orient::forward;
        if (from_flip != to_flip) f.overlap = reverse_overlap(l.overlap);
        links.push_back(std::move(f));
    }
    std::vector<Path> paths;
    for (const auto& p : g.paths()) {
        Path f = p;
        for (auto& step : f.steps) {
            if (step.orient == Orient::reverse) {
                step.segment = forward_id(step.segment);
                step.orient = Orient::forward;
            }
        }
        paths.push_back(std::move(f));
    }
    for (auto& c : copies) out.add_segment(std::move(c));
    for (auto& l : links) out.add_link(std::move(l));
    for (auto& p : paths) out.add_path(std::move(p));
    return out;
}

StripResult strip_same_side_links(const BidirectedGraph& g) {
    StripResult result;
    for (const auto& h : g.headers()) result.graph.add_header(h);
    for (const auto& s : g.segments()) result.graph.add_segment(s);
    for (const auto& l : g.links()) {
        // (+,-) joins R to R, (-,+) joins L to L
        if (l.from_orient != l.to_orient) {
            ++result.removed;
            continue;
        }
        result.graph.add_link(l);
    }
    for (const auto& p : g.paths()) result.graph.add_path(p);
    return result;
}

std::string spell_path(const BidirectedGraph& g, const Path& path) {
    std::string out;
    for (const auto& step : path.steps) {
        const std::string& seq = g.segment(step.segment).sequence;
        out += step.orient == Orient::forward ? seq : reverse_complement(seq);
    }
    return out;
}

}  // namespace ultrabubble
