#ifndef ULTRABUBBLE_PIPELINE_HPP
#define ULTRABUBBLE_PIPELINE_HPP

#include "ultrabubble/features.hpp"
#include "ultrabubble/gfa.hpp"
#include "ultrabubble/lca_index.hpp"
#include "ultrabubble/rooting.hpp"
#include "ultrabubble/snarls.hpp"
#include "ultrabubble/ultrabubbles.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ultrabubble {

enum class Preprocess { forward, strip, none };
enum class Method { lca, naive, both };
enum class ReportFormat { tsv, json };

Preprocess parse_preprocess(std::string_view s);
Method parse_method(std::string_view s);
ReportFormat parse_format(std::string_view s);

struct SessionOptions {
    std::string name = "graph";
    Preprocess preprocess = Preprocess::forward;
    /// 1-based; 0 runs every connected component separately.
    size_t component = 0;
    /// false turns any needed root/sink synthesis into a rooting error
    bool synthesize = true;
    bool force_root = false;
    MinimalityRule rule = MinimalityRule::no_black_bridge;
    size_t node_limit = 5000;
};

struct Timings {
    double snarl_enum = 0, pre_table = 0, algo_lca = 0, algo_naive = 0;
    bool operator==(const Timings&) const = default;
};

struct RunReport {
    std::string name;
    size_t nodes = 0;  // segments of the input component
    size_t edges = 0;  // grey edges of the input component
    size_t removed_same_side = 0;
    size_t tips = 0;
    size_t cycles = 0;       // DFS back edges
    size_t cycle_nodes = 0;  // distinct cycle-closing nodes
    size_t ftip = 0;
    size_t biedged_nodes = 0;  // after root/sink synthesis
    size_t snarl_count = 0;
    std::string snarl_source = "brute";
    std::string minimality = "literal";
    size_t ultrabubbles = 0;
    size_t rejected = 0;
    size_t disagreements = 0;
    Timings timings;
    std::optional<Timings> timings_min;  // set by bench
    size_t repeats = 1;

    bool operator==(const RunReport&) const = default;
};

/// One connected component carried through the pipeline stage by stage.
class Session {
public:
    Session(BiedgedGraph component, std::string name, size_t removed, const SessionOptions& options);

    const BiedgedGraph& graph() const { return graph_; }
    const BfsTree& tree() const { return tree_; }
    const FtipSet& features() const { return ftip_; }
    const LcaIndex& index() const { return index_; }
    const std::vector<SnarlPair>& snarls() const { return snarls_; }
    const std::vector<Verdict>& lca_verdicts() const { return lca_; }
    const std::vector<Verdict>& naive_verdicts() const { return naive_; }
    const std::vector<std::string>& log() const { return log_; }
    const RunReport& report() const { return report_; }

    void brute_snarls();
    void load_snarls(const std::string& path);
    void parse_snarls(std::string_view text);
    /// Returns the number of lca/naive disagreements (0 unless both run).
    size_t classify(Method m);

private:
    void set_snarls(std::vector<SnarlPair> s, std::string source);

    SessionOptions options_;
    BiedgedGraph graph_;
    BfsTree tree_;
    FtipSet ftip_;
    LcaIndex index_;
    std::vector<SnarlPair> snarls_;
    std::vector<Verdict> lca_, naive_;
    std::vector<std::string> log_;
    RunReport report_;
};

/// Preprocesses, splits into components and roots each one.
std::vector<Session> open_sessions(const BidirectedGraph& g, const SessionOptions& options);

/// Number of connected components after preprocessing.
size_t component_count(const BidirectedGraph& g, Preprocess p);

struct PipelineConfig {
    SessionOptions session;
    std::string snarls = "brute";  // or a snarl-TSV path
    Method method = Method::both;
};

std::vector<RunReport> run_pipeline(const BidirectedGraph& g, const PipelineConfig& config);

/// Runs the pipeline `repeat` times; timings become medians and
/// timings_min the per-stage minimum.
std::vector<RunReport> bench(const BidirectedGraph& g, const PipelineConfig& config, size_t repeat);

/// Column names of the TSV report, in order.
const std::vector<std::string>& report_columns();
/// Rows sorted by name (natural order, so comp2 precedes comp10).
std::string emit_report(std::vector<RunReport> reports, ReportFormat format);
std::vector<RunReport> reports_from_json(std::string_view text);

}  // namespace ultrabubble

#endif  // ULTRABUBBLE_PIPELINE_HPP
