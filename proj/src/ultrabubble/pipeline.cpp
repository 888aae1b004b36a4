#include "ultrabubble/pipeline.hpp"

#include "ultrabubble/error.hpp"
#include "ultrabubble/natural_order.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>

namespace ultrabubble {

Preprocess parse_preprocess(std::string_view s) {
    if (s == "forward") return Preprocess::forward;
    if (s == "strip") return Preprocess::strip;
    if (s == "none") return Preprocess::none;
    throw Error(ErrorKind::argument, "preprocess must be forward, strip or none");
}

Method parse_method(std::string_view s) {
    if (s == "lca") return Method::lca;
    if (s == "naive") return Method::naive;
    if (s == "both") return Method::both;
    throw Error(ErrorKind::argument, "method must be lca, naive or both");
}

ReportFormat parse_format(std::string_view s) {
    if (s == "tsv") return ReportFormat::tsv;
    if (s == "json") return ReportFormat::json;
    throw Error(ErrorKind::argument, "format must be tsv or json");
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error& e) {
        throw Error(e.kind(), std::string(name) + ": " + e.what());
    }
}

}  // namespace

Session::Session(BiedgedGraph component, std::string name, size_t removed, const SessionOptions& options)
    : options_(options) {
    report_.name = std::move(name);
    report_.nodes = component.segment_count();
    report_.edges = component.grey_edge_count();
    report_.removed_same_side = removed;
    report_.minimality = to_string(options.rule);
    const RootingOptions rooting{options.force_root, options.node_limit, options.rule};

    stage("root", [&] {
        if (options.synthesize) {
            Synthesis s = synthesize_root(component, rooting);
            graph_ = std::move(s.graph);
            log_.insert(log_.end(), s.log.begin(), s.log.end());
            return;
        }
        const Condensation c = condense(component);
        const auto cands = candidate_roots(c);
        if (cands.size() != 1 || c.supernodes[cands[0]].size() != 1) {
            throw Error(ErrorKind::rooting, "graph has " + std::to_string(cands.size()) +
                                                " source components and synthesis is disabled");
        }
        graph_ = std::move(component);
        graph_.set_root(c.supernodes[cands[0]][0]);
    });
    tree_ = stage("bfs", [&] { return bfs_tree(graph_); });
    stage("end", [&] {
        if (sinks(graph_).empty()) {
            if (!options.synthesize) throw Error(ErrorKind::rooting, "graph has no sink and synthesis is disabled");
            Synthesis s = synthesize_sink(graph_, rooting);
            graph_ = std::move(s.graph);
            log_.insert(log_.end(), s.log.begin(), s.log.end());
            tree_ = bfs_tree(graph_);
        }
        graph_.set_end(choose_end(graph_, tree_));
        log_.push_back("end: " + graph_.name(graph_.end()));
    });
    report_.biedged_nodes = graph_.node_count();

    const auto start = Clock::now();
    ftip_ = stage("features", [&] { return compute_features(graph_); });
    index_ = stage("lca index", [&] { return LcaIndex(tree_); });
    report_.timings.pre_table = seconds_since(start);
    report_.tips = ftip_.tips.size();
    report_.cycles = ftip_.back_edges;
    report_.cycle_nodes = ftip_.cycle_closers.size();
    report_.ftip = ftip_.ftip.size();
}

void Session::set_snarls(std::vector<SnarlPair> s, std::string source) {
    snarls_ = std::move(s);
    lca_.clear();
    naive_.clear();
    report_.snarl_count = snarls_.size();
    report_.snarl_source = std::move(source);
    report_.ultrabubbles = report_.rejected = report_.disagreements = 0;
}

void Session::brute_snarls() {
    const auto start = Clock::now();
    auto pairs = stage("snarls", [&] {
        return enumerate_snarls_naive(graph_, {options_.node_limit, options_.rule});
    });
    set_snarls(classify_all(pairs, tree_, graph_, SnarlSource::brute_force), "brute");
    report_.timings.snarl_enum = seconds_since(start);
}

void Session::load_snarls(const std::string& path) {
    const auto start = Clock::now();
    auto loaded = stage("snarls", [&] { return ultrabubble::load_snarls(path, graph_, tree_); });
    log_.insert(log_.end(), loaded.warnings.begin(), loaded.warnings.end());
    set_snarls(std::move(loaded.snarls), "external");
    report_.timings.snarl_enum = seconds_since(start);
}

void Session::parse_snarls(std::string_view text) {
    const auto start = Clock::now();
    auto loaded = stage("snarls", [&] { return ultrabubble::parse_snarls(text, graph_, tree_); });
    log_.insert(log_.end(), loaded.warnings.begin(), loaded.warnings.end());
    set_snarls(std::move(loaded.snarls), "external");
    report_.timings.snarl_enum = seconds_since(start);
}

size_t Session::classify(Method m) {
    if (m != Method::naive) {
        const auto start = Clock::now();
        lca_ = stage("classify", [&] { return classify_lca(snarls_, graph_, ftip_, index_); });
        report_.timings.algo_lca = seconds_since(start);
    }
    if (m != Method::lca) {
        const auto start = Clock::now();
        naive_ = stage("classify", [&] { return classify_naive(snarls_, graph_); });
        report_.timings.algo_naive = seconds_since(start);
    }
    const auto& primary = m == Method::naive ? naive_ : lca_;
    report_.ultrabubbles = static_cast<size_t>(
        std::count_if(primary.begin(), primary.end(), [](const Verdict& v) { return v.is_ultrabubble; }));
    report_.rejected = primary.size() - report_.ultrabubbles;
    report_.disagreements = 0;
    if (m == Method::both) {
        const Crosscheck c = crosscheck(lca_, naive_);
        report_.disagreements = c.disagreements.size();
        for (const auto& d : c.disagreements) {
            log_.push_back("disagreement: (" + graph_.name(d.first.snarl.sn1) + ", " + graph_.name(d.first.snarl.sn2) +
                           ") lca=" + to_string(d.first.reason) + " naive=" + to_string(d.second.reason));
        }
    }
    return report_.disagreements;
}

namespace {

struct Prepared {
    BiedgedGraph graph;
    size_t removed = 0;
};

Prepared prepare(const BidirectedGraph& g, Preprocess p) {
    return stage("preprocess", [&] {
        Prepared out;
        switch (p) {
        case Preprocess::forward: out.graph = to_biedged(forwardize(g)); break;
        case Preprocess::strip: {
            StripResult s = strip_same_side_links(g);
            out.removed = s.removed;
            out.graph = to_biedged(s.graph);
            break;
        }
        case Preprocess::none: out.graph = to_biedged(g); break;
        }
        return out;
    });
}

}  // namespace

size_t component_count(const BidirectedGraph& g, Preprocess p) {
    return connected_components(prepare(g, p).graph).size();
}

std::vector<Session> open_sessions(const BidirectedGraph& g, const SessionOptions& options) {
    Prepared prepared = prepare(g, options.preprocess);
    auto comps = stage("component", [&] { return connected_components(prepared.graph); });
    if (comps.empty()) throw Error(ErrorKind::structure, "component: graph is empty");
    std::vector<Session> out;
    if (options.component > 0) {
        if (options.component > comps.size()) {
            throw Error(ErrorKind::argument, "component: " + std::to_string(options.component) +
                                                 " requested but the graph has " + std::to_string(comps.size()));
        }
        out.emplace_back(std::move(comps[options.component - 1]), options.name, prepared.removed, options);
        return out;
    }
    for (size_t i = 0; i < comps.size(); ++i) {
        std::string name = comps.size() == 1 ? options.name : options.name + "_comp" + std::to_string(i + 1);
        out.emplace_back(std::move(comps[i]), std::move(name), prepared.removed, options);
    }
    return out;
}

std::vector<RunReport> run_pipeline(const BidirectedGraph& g, const PipelineConfig& config) {
    std::vector<RunReport> reports;
    for (Session& s : open_sessions(g, config.session)) {
        if (config.snarls == "brute") {
            s.brute_snarls();
        } else {
            s.load_snarls(config.snarls);
        }
        s.classify(config.method);
        reports.push_back(s.report());
    }
    return reports;
}

std::vector<RunReport> bench(const BidirectedGraph& g, const PipelineConfig& config, size_t repeat) {
    if (repeat == 0) throw Error(ErrorKind::argument, "repeat must be positive");
    std::vector<std::vector<RunReport>> runs;
    for (size_t i = 0; i < repeat; ++i) runs.push_back(run_pipeline(g, config));
    std::vector<RunReport> out = runs.front();
    for (size_t k = 0; k < out.size(); ++k) {
        auto pick = [&](double Timings::*field, bool minimum) {
            std::vector<double> v;
            for (const auto& r : runs) v.push_back(r[k].timings.*field);
            std::sort(v.begin(), v.end());
            return minimum ? v.front() : v[(v.size() - 1) / 2];
        };
        Timings med, lo;
        for (auto f : {&Timings::snarl_enum, &Timings::pre_table, &Timings::algo_lca, &Timings::algo_naive}) {
            med.*f = pick(f, false);
            lo.*f = pick(f, true);
        }
        out[k].timings = med;
        out[k].timings_min = lo;
        out[k].repeats = repeat;
    }
    return out;
}

const std::vector<std::string>& report_columns() {
    static const std::vector<std::string> columns{
        "name",       "nodes",        "edges",    "removed_same_side", "tips",      "cycles",
        "ftip",       "snarls",       "snarl_source", "snarl_time",    "ultrabubbles", "rejected",
        "pre_table",  "algo_lca",     "algo_naive",   "cycle_nodes",   "biedged_nodes", "minimality",
        "disagreements", "repeats"};
    return columns;
}

namespace {

std::string fmt_seconds(double s) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", s);
    return buf;
}

nlohmann::ordered_json timings_json(const Timings& t) {
    nlohmann::ordered_json j;
    j["snarl_enum"] = t.snarl_enum;
    j["pre_table"] = t.pre_table;
    j["algo_lca"] = t.algo_lca;
    j["algo_naive"] = t.algo_naive;
    return j;
}

Timings timings_from(const nlohmann::json& j) {
    Timings t;
    t.snarl_enum = j.at("snarl_enum").get<double>();
    t.pre_table = j.at("pre_table").get<double>();
    t.algo_lca = j.at("algo_lca").get<double>();
    t.algo_naive = j.at("algo_naive").get<double>();
    return t;
}

}  // namespace

std::string emit_report(std::vector<RunReport> reports, ReportFormat format) {
    std::stable_sort(reports.begin(), reports.end(),
                     [](const RunReport& a, const RunReport& b) { return NaturalLess{}(a.name, b.name); });
    if (format == ReportFormat::json) {
        nlohmann::ordered_json root;
        root["schema_version"] = 1;
        root["reports"] = nlohmann::ordered_json::array();
        for (const auto& r : reports) {
            nlohmann::ordered_json j;
            j["name"] = r.name;
            j["nodes"] = r.nodes;
            j["edges"] = r.edges;
            j["removed_same_side"] = r.removed_same_side;
            j["tips"] = r.tips;
            j["cycles"] = r.cycles;
            j["cycle_nodes"] = r.cycle_nodes;
            j["ftip"] = r.ftip;
            j["biedged_nodes"] = r.biedged_nodes;
            j["snarl_count"] = r.snarl_count;
            j["snarl_source"] = r.snarl_source;
            j["minimality"] = r.minimality;
            j["ultrabubbles"] = r.ultrabubbles;
            j["rejected"] = r.rejected;
            j["disagreements"] = r.disagreements;
            j["timings"] = timings_json(r.timings);
            j["timings_min"] = r.timings_min ? timings_json(*r.timings_min) : nlohmann::ordered_json(nullptr);
            j["repeats"] = r.repeats;
            root["reports"].push_back(std::move(j));
        }
        return root.dump(2) + "\n";
    }

    const bool with_min = std::any_of(reports.begin(), reports.end(), [](const RunReport& r) {
        return r.timings_min.has_value();
    });
    std::string out;
    const auto& cols = report_columns();
    for (size_t i = 0; i < cols.size(); ++i) out += (i ? "\t" : "") + cols[i];
    if (with_min) out += "\tsnarl_time_min\tpre_table_min\talgo_lca_min\talgo_naive_min";
    out += '\n';
    for (const auto& r : reports) {
        const std::vector<std::string> row{r.name,
                                           std::to_string(r.nodes),
                                           std::to_string(r.edges),
                                           std::to_string(r.removed_same_side),
                                           std::to_string(r.tips),
                                           std::to_string(r.cycles),
                                           std::to_string(r.ftip),
                                           std::to_string(r.snarl_count),
                                           r.snarl_source,
                                           fmt_seconds(r.timings.snarl_enum),
                                           std::to_string(r.ultrabubbles),
                                           std::to_string(r.rejected),
                                           fmt_seconds(r.timings.pre_table),
                                           fmt_seconds(r.timings.algo_lca),
                                           fmt_seconds(r.timings.algo_naive),
                                           std::to_string(r.cycle_nodes),
                                           std::to_string(r.biedged_nodes),
                                           r.minimality,
                                           std::to_string(r.disagreements),
                                           std::to_string(r.repeats)};
        for (size_t i = 0; i < row.size(); ++i) out += (i ? "\t" : "") + row[i];
        if (with_min) {
            const Timings t = r.timings_min.value_or(Timings{});
            out += '\t' + fmt_seconds(t.snarl_enum) + '\t' + fmt_seconds(t.pre_table) + '\t' +
                   fmt_seconds(t.algo_lca) + '\t' + fmt_seconds(t.algo_naive);
        }
        out += '\n';
    }
    return out;
}

std::vector<RunReport> reports_from_json(std::string_view text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::parse, std::string("report JSON: ") + e.what());
    }
    try {
        if (root.at("schema_version").get<int>() != 1) {
            throw Error(ErrorKind::parse, "report JSON: unsupported schema version");
        }
        std::vector<RunReport> out;
        for (const auto& j : root.at("reports")) {
            RunReport r;
            r.name = j.at("name").get<std::string>();
            r.nodes = j.at("nodes").get<size_t>();
            r.edges = j.at("edges").get<size_t>();
            r.removed_same_side = j.at("removed_same_side").get<size_t>();
            r.tips = j.at("tips").get<size_t>();
            r.cycles = j.at("cycles").get<size_t>();
            r.cycle_nodes = j.at("cycle_nodes").get<size_t>();
            r.ftip = j.at("ftip").get<size_t>();
            r.biedged_nodes = j.at("biedged_nodes").get<size_t>();
            r.snarl_count = j.at("snarl_count").get<size_t>();
            r.snarl_source = j.at("snarl_source").get<std::string>();
            r.minimality = j.at("minimality").get<std::string>();
            r.ultrabubbles = j.at("ultrabubbles").get<size_t>();
            r.rejected = j.at("rejected").get<size_t>();
            r.disagreements = j.at("disagreements").get<size_t>();
            r.timings = timings_from(j.at("timings"));
            if (!j.at("timings_min").is_null()) r.timings_min = timings_from(j.at("timings_min"));
            r.repeats = j.at("repeats").get<size_t>();
            out.push_back(std::move(r));
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::parse, std::string("report JSON: ") + e.what());
    }
}

}  // namespace ultrabubble
