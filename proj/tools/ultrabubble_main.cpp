#include "ultrabubble.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

constexpr int kExitDisagreement = 1;
constexpr int kExitInput = 2;
constexpr int kExitStructure = 3;

struct CliFailure {
    int code;
};

int exit_code(ub_status s) {
    switch (s) {
    case UB_OK: return 0;
    case UB_ERR_IO:
    case UB_ERR_PARSE:
    case UB_ERR_REFERENCE:
    case UB_ERR_ARGUMENT: return kExitInput;
    default: return kExitStructure;
    }
}

void check(ub_status s) {
    if (s != UB_OK) {
        std::cerr << "error: " << ub_last_error() << '\n';
        throw CliFailure{exit_code(s)};
    }
}

std::string take(char* s) {
    std::string out(s ? s : "");
    ub_string_free(s);
    return out;
}

struct GfaHandle {
    ub_gfa* g = nullptr;
    ~GfaHandle() { ub_gfa_free(g); }
};

struct SessionList {
    ub_session** items = nullptr;
    size_t count = 0;
    ~SessionList() { ub_sessions_free(items, count); }
    ub_session* operator[](size_t i) const { return items[i]; }
};

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        std::cerr << "error: cannot write '" << path << "'\n";
        throw CliFailure{kExitInput};
    }
}

std::string stem_of(const std::string& path) {
    auto slash = path.find_last_of('/');
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    auto dot = base.find_last_of('.');
    return dot == std::string::npos || dot == 0 ? base : base.substr(0, dot);
}

struct GraphArgs {
    std::string input;
    std::string name;
    std::string preprocess = "forward";
    size_t component = 0;
    bool synthesize_root = false;
    bool no_synthesize = false;
    std::string minimality = "literal";
    size_t node_limit = 5000;
};

void add_graph_args(CLI::App* cmd, GraphArgs& a) {
    cmd->add_option("gfa", a.input, "GFA file")->required();
    cmd->add_option("--name", a.name, "report name (default: file stem)");
    cmd->add_option("--preprocess", a.preprocess, "forward | strip | none")
        ->check(CLI::IsMember({"forward", "strip", "none"}));
    cmd->add_option("--component", a.component, "1-based connected component (default: all)");
    cmd->add_flag("--synthesize-root", a.synthesize_root, "always add the artificial root 00");
    cmd->add_flag("--no-synthesize", a.no_synthesize, "fail instead of adding a root or sink");
    cmd->add_option("--minimality", a.minimality, "literal | frontier")
        ->check(CLI::IsMember({"literal", "frontier"}));
    cmd->add_option("--node-limit", a.node_limit, "largest graph accepted by the brute-force snarl finder");
}

ub_options to_options(const GraphArgs& a, std::string& name_storage) {
    ub_options o;
    ub_options_init(&o);
    name_storage = a.name.empty() ? stem_of(a.input) : a.name;
    o.name = name_storage.c_str();
    o.preprocess = a.preprocess == "strip" ? UB_PREPROCESS_STRIP
                   : a.preprocess == "none" ? UB_PREPROCESS_NONE
                                            : UB_PREPROCESS_FORWARD;
    o.component = a.component;
    o.synthesize = a.no_synthesize ? 0 : 1;
    o.force_root = a.synthesize_root ? 1 : 0;
    o.minimality = a.minimality == "frontier" ? UB_MINIMALITY_FRONTIER : UB_MINIMALITY_LITERAL;
    o.node_limit = a.node_limit;
    return o;
}

ub_method to_method(const std::string& m) {
    return m == "lca" ? UB_METHOD_LCA : m == "naive" ? UB_METHOD_NAIVE : UB_METHOD_BOTH;
}

void open_graph(const GraphArgs& a, GfaHandle& gfa, SessionList& sessions) {
    check(ub_gfa_read(a.input.c_str(), &gfa.g));
    std::string name;
    ub_options o = to_options(a, name);
    check(ub_sessions_open(gfa.g, &o, &sessions.items, &sessions.count));
}

void print_log(const SessionList& sessions) {
    for (size_t i = 0; i < sessions.count; ++i) {
        char* text = nullptr;
        check(ub_session_log(sessions[i], &text));
        std::cerr << take(text);
    }
}

std::string section(const SessionList& sessions, size_t i, std::string body) {
    if (sessions.count == 1) return body;
    char* name = nullptr;
    check(ub_session_name(sessions[i], &name));
    return "# " + take(name) + "\n" + body;
}

void load_snarls(ub_session* s, const std::string& source) {
    if (source == "brute") {
        check(ub_session_snarls_brute(s));
    } else {
        check(ub_session_snarls_load(s, source.c_str()));
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Ultrabubble detection in biedged sequence graphs"};
    app.require_subcommand(1);

    // preprocess
    std::string pre_input, pre_mode = "forward", pre_out;
    auto* pre = app.add_subcommand("preprocess", "rewrite a GFA so every link is (+,+), or drop same-side links");
    pre->add_option("input", pre_input, "GFA file")->required();
    pre->add_option("--mode", pre_mode, "forward | strip")->check(CLI::IsMember({"forward", "strip"}));
    pre->add_option("-o,--out", pre_out, "output GFA (default: stdout)");

    // features
    GraphArgs feat_args;
    auto* feat = app.add_subcommand("features", "list tips and cycle-closing nodes");
    add_graph_args(feat, feat_args);

    // snarls
    GraphArgs sn_args;
    std::string sn_method = "brute", sn_input;
    auto* sn = app.add_subcommand("snarls", "enumerate or load snarls");
    add_graph_args(sn, sn_args);
    sn->add_option("--method", sn_method, "brute | load")->check(CLI::IsMember({"brute", "load"}));
    sn->add_option("--input", sn_input, "snarl TSV for --method load");

    // ultrabubbles
    GraphArgs ub_args;
    std::string ub_method_name = "both", ub_snarls = "brute", ub_format = "tsv", ub_verdicts;
    auto* ub = app.add_subcommand("ultrabubbles", "classify snarls as ultrabubbles");
    add_graph_args(ub, ub_args);
    ub->add_option("--method", ub_method_name, "lca | naive | both")->check(CLI::IsMember({"lca", "naive", "both"}));
    ub->add_option("--snarls", ub_snarls, "snarl TSV path, or 'brute'");
    ub->add_option("--format", ub_format, "report format: tsv | json")->check(CLI::IsMember({"tsv", "json"}));
    ub->add_option("--verdicts", ub_verdicts, "write per-snarl verdicts to this file ('-' for stdout)");

    // synth
    ub_synth_params sp{200, 0.3, 0, 0, 1};
    std::string synth_out;
    auto* synth = app.add_subcommand("synth", "generate a synthetic graph");
    synth->add_option("--segments", sp.segments, "total segment count, tips included");
    synth->add_option("--bubble-rate", sp.bubble_rate, "fraction of chain positions opened into bubbles")
        ->check(CLI::Range(0.0, 1.0));
    synth->add_option("--cycles", sp.cycles, "back edges inside bubble branches");
    synth->add_option("--tips", sp.tips, "dead-end segments");
    synth->add_option("--seed", sp.seed, "RNG seed");
    synth->add_option("-o,--out", synth_out, "output GFA (default: stdout)");

    // bench
    GraphArgs bench_args;
    std::string bench_method = "both", bench_snarls = "brute", bench_format = "tsv";
    size_t repeat = 3;
    auto* bench = app.add_subcommand("bench", "run the pipeline repeatedly and report min/median timings");
    add_graph_args(bench, bench_args);
    bench->add_option("--method", bench_method, "lca | naive | both")->check(CLI::IsMember({"lca", "naive", "both"}));
    bench->add_option("--snarls", bench_snarls, "snarl TSV path, or 'brute'");
    bench->add_option("--format", bench_format, "tsv | json")->check(CLI::IsMember({"tsv", "json"}));
    bench->add_option("--repeat", repeat, "number of runs")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitInput;
    }

    if (*pre) {
        GfaHandle in, out;
        check(ub_gfa_read(pre_input.c_str(), &in.g));
        if (pre_mode == "strip") {
            size_t removed = 0;
            check(ub_gfa_strip(in.g, &out.g, &removed));
            std::cerr << "removed " << removed << " same-side links\n";
        } else {
            check(ub_gfa_forwardize(in.g, &out.g));
        }
        char* text = nullptr;
        check(ub_gfa_write(out.g, &text));
        write_output(pre_out, take(text));
        return 0;
    }

    if (*feat) {
        GfaHandle gfa;
        SessionList sessions;
        open_graph(feat_args, gfa, sessions);
        print_log(sessions);
        for (size_t i = 0; i < sessions.count; ++i) {
            char* text = nullptr;
            check(ub_session_features_tsv(sessions[i], &text));
            std::cout << section(sessions, i, take(text));
        }
        return 0;
    }

    if (*sn) {
        if (sn_method == "load" && sn_input.empty()) {
            std::cerr << "error: --method load needs --input\n";
            return kExitInput;
        }
        GfaHandle gfa;
        SessionList sessions;
        open_graph(sn_args, gfa, sessions);
        for (size_t i = 0; i < sessions.count; ++i) {
            load_snarls(sessions[i], sn_method == "load" ? sn_input : "brute");
            char* text = nullptr;
            check(ub_session_snarls_tsv(sessions[i], &text));
            std::cout << section(sessions, i, take(text));
        }
        print_log(sessions);
        return 0;
    }

    if (*ub) {
        GfaHandle gfa;
        SessionList sessions;
        open_graph(ub_args, gfa, sessions);
        const ub_method m = to_method(ub_method_name);
        size_t total_disagreements = 0;
        std::string verdicts;
        for (size_t i = 0; i < sessions.count; ++i) {
            load_snarls(sessions[i], ub_snarls);
            size_t d = 0;
            check(ub_session_classify(sessions[i], m, &d));
            total_disagreements += d;
            char* text = nullptr;
            check(ub_session_verdicts_tsv(sessions[i], m, &text));
            verdicts += section(sessions, i, take(text));
        }
        print_log(sessions);
        if (!ub_verdicts.empty()) write_output(ub_verdicts, verdicts);
        char* report = nullptr;
        check(ub_reports_render(sessions.items, sessions.count, ub_format == "json" ? UB_FORMAT_JSON : UB_FORMAT_TSV,
                                &report));
        if (ub_verdicts != "-") std::cout << take(report);
        else std::cerr << take(report);
        if (total_disagreements > 0) {
            std::cerr << "error: " << total_disagreements << " lca/naive disagreements\n";
            return kExitDisagreement;
        }
        return 0;
    }

    if (*synth) {
        GfaHandle gfa;
        check(ub_synth_generate(&sp, &gfa.g));
        char* text = nullptr;
        check(ub_gfa_write(gfa.g, &text));
        write_output(synth_out, take(text));
        return 0;
    }

    if (*bench) {
        GfaHandle gfa;
        check(ub_gfa_read(bench_args.input.c_str(), &gfa.g));
        std::string name;
        ub_options o = to_options(bench_args, name);
        char* report = nullptr;
        check(ub_bench(gfa.g, &o, bench_snarls.c_str(), to_method(bench_method), repeat,
                       bench_format == "json" ? UB_FORMAT_JSON : UB_FORMAT_TSV, &report));
        std::cout << take(report);
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CliFailure& f) {
        return f.code;
    }
}
