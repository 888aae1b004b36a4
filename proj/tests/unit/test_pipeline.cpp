#include "ultrabubble/error.hpp"
#include "ultrabubble/pipeline.hpp"
#include "ultrabubble/synth.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace ultrabubble;

namespace {

const char* kTrivial = "S\t1\tA\nS\t2\tC\nL\t1\t+\t2\t+\t*\n";

SessionOptions named(const char* name) {
    SessionOptions o;
    o.name = name;
    return o;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream in(line);
    std::string field;
    while (std::getline(in, field, sep)) out.push_back(field);
    return out;
}

RunReport without_timings(RunReport r) {
    r.timings = {};
    r.timings_min.reset();
    return r;
}

}  // namespace

TEST_CASE("trivial graph report") {
    PipelineConfig config;
    config.session = named("trivial");
    auto reports = run_pipeline(parse_gfa(kTrivial), config);
    REQUIRE(reports.size() == 1);
    const auto& r = reports[0];
    CHECK(r.name == "trivial");
    CHECK(r.nodes == 2);
    CHECK(r.edges == 1);
    CHECK(r.tips == 2);
    CHECK(r.cycles == 0);
    CHECK(r.ftip == 2);
    CHECK(r.biedged_nodes == 4);
    CHECK(r.snarl_count == 1);
    CHECK(r.snarl_source == "brute");
    CHECK(r.minimality == "literal");
    CHECK(r.ultrabubbles == 1);
    CHECK(r.rejected == 0);
    CHECK(r.disagreements == 0);
    CHECK(r.repeats == 1);
}

TEST_CASE("session stages") {
    auto sessions = open_sessions(parse_gfa(kTrivial), named("t"));
    REQUIRE(sessions.size() == 1);
    auto& s = sessions[0];
    CHECK(s.graph().name(s.graph().root()) == "1_L");
    CHECK(s.graph().name(s.graph().end()) == "2_R");
    CHECK(s.snarls().empty());
    s.parse_snarls("1_R\t2_L\n");
    CHECK(s.report().snarl_source == "external");
    CHECK(s.classify(Method::lca) == 0);
    CHECK(s.lca_verdicts().size() == 1);
    CHECK(s.naive_verdicts().empty());
    CHECK(s.report().ultrabubbles == 1);
    s.classify(Method::naive);
    CHECK(s.naive_verdicts().size() == 1);
    try {
        s.parse_snarls("1_R\t7_L\n");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::reference);
        CHECK(std::string(e.what()).rfind("snarls: ", 0) == 0);
    }
}

TEST_CASE("snarl files") {
    const std::string path = "pipeline_test_snarls.tsv";
    {
        std::ofstream out(path);
        out << "# from elsewhere\n1_R\t2_L\tacyclic\n1_R\t2_L\tacyclic\n";
    }
    PipelineConfig config;
    config.snarls = path;
    auto sessions = open_sessions(parse_gfa(kTrivial), config.session);
    sessions[0].load_snarls(path);
    CHECK(sessions[0].snarls().size() == 1);  // the repeat is dropped
    CHECK(sessions[0].log().back().find("duplicate") != std::string::npos);
    auto reports = run_pipeline(parse_gfa(kTrivial), config);
    CHECK(reports[0].snarl_source == "external");
    CHECK(reports[0].ultrabubbles == 1);
    std::remove(path.c_str());
    CHECK_THROWS_AS(run_pipeline(parse_gfa(kTrivial), config), Error);
}

TEST_CASE("components become separate sessions") {
    std::string text = kTrivial;
    text += "S\t3\tG\nS\t4\tT\nS\t5\tT\nL\t3\t+\t4\t+\t*\nL\t4\t+\t5\t+\t*\n";
    for (int i = 6; i <= 25; i += 2) {
        text += "S\t" + std::to_string(i) + "\tA\nS\t" + std::to_string(i + 1) + "\tA\n";
        text += "L\t" + std::to_string(i) + "\t+\t" + std::to_string(i + 1) + "\t+\t*\n";
    }
    const auto g = parse_gfa(text);
    CHECK(component_count(g, Preprocess::forward) == 12);
    auto sessions = open_sessions(g, named("g"));
    REQUIRE(sessions.size() == 12);
    CHECK(sessions[0].report().name == "g_comp1");
    CHECK(sessions[1].report().nodes == 3);

    auto o = named("g");
    o.component = 2;
    auto one = open_sessions(g, o);
    REQUIRE(one.size() == 1);
    CHECK(one[0].report().name == "g");
    CHECK(one[0].report().nodes == 3);
    o.component = 13;
    CHECK_THROWS_AS(open_sessions(g, o), Error);

    PipelineConfig config;
    config.session = named("g");
    auto tsv = emit_report(run_pipeline(g, config), ReportFormat::tsv);
    auto lines = split(tsv, '\n');
    REQUIRE(lines.size() == 13);
    CHECK(split(lines[1], '\t')[0] == "g_comp1");
    CHECK(split(lines[2], '\t')[0] == "g_comp2");
    CHECK(split(lines[12], '\t')[0] == "g_comp12");
}

TEST_CASE("synthesis can be refused") {
    // two sources
    const auto g = parse_gfa("S\t1\tA\nS\t2\tC\nS\t3\tG\nL\t1\t+\t3\t+\t*\nL\t2\t+\t3\t+\t*\n");
    auto o = named("x");
    o.synthesize = false;
    try {
        open_sessions(g, o);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::rooting);
        CHECK(std::string(e.what()).rfind("root: ", 0) == 0);
    }
    auto s = open_sessions(g, named("x"));
    CHECK(s[0].graph().name(s[0].graph().root()) == "00_L");
    CHECK(s[0].report().nodes == 3);
    CHECK(s[0].report().biedged_nodes == 8);

    o.force_root = true;
    o.synthesize = true;
    auto forced = open_sessions(parse_gfa(kTrivial), o);
    CHECK(forced[0].graph().name(forced[0].graph().root()) == "00_L");
}

TEST_CASE("same-side links") {
    const auto g = parse_gfa("S\t1\tA\nS\t2\tC\nS\t3\tG\nL\t1\t+\t2\t+\t*\nL\t2\t+\t3\t-\t*\n");
    auto o = named("s");
    o.preprocess = Preprocess::strip;
    auto s = open_sessions(g, o);
    CHECK(s[0].report().removed_same_side == 1);
    o.preprocess = Preprocess::none;
    CHECK_THROWS_AS(open_sessions(g, o), Error);
    o.preprocess = Preprocess::forward;
    CHECK(open_sessions(g, o)[0].report().removed_same_side == 0);
}

TEST_CASE("report header") {
    auto tsv = emit_report({}, ReportFormat::tsv);
    CHECK(tsv == "name\tnodes\tedges\tremoved_same_side\ttips\tcycles\tftip\tsnarls\tsnarl_source\tsnarl_time\t"
                 "ultrabubbles\trejected\tpre_table\talgo_lca\talgo_naive\tcycle_nodes\tbiedged_nodes\tminimality\t"
                 "disagreements\trepeats\n");
    CHECK(split(tsv.substr(0, tsv.size() - 1), '\t') == report_columns());
}

TEST_CASE("json round trip") {
    SynthParams p;
    p.n_segments = 150;
    p.bubble_rate = 0.4;
    p.n_cycles = 2;
    p.n_tips = 3;
    p.seed = 8;
    PipelineConfig config;
    config.session = named("synthetic");
    auto reports = bench(generate_gfa(p), config, 3);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].repeats == 3);
    REQUIRE(reports[0].timings_min);
    CHECK(reports[0].timings_min->algo_lca <= reports[0].timings.algo_lca);
    const auto json = emit_report(reports, ReportFormat::json);
    CHECK(reports_from_json(json) == reports);
    auto tsv = emit_report(reports, ReportFormat::tsv);
    CHECK(split(split(tsv, '\n')[0], '\t').back() == "algo_naive_min");

    CHECK_THROWS_AS(reports_from_json("{"), Error);
    CHECK_THROWS_AS(reports_from_json(R"({"schema_version": 2, "reports": []})"), Error);
    CHECK_THROWS_AS(reports_from_json(R"({"schema_version": 1, "reports": [{"name": "x"}]})"), Error);
    CHECK_THROWS_AS(bench(generate_gfa(p), config, 0), Error);
}

TEST_CASE("runs are deterministic apart from timings") {
    SynthParams p;
    p.n_segments = 200;
    p.bubble_rate = 0.5;
    p.n_cycles = 3;
    p.n_tips = 4;
    p.seed = 21;
    const auto g = generate_gfa(p);
    PipelineConfig config;
    auto a = run_pipeline(g, config);
    auto b = run_pipeline(g, config);
    REQUIRE(a.size() == b.size());
    CHECK(without_timings(a[0]) == without_timings(b[0]));
    CHECK(a[0].disagreements == 0);
    CHECK(a[0].tips == 6);
    CHECK(a[0].cycles == 3);
}

TEST_CASE("enum parsing") {
    CHECK(parse_method("naive") == Method::naive);
    CHECK(parse_preprocess("strip") == Preprocess::strip);
    CHECK(parse_format("json") == ReportFormat::json);
    CHECK_THROWS_AS(parse_method("fast"), Error);
    CHECK_THROWS_AS(parse_preprocess(""), Error);
    CHECK_THROWS_AS(parse_format("xml"), Error);
}
