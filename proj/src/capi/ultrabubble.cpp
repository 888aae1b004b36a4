#include "ultrabubble.h"

#include "ultrabubble/error.hpp"
#include "ultrabubble/pipeline.hpp"
#include "ultrabubble/synth.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct ub_gfa {
    ultrabubble::BidirectedGraph graph;
};

struct ub_session {
    ultrabubble::Session session;
};

namespace {

thread_local std::string last_error;

ub_status status_of(ultrabubble::ErrorKind k) {
    using ultrabubble::ErrorKind;
    switch (k) {
    case ErrorKind::io: return UB_ERR_IO;
    case ErrorKind::parse: return UB_ERR_PARSE;
    case ErrorKind::reference: return UB_ERR_REFERENCE;
    case ErrorKind::structure: return UB_ERR_STRUCTURE;
    case ErrorKind::rooting: return UB_ERR_ROOTING;
    case ErrorKind::guard: return UB_ERR_GUARD;
    case ErrorKind::argument: return UB_ERR_ARGUMENT;
    }
    return UB_ERR_INTERNAL;
}

template <typename F>
ub_status guarded(F&& f) {
    try {
        f();
        last_error.clear();
        return UB_OK;
    } catch (const ultrabubble::Error& e) {
        last_error = e.what();
        return status_of(e.kind());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return UB_ERR_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return UB_ERR_INTERNAL;
    }
}

void require(const void* p, const char* what) {
    if (!p) throw ultrabubble::Error(ultrabubble::ErrorKind::argument, std::string(what) + " must not be NULL");
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.data(), s.size() + 1);
    return out;
}

ultrabubble::SessionOptions convert(const ub_options* o) {
    ultrabubble::SessionOptions s;
    if (!o) return s;
    if (o->name) s.name = o->name;
    switch (o->preprocess) {
    case UB_PREPROCESS_FORWARD: s.preprocess = ultrabubble::Preprocess::forward; break;
    case UB_PREPROCESS_STRIP: s.preprocess = ultrabubble::Preprocess::strip; break;
    case UB_PREPROCESS_NONE: s.preprocess = ultrabubble::Preprocess::none; break;
    default: throw ultrabubble::Error(ultrabubble::ErrorKind::argument, "unknown preprocess mode");
    }
    s.component = o->component;
    s.synthesize = o->synthesize != 0;
    s.force_root = o->force_root != 0;
    s.rule = o->minimality == UB_MINIMALITY_FRONTIER ? ultrabubble::MinimalityRule::frontier_separating
                                                     : ultrabubble::MinimalityRule::no_black_bridge;
    s.node_limit = o->node_limit;
    return s;
}

ultrabubble::Method convert(ub_method m) {
    switch (m) {
    case UB_METHOD_LCA: return ultrabubble::Method::lca;
    case UB_METHOD_NAIVE: return ultrabubble::Method::naive;
    case UB_METHOD_BOTH: return ultrabubble::Method::both;
    }
    throw ultrabubble::Error(ultrabubble::ErrorKind::argument, "unknown method");
}

ultrabubble::ReportFormat convert(ub_format f) {
    return f == UB_FORMAT_JSON ? ultrabubble::ReportFormat::json : ultrabubble::ReportFormat::tsv;
}

}  // namespace

extern "C" {

const char* ub_last_error(void) { return last_error.c_str(); }

void ub_string_free(char* s) { std::free(s); }

ub_status ub_gfa_read(const char* path, ub_gfa** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new ub_gfa{ultrabubble::read_gfa_file(path)};
    });
}

ub_status ub_gfa_parse(const char* text, size_t length, ub_gfa** out) {
    return guarded([&] {
        require(text, "text");
        require(out, "out");
        *out = new ub_gfa{ultrabubble::parse_gfa(std::string_view(text, length))};
    });
}

void ub_gfa_free(ub_gfa* g) { delete g; }

ub_status ub_gfa_forwardize(const ub_gfa* g, ub_gfa** out) {
    return guarded([&] {
        require(g, "graph");
        require(out, "out");
        *out = new ub_gfa{ultrabubble::forwardize(g->graph)};
    });
}

ub_status ub_gfa_strip(const ub_gfa* g, ub_gfa** out, size_t* removed) {
    return guarded([&] {
        require(g, "graph");
        require(out, "out");
        auto r = ultrabubble::strip_same_side_links(g->graph);
        if (removed) *removed = r.removed;
        *out = new ub_gfa{std::move(r.graph)};
    });
}

ub_status ub_gfa_write(const ub_gfa* g, char** out) {
    return guarded([&] {
        require(g, "graph");
        require(out, "out");
        *out = dup_string(ultrabubble::write_gfa(g->graph));
    });
}

ub_status ub_gfa_counts(const ub_gfa* g, size_t* segments, size_t* links, size_t* paths) {
    return guarded([&] {
        require(g, "graph");
        if (segments) *segments = g->graph.segments().size();
        if (links) *links = g->graph.links().size();
        if (paths) *paths = g->graph.paths().size();
    });
}

ub_status ub_gfa_component_count(const ub_gfa* g, ub_preprocess p, size_t* count) {
    return guarded([&] {
        require(g, "graph");
        require(count, "count");
        ub_options o;
        ub_options_init(&o);
        o.preprocess = p;
        *count = ultrabubble::component_count(g->graph, convert(&o).preprocess);
    });
}

ub_status ub_synth_generate(const ub_synth_params* p, ub_gfa** out) {
    return guarded([&] {
        require(p, "params");
        require(out, "out");
        ultrabubble::SynthParams sp;
        sp.n_segments = p->segments;
        sp.bubble_rate = p->bubble_rate;
        sp.n_cycles = p->cycles;
        sp.n_tips = p->tips;
        sp.seed = p->seed;
        *out = new ub_gfa{ultrabubble::generate_gfa(sp)};
    });
}

void ub_options_init(ub_options* o) {
    if (!o) return;
    const ultrabubble::SessionOptions d;
    o->name = nullptr;
    o->preprocess = UB_PREPROCESS_FORWARD;
    o->component = d.component;
    o->synthesize = d.synthesize ? 1 : 0;
    o->force_root = d.force_root ? 1 : 0;
    o->minimality = UB_MINIMALITY_LITERAL;
    o->node_limit = d.node_limit;
}

ub_status ub_sessions_open(const ub_gfa* g, const ub_options* o, ub_session*** out, size_t* count) {
    return guarded([&] {
        require(g, "graph");
        require(out, "out");
        require(count, "count");
        auto sessions = ultrabubble::open_sessions(g->graph, convert(o));
        auto** list = new ub_session*[sessions.size()]();
        for (size_t i = 0; i < sessions.size(); ++i) list[i] = new ub_session{std::move(sessions[i])};
        *out = list;
        *count = sessions.size();
    });
}

void ub_sessions_free(ub_session** sessions, size_t count) {
    if (!sessions) return;
    for (size_t i = 0; i < count; ++i) delete sessions[i];
    delete[] sessions;
}

ub_status ub_session_snarls_brute(ub_session* s) {
    return guarded([&] {
        require(s, "session");
        s->session.brute_snarls();
    });
}

ub_status ub_session_snarls_load(ub_session* s, const char* path) {
    return guarded([&] {
        require(s, "session");
        require(path, "path");
        s->session.load_snarls(path);
    });
}

ub_status ub_session_snarls_parse(ub_session* s, const char* text, size_t length) {
    return guarded([&] {
        require(s, "session");
        require(text, "text");
        s->session.parse_snarls(std::string_view(text, length));
    });
}

ub_status ub_session_classify(ub_session* s, ub_method m, size_t* disagreements) {
    return guarded([&] {
        require(s, "session");
        const size_t d = s->session.classify(convert(m));
        if (disagreements) *disagreements = d;
    });
}

ub_status ub_session_features_tsv(const ub_session* s, char** out) {
    return guarded([&] {
        require(s, "session");
        require(out, "out");
        *out = dup_string(ultrabubble::features_tsv(s->session.graph(), s->session.features()));
    });
}

ub_status ub_session_snarls_tsv(const ub_session* s, char** out) {
    return guarded([&] {
        require(s, "session");
        require(out, "out");
        *out = dup_string(ultrabubble::snarls_tsv(s->session.graph(), s->session.snarls()));
    });
}

ub_status ub_session_verdicts_tsv(const ub_session* s, ub_method m, char** out) {
    return guarded([&] {
        require(s, "session");
        require(out, "out");
        const auto& v = m == UB_METHOD_NAIVE ? s->session.naive_verdicts() : s->session.lca_verdicts();
        *out = dup_string(ultrabubble::verdicts_tsv(s->session.graph(), v));
    });
}

ub_status ub_session_log(const ub_session* s, char** out) {
    return guarded([&] {
        require(s, "session");
        require(out, "out");
        std::string text;
        for (const auto& line : s->session.log()) text += s->session.report().name + ": " + line + '\n';
        *out = dup_string(text);
    });
}

ub_status ub_session_name(const ub_session* s, char** out) {
    return guarded([&] {
        require(s, "session");
        require(out, "out");
        *out = dup_string(s->session.report().name);
    });
}

ub_status ub_reports_render(const ub_session* const* sessions, size_t count, ub_format f, char** out) {
    return guarded([&] {
        require(out, "out");
        if (count) require(sessions, "sessions");
        std::vector<ultrabubble::RunReport> reports;
        for (size_t i = 0; i < count; ++i) {
            require(sessions[i], "session");
            reports.push_back(sessions[i]->session.report());
        }
        *out = dup_string(ultrabubble::emit_report(std::move(reports), convert(f)));
    });
}

ub_status ub_bench(const ub_gfa* g, const ub_options* o, const char* snarls, ub_method m, size_t repeat,
                   ub_format f, char** out) {
    return guarded([&] {
        require(g, "graph");
        require(out, "out");
        ultrabubble::PipelineConfig config;
        config.session = convert(o);
        config.snarls = snarls ? snarls : "brute";
        config.method = convert(m);
        *out = dup_string(ultrabubble::emit_report(ultrabubble::bench(g->graph, config, repeat), convert(f)));
    });
}

}  // extern "C"
