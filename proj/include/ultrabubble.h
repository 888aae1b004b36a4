#ifndef ULTRABUBBLE_H
#define ULTRABUBBLE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define UB_API __declspec(dllexport)
#else
#define UB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ub_status {
    UB_OK = 0,
    UB_ERR_IO = 1,
    UB_ERR_PARSE = 2,
    UB_ERR_REFERENCE = 3,
    UB_ERR_STRUCTURE = 4,
    UB_ERR_ROOTING = 5,
    UB_ERR_GUARD = 6,
    UB_ERR_ARGUMENT = 7,
    UB_ERR_INTERNAL = 8
} ub_status;

typedef enum ub_preprocess { UB_PREPROCESS_FORWARD = 0, UB_PREPROCESS_STRIP = 1, UB_PREPROCESS_NONE = 2 } ub_preprocess;
typedef enum ub_method { UB_METHOD_LCA = 0, UB_METHOD_NAIVE = 1, UB_METHOD_BOTH = 2 } ub_method;
typedef enum ub_minimality { UB_MINIMALITY_LITERAL = 0, UB_MINIMALITY_FRONTIER = 1 } ub_minimality;
typedef enum ub_format { UB_FORMAT_TSV = 0, UB_FORMAT_JSON = 1 } ub_format;

/* A parsed GFA graph. */
typedef struct ub_gfa ub_gfa;
/* One connected component carried through rooting, features and
 * classification. */
typedef struct ub_session ub_session;

/* Message of the last failed call on this thread; never NULL. */
UB_API const char* ub_last_error(void);
/* Frees strings returned through char** out-parameters. */
UB_API void ub_string_free(char* s);

UB_API ub_status ub_gfa_read(const char* path, ub_gfa** out);
UB_API ub_status ub_gfa_parse(const char* text, size_t length, ub_gfa** out);
UB_API void ub_gfa_free(ub_gfa* g);
UB_API ub_status ub_gfa_forwardize(const ub_gfa* g, ub_gfa** out);
UB_API ub_status ub_gfa_strip(const ub_gfa* g, ub_gfa** out, size_t* removed);
UB_API ub_status ub_gfa_write(const ub_gfa* g, char** out);
UB_API ub_status ub_gfa_counts(const ub_gfa* g, size_t* segments, size_t* links, size_t* paths);
UB_API ub_status ub_gfa_component_count(const ub_gfa* g, ub_preprocess p, size_t* count);

typedef struct ub_synth_params {
    uint64_t segments;
    double bubble_rate;
    uint64_t cycles;
    uint64_t tips;
    uint64_t seed;
} ub_synth_params;

UB_API ub_status ub_synth_generate(const ub_synth_params* p, ub_gfa** out);

typedef struct ub_options {
    const char* name;        /* report name; NULL means "graph" */
    ub_preprocess preprocess;
    size_t component;        /* 1-based; 0 opens every component */
    int synthesize;          /* 0: fail instead of adding a root or sink */
    int force_root;          /* add the artificial root even if one source exists */
    ub_minimality minimality;
    size_t node_limit;       /* brute-force snarl guard */
} ub_options;

UB_API void ub_options_init(ub_options* o);

/* Opens one session per selected component. Free the array with
 * ub_sessions_free. */
UB_API ub_status ub_sessions_open(const ub_gfa* g, const ub_options* o, ub_session*** out, size_t* count);
UB_API void ub_sessions_free(ub_session** sessions, size_t count);

UB_API ub_status ub_session_snarls_brute(ub_session* s);
UB_API ub_status ub_session_snarls_load(ub_session* s, const char* path);
UB_API ub_status ub_session_snarls_parse(ub_session* s, const char* text, size_t length);
/* `disagreements` (may be NULL) receives the lca/naive mismatch count. */
UB_API ub_status ub_session_classify(ub_session* s, ub_method m, size_t* disagreements);

UB_API ub_status ub_session_features_tsv(const ub_session* s, char** out);
UB_API ub_status ub_session_snarls_tsv(const ub_session* s, char** out);
/* Verdicts of one method; UB_METHOD_BOTH picks the lca verdicts. */
UB_API ub_status ub_session_verdicts_tsv(const ub_session* s, ub_method m, char** out);
UB_API ub_status ub_session_log(const ub_session* s, char** out);
UB_API ub_status ub_session_name(const ub_session* s, char** out);

/* Report rows of several sessions, sorted by name. */
UB_API ub_status ub_reports_render(const ub_session* const* sessions, size_t count, ub_format f, char** out);

/* Runs the full pipeline `repeat` times and renders min/median timings.
 * `snarls` is "brute" or a snarl-TSV path. */
UB_API ub_status ub_bench(const ub_gfa* g, const ub_options* o, const char* snarls, ub_method m, size_t repeat,
                          ub_format f, char** out);

#ifdef __cplusplus
}
#endif

#endif /* ULTRABUBBLE_H */
