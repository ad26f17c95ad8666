#include "cimred.h"

#include <cstring>
#include <string>

#include "cimred/report.hpp"

using namespace cimred;

struct cimred_quiver {
    QuiverDocument doc;
    ExchangeMatrix matrix;
};

struct cimred_report {
    Report report;
};

namespace {

thread_local std::string g_last_error;

cimred_status status_from_errc(Errc c) {
    switch (c) {
        case Errc::parse_error: return CIMRED_PARSE_ERROR;
        case Errc::not_skew_symmetric: return CIMRED_NOT_SKEW;
        case Errc::index_out_of_range: return CIMRED_INDEX_RANGE;
        case Errc::non_positive_point: return CIMRED_NOT_POSITIVE;
        case Errc::not_periodic: return CIMRED_NOT_PERIODIC;
        case Errc::zero_scale: return CIMRED_ZERO_SCALE;
        case Errc::shape_mismatch: return CIMRED_SHAPE_MISMATCH;
        case Errc::rank_deficient: return CIMRED_RANK_DEFICIENT;
        case Errc::not_symplectic_change: return CIMRED_BAD_TRANSFORM;
        case Errc::full_rank: return CIMRED_FULL_RANK;
        case Errc::unknown_family: return CIMRED_UNKNOWN_FAMILY;
        case Errc::residual_rank: return CIMRED_INTERNAL;
        case Errc::internal: return CIMRED_INTERNAL;
    }
    return CIMRED_INTERNAL;
}

template <class F>
cimred_status guarded(F&& f) {
    try {
        f();
        g_last_error.clear();
        return CIMRED_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_from_errc(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return CIMRED_INTERNAL;
    }
}

RunConfig config_from_options(const cimred_options* opts) {
    RunConfig cfg;
    if (!opts) return cfg;
    cfg.seed = opts->seed;
    cfg.trials = opts->trials;
    cfg.tol = opts->tol;
    cfg.max_period = opts->max_period;
    if (opts->scale) cfg.scale = rational_from_string(opts->scale);
    if (opts->post_transform_json) cfg.post_transform = parse_rational_matrix(opts->post_transform_json);
    return cfg;
}

cimred_quiver* make_quiver(QuiverDocument doc) {
    ExchangeMatrix m = document_matrix(doc);
    return new cimred_quiver{std::move(doc), std::move(m)};
}

} // namespace

extern "C" {

void cimred_options_defaults(cimred_options* opts) {
    if (!opts) return;
    opts->seed = 42;
    opts->trials = 100;
    opts->tol = 1e-8;
    opts->max_period = 12;
    opts->scale = nullptr;
    opts->post_transform_json = nullptr;
}

const char* cimred_version(void) { return "1.0.0"; }

const char* cimred_status_name(cimred_status status) {
    switch (status) {
        case CIMRED_OK: return "ok";
        case CIMRED_BAD_ARGUMENT: return "bad argument";
        case CIMRED_PARSE_ERROR: return "parse error";
        case CIMRED_NOT_SKEW: return "not skew-symmetric";
        case CIMRED_INDEX_RANGE: return "index out of range";
        case CIMRED_NOT_POSITIVE: return "non-positive point";
        case CIMRED_NOT_PERIODIC: return "not periodic";
        case CIMRED_FULL_RANK: return "full rank";
        case CIMRED_BAD_TRANSFORM: return "post-transform not symplectic";
        case CIMRED_RANK_DEFICIENT: return "rank deficient";
        case CIMRED_SHAPE_MISMATCH: return "shape mismatch";
        case CIMRED_UNKNOWN_FAMILY: return "unknown family";
        case CIMRED_ZERO_SCALE: return "zero scale";
        case CIMRED_INTERNAL: return "internal error";
    }
    return "unknown";
}

const char* cimred_last_error(void) { return g_last_error.c_str(); }

cimred_status cimred_quiver_from_json(const char* text, cimred_quiver** out) {
    if (!text || !out) return CIMRED_BAD_ARGUMENT;
    return guarded([&] { *out = make_quiver(parse_document(text)); });
}

cimred_status cimred_quiver_from_rows(int n, const int64_t* entries, cimred_quiver** out) {
    if (!entries || !out || n < 1) return CIMRED_BAD_ARGUMENT;
    return guarded([&] {
        IntMat m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = BigInt((long)entries[i * n + j]);
        QuiverDocument doc;
        doc.matrix = std::move(m);
        *out = make_quiver(std::move(doc));
    });
}

cimred_status cimred_quiver_fomin6(int64_t r, int64_t s, int64_t t, int64_t p,
                                   cimred_quiver** out) {
    if (!out) return CIMRED_BAD_ARGUMENT;
    return guarded([&] { *out = make_quiver(example_document("fomin6", r, s, t, p)); });
}

void cimred_quiver_free(cimred_quiver* q) { delete q; }

int cimred_quiver_nodes(const cimred_quiver* q) { return q ? q->matrix.size() : 0; }

cimred_status cimred_quiver_mutate(const cimred_quiver* q, int node, cimred_quiver** out) {
    if (!q || !out) return CIMRED_BAD_ARGUMENT;
    return guarded([&] {
        ExchangeMatrix m = mutate_matrix(q->matrix, node);
        QuiverDocument doc;
        doc.matrix = m.entries();
        *out = new cimred_quiver{std::move(doc), std::move(m)};
    });
}

cimred_status cimred_quiver_period(const cimred_quiver* q, int max_period, int* period_out) {
    if (!q || !period_out) return CIMRED_BAD_ARGUMENT;
    return guarded([&] {
        PeriodResult pr = detect_period(q->matrix, max_period);
        *period_out = pr.period.value_or(0);
    });
}

cimred_status cimred_quiver_to_json(const cimred_quiver* q, const char* label, char** json_out) {
    if (!q || !json_out) return CIMRED_BAD_ARGUMENT;
    return guarded([&] {
        QuiverDocument doc = q->doc;
        if (label) doc.label = label;
        std::string s = document_to_json(doc);
        *json_out = new char[s.size() + 1];
        std::memcpy(*json_out, s.c_str(), s.size() + 1);
    });
}

cimred_status cimred_cmd_period(const cimred_quiver* q, const cimred_options* opts,
                                cimred_report** out) {
    if (!q || !out) return CIMRED_BAD_ARGUMENT;
    return guarded([&] { *out = new cimred_report{cmd_period(q->doc, config_from_options(opts))}; });
}

cimred_status cimred_cmd_reduce(const cimred_quiver* q, const cimred_options* opts,
                                cimred_report** out) {
    if (!q || !out) return CIMRED_BAD_ARGUMENT;
    return guarded([&] { *out = new cimred_report{cmd_reduce(q->doc, config_from_options(opts))}; });
}

cimred_status cimred_cmd_verify(const cimred_quiver* q, const cimred_options* opts,
                                cimred_report** out) {
    if (!q || !out) return CIMRED_BAD_ARGUMENT;
    return guarded([&] { *out = new cimred_report{cmd_verify(q->doc, config_from_options(opts))}; });
}

cimred_status cimred_cmd_orbit(const cimred_quiver* q, const cimred_options* opts,
                               const double* u0, int u0_len, int steps, cimred_report** out) {
    if (!q || !out || (!u0 && u0_len > 0)) return CIMRED_BAD_ARGUMENT;
    return guarded([&] {
        std::vector<double> start;
        if (u0_len > 0)
            start.assign(u0, u0 + u0_len);
        else
            start.assign(size_t(q->matrix.size()), 1.0);
        *out = new cimred_report{
            cmd_orbit(q->doc, config_from_options(opts), ClusterPoint(std::move(start)), steps)};
    });
}

const char* cimred_report_text(const cimred_report* r) { return r ? r->report.text.c_str() : ""; }

const char* cimred_report_json(const cimred_report* r) { return r ? r->report.json.c_str() : ""; }

int cimred_report_exit_code(const cimred_report* r) { return r ? r->report.exit_code : 2; }

void cimred_report_free(cimred_report* r) { delete r; }

void cimred_string_free(char* s) { delete[] s; }

} // extern "C"
