#include "opd/capi.h"

#include <cstring>
#include <string>

#include "opd/engine.hpp"

struct opd_engine_t {
    opd::Engine engine;
    std::string lastError;

    explicit opd_engine_t(opd::RunConfig cfg) : engine(std::move(cfg)) {}
};

namespace {

char *dup_string(const std::string& s) {
    char *buf = static_cast<char *>(std::malloc(s.size() + 1));
    if (buf) std::memcpy(buf, s.c_str(), s.size() + 1);
    return buf;
}

opd_status run(opd_engine_t *e, char **out,
               const std::function<opd::CommandResult(opd::Engine&)>& f) {
    if (e == nullptr || out == nullptr) return OPD_USAGE;
    *out = nullptr;
    try {
        opd::CommandResult r = f(e->engine);
        *out = dup_string(r.report);
        e->lastError.clear();
        switch (r.exit) {
            case 0: return OPD_OK;
            case 1: return OPD_MISMATCH;
            default: return OPD_USAGE;
        }
    } catch (const std::invalid_argument& ex) {
        e->lastError = ex.what();
        return OPD_USAGE;
    } catch (const std::exception& ex) {
        e->lastError = ex.what();
        return OPD_INTERNAL;
    }
}

}  // namespace

extern "C" {

opd_engine_t *opd_engine_new(const char *config_json) {
    try {
        opd::RunConfig cfg = opd::RunConfig::fromJson(config_json ? config_json : "");
        return new opd_engine_t(std::move(cfg));
    } catch (...) {
        return nullptr;
    }
}

void opd_engine_free(opd_engine_t *engine) { delete engine; }

const char *opd_engine_last_error(const opd_engine_t *engine) {
    return engine ? engine->lastError.c_str() : "null engine";
}

int opd_api_version(void) { return 1; }

void opd_buffer_free(char *buffer) { std::free(buffer); }

opd_status opd_run_tables(opd_engine_t *e, char **out) {
    return run(e, out, [](opd::Engine& eng) { return eng.tables(); });
}

opd_status opd_run_compose(opd_engine_t *e, const char *a, const char *b, char **out) {
    if (!a || !b) return OPD_USAGE;
    std::string sa = a, sb = b;
    return run(e, out, [=](opd::Engine& eng) { return eng.composeCmd(sa, sb); });
}

opd_status opd_run_bar(opd_engine_t *e, const char *m, const char *o, const char *n, char **out) {
    if (!m || !o || !n) return OPD_USAGE;
    std::string sm = m, so = o, sn = n;
    return run(e, out, [=](opd::Engine& eng) { return eng.barCmd(sm, so, sn); });
}

opd_status opd_run_square(opd_engine_t *e, const char *name, int k, int m, int n, char **out) {
    if (!name) return OPD_USAGE;
    std::string s = name;
    return run(e, out, [=](opd::Engine& eng) { return eng.squareCmd(s, k, m, n); });
}

opd_status opd_run_koszul(opd_engine_t *e, const char *operad, char **out) {
    if (!operad) return OPD_USAGE;
    std::string s = operad;
    return run(e, out, [=](opd::Engine& eng) { return eng.koszulCmd(s); });
}

opd_status opd_run_e1page(opd_engine_t *e, int n, int max_weight, const char *x_spec, char **out) {
    std::string xs = x_spec ? x_spec : "1@0";
    return run(e, out, [=](opd::Engine& eng) { return eng.e1pageCmd(n, max_weight, xs); });
}

opd_status opd_run_non_pushout(opd_engine_t *e, int max_n, char **out) {
    return run(e, out, [=](opd::Engine& eng) { return eng.nonPushoutCmd(max_n); });
}

opd_status opd_run_pbw(opd_engine_t *e, const char *algebra, int max_weight, char **out) {
    if (!algebra) return OPD_USAGE;
    std::string s = algebra;
    return run(e, out, [=](opd::Engine& eng) { return eng.pbwCmd(s, max_weight); });
}

opd_status opd_run_envelope(opd_engine_t *e, int k, int n, int max_weight, char **out) {
    return run(e, out, [=](opd::Engine& eng) { return eng.envelopeCmd(k, n, max_weight); });
}

opd_status opd_run_selftest(opd_engine_t *e, int criterion, char **out) {
    return run(e, out, [=](opd::Engine& eng) { return eng.selftest(criterion); });
}

}  // extern "C"
