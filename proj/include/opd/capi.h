#ifndef OPD_CAPI_H
#define OPD_CAPI_H

/* C interface of the operad engine shared library.
 *
 * Usage pattern:
 *   opd_engine_t *e = opd_engine_new("{\"maxArity\":5}");
 *   char *report = NULL;
 *   opd_status rc = opd_run_square(e, "main-PBW", -1, -1, -1, &report);
 *   ... consume report ...
 *   opd_buffer_free(report);
 *   opd_engine_free(e);
 *
 * Every run function writes a heap-allocated report (canonical JSON or an
 * aligned text table, per the configured format) into *out; the caller
 * releases it with opd_buffer_free. Unused integer parameters are -1.
 */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct opd_engine_t opd_engine_t;

typedef enum opd_status {
    OPD_OK = 0,       /* computation ran, all checks matched */
    OPD_MISMATCH = 1, /* computation ran, some comparison failed */
    OPD_USAGE = 2,    /* bad names, parameters, or configuration */
    OPD_INTERNAL = 3  /* unexpected internal failure */
} opd_status;

/* config_json: RunConfig as JSON ({"maxArity":5,"field":"rational",
 * "cacheDir":"","format":"json","parallelism":0,"seed":20240101}); empty or
 * NULL uses the defaults. Returns NULL on invalid configuration. */
opd_engine_t *opd_engine_new(const char *config_json);
void opd_engine_free(opd_engine_t *engine);

/* Message of the last failing call on this engine (valid until the next
 * call on the same engine). */
const char *opd_engine_last_error(const opd_engine_t *engine);

int opd_api_version(void);
void opd_buffer_free(char *buffer);

opd_status opd_run_tables(opd_engine_t *engine, char **out);
opd_status opd_run_compose(opd_engine_t *engine, const char *a, const char *b, char **out);
opd_status opd_run_bar(opd_engine_t *engine, const char *m, const char *o, const char *n,
                       char **out);
opd_status opd_run_square(opd_engine_t *engine, const char *name, int k, int m, int n, char **out);
opd_status opd_run_koszul(opd_engine_t *engine, const char *operad, char **out);
opd_status opd_run_e1page(opd_engine_t *engine, int n, int max_weight, const char *x_spec,
                          char **out);
opd_status opd_run_non_pushout(opd_engine_t *engine, int max_n, char **out);
opd_status opd_run_pbw(opd_engine_t *engine, const char *algebra, int max_weight, char **out);
opd_status opd_run_envelope(opd_engine_t *engine, int k, int n, int max_weight, char **out);
/* criterion 0 runs the full acceptance suite. */
opd_status opd_run_selftest(opd_engine_t *engine, int criterion, char **out);

#ifdef __cplusplus
}
#endif

#endif /* OPD_CAPI_H */
