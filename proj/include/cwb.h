/* C API of the cwb workbench: opaque handles, integer status codes, and
 * malloc'd strings released through cwb_string_free. All functions are
 * thread-safe on distinct handles; the last error message is thread-local. */
#ifndef CWB_H
#define CWB_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cwb_status {
  CWB_OK = 0,
  CWB_E_ARITY = 1,
  CWB_E_PARSE = 2,
  CWB_E_UNSUPPORTED = 3,
  CWB_E_NOT_FOUND = 4,
  CWB_E_EXACT_TOO_LARGE = 5,
  CWB_E_DOMAIN = 6,
  CWB_E_UNSATISFIABLE = 7,
  CWB_E_CAP_EXCEEDED = 8,
  CWB_E_NUMERICAL = 9,
  CWB_E_IO = 10,
  CWB_E_INTERNAL = 11,
  CWB_E_INVALID_ARGUMENT = 12
} cwb_status;

typedef struct cwb_group cwb_group;
typedef struct cwb_graph cwb_graph;

const char* cwb_version(void);
/* message for the last failing call on this thread, or an empty string */
const char* cwb_last_error(void);
void cwb_string_free(char* s);

/* groups (grammar: sym:m=.., cycle:n=.., psl2:p=.., sl:m=..,ring=..,gens=..,
 * esl:m=..,ring=..,gens=hadad, limit:sym, limit:gl-shift,..., limit:ut-shift,...) */
cwb_status cwb_group_new(const char* spec, cwb_group** out);
void cwb_group_free(cwb_group* g);
int cwb_group_arity(const cwb_group* g);
/* word text form: `e` or `.`-joined letters s<i> / S<i> */
cwb_status cwb_group_word_is_identity(const cwb_group* g, const char* word, int* out);
/* canonical element key of the word's value, hex-encoded */
cwb_status cwb_group_element_key_hex(const cwb_group* g, const char* word, char** out);
/* order of the 1-based generator; at_least=1 when only the cap was reached */
cwb_status cwb_group_generator_order(const cwb_group* g, int index, uint64_t cap,
                                     uint64_t* order, int* at_least);

/* Cayley-topology coordinates */
cwb_status cwb_ball_kernel_json(const cwb_group* g, int radius, char** json_out);
/* witness_out receives the first disagreeing word or NULL; may be NULL */
cwb_status cwb_agreement_radius(const cwb_group* g1, const cwb_group* g2, int rmax,
                                int* radius, char** witness_out);

/* graphs */
cwb_status cwb_graph_build(const cwb_group* g, uint64_t vertex_cap, cwb_graph** out);
void cwb_graph_free(cwb_graph* g);
uint64_t cwb_graph_vertex_count(const cwb_graph* g);
int cwb_graph_degree(const cwb_graph* g);
int64_t cwb_graph_diameter(const cwb_graph* g);
/* format: "edges", "dot" or "json" */
cwb_status cwb_graph_export(const cwb_graph* g, const char* format, char** out);

/* spectral gap of the graph Laplacian plus the displacement interval */
cwb_status cwb_graph_lambda1(const cwb_graph* g, double tol, double* lambda1,
                             double* residual, char** method_out);

/* Folner profile as CSV: R,value_num,value_den,exact,witness_size */
cwb_status cwb_folner_profile_csv(const cwb_group* g, int rmax, uint64_t exact_threshold,
                                  char** csv_out);

/* diam * sqrt(lambda1 / (2 degree)) */
cwb_status cwb_jv_lower_bound(int64_t diam, double lambda1, int degree, double* out);

/* the full command surface; argv excludes the program name. Returns the exit
 * code (0 ok, 2 validation, 3 cap/numerical); *report_out gets the JSON report
 * or error object (empty when --out redirected it). */
int cwb_run(int argc, const char* const* argv, char** report_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CWB_H */
