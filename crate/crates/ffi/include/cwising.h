/* C interface of the cwising library. Generated by cbindgen; do not edit. */

#ifndef CWISING_H
#define CWISING_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Engine variant selector.
typedef enum CwisingEngine {
  CWISING_ENGINE_AGGREGATED = 0,
  CWISING_ENGINE_REFERENCE = 1,
} CwisingEngine;

// Polynomial specialization selector.
typedef enum CwisingPreset {
  CWISING_PRESET_ISING = 0,
  CWISING_PRESET_INDEPENDENCE_ISING = 1,
  CWISING_PRESET_DOMINATING_ISING = 2,
  CWISING_PRESET_INDEPENDENCE = 3,
  CWISING_PRESET_DOMINATION = 4,
} CwisingPreset;

// Result code of every fallible call.
typedef enum CwisingStatus {
  CWISING_STATUS_OK = 0,
  // A required pointer argument was NULL.
  CWISING_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  CWISING_STATUS_INVALID_UTF8 = 2,
  // Input failed to parse or validate.
  CWISING_STATUS_PARSE = 3,
  // The aggregated engine rejected a term with redundant edge creations.
  CWISING_STATUS_REDUNDANT_EDGE_ADD = 4,
  // The wall-clock budget was exhausted.
  CWISING_STATUS_BUDGET_EXCEEDED = 5,
  // The instance exceeds the brute-force size bound.
  CWISING_STATUS_TOO_LARGE = 6,
} CwisingStatus;

// A labeled simple graph (opaque).
typedef struct CwisingGraph CwisingGraph;

// A sparse integer polynomial (opaque).
typedef struct CwisingPoly CwisingPoly;

// A clique-width expression term (opaque).
typedef struct CwisingTerm CwisingTerm;

// Validation summary of a term (see `cwising_term_validate`).
typedef struct CwisingValidation {
  uint32_t width;
  bool irredundant;
  uint64_t vertex_count;
  uint64_t edge_count;
  uint64_t redundant_sites;
} CwisingValidation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Returns the error message of the most recent failing call on this
// thread, or NULL if there is none. Free with `cwising_string_free`.
char *cwising_last_error(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must have been returned by a cwising function and not freed before.
void cwising_string_free(char *s);

// Parses the graph text format (`n m` header, `u v` edge lines, optional
// `labels ...` trailer) into a new graph handle.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be a valid pointer.
enum CwisingStatus cwising_graph_parse(const char *text, struct CwisingGraph **out);

// # Safety
// `g` must be a live graph handle or NULL.
void cwising_graph_free(struct CwisingGraph *g);

// Number of vertices; 0 for NULL.
//
// # Safety
// `g` must be a live graph handle or NULL.
uint64_t cwising_graph_vertex_count(const struct CwisingGraph *g);

// Number of edges; 0 for NULL.
//
// # Safety
// `g` must be a live graph handle or NULL.
uint64_t cwising_graph_edge_count(const struct CwisingGraph *g);

// Parses a term from its text form (`v(id,label)`, `U(s,t)`, `r(p->q,t)`,
// `e(p,q,t)`, `#` comments).
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be a valid pointer.
enum CwisingStatus cwising_term_parse(const char *text, struct CwisingTerm **out);

// Builds a family term from the mini-syntax `clique:N`, `biclique:A,B`,
// `path:N`, `cycle:N`, `cograph:TREE`.
//
// # Safety
// `spec` must be a NUL-terminated string; `out` must be a valid pointer.
enum CwisingStatus cwising_term_build_family(const char *spec, struct CwisingTerm **out);

// Builds the width-n fallback term of a graph (one label per vertex, one
// edge creation per edge).
//
// # Safety
// `g` must be a live graph handle; `out` must be a valid pointer.
enum CwisingStatus cwising_term_fallback(const struct CwisingGraph *g, struct CwisingTerm **out);

// Renders a term in the canonical text form accepted by
// `cwising_term_parse`.
//
// # Safety
// `t` must be a live term handle; `out` must be a valid pointer.
enum CwisingStatus cwising_term_render(const struct CwisingTerm *t, char **out);

// Replays a term and fills `out` with width, counts, and the number of
// redundant edge-creation sites.
//
// # Safety
// `t` must be a live term handle; `out` must be a valid pointer.
enum CwisingStatus cwising_term_validate(const struct CwisingTerm *t,
                                         struct CwisingValidation *out);

// # Safety
// `t` must be a live term handle or NULL.
void cwising_term_free(struct CwisingTerm *t);

// Runs the dynamic program on a term and applies the preset
// specialization. `budget_secs` of 0 means no time limit.
//
// # Safety
// `t` must be a live term handle; `out` must be a valid pointer.
enum CwisingStatus cwising_compute(const struct CwisingTerm *t,
                                   enum CwisingPreset preset,
                                   enum CwisingEngine engine,
                                   uint64_t budget_secs,
                                   struct CwisingPoly **out);

// Brute-force subset enumeration with the preset specialization applied;
// fails with `TooLarge` beyond `max_n` vertices.
//
// # Safety
// `g` must be a live graph handle; `out` must be a valid pointer.
enum CwisingStatus cwising_oracle(const struct CwisingGraph *g,
                                  enum CwisingPreset preset,
                                  uint32_t max_n,
                                  struct CwisingPoly **out);

// Serializes a polynomial in the canonical JSON form
// `{"vars":[...],"terms":[{"exp":[...],"coeff":"..."}]}`.
//
// # Safety
// `p` must be a live polynomial handle; `out` must be a valid pointer.
enum CwisingStatus cwising_poly_to_json(const struct CwisingPoly *p, char **out);

// Human-readable form, e.g. `1 + 2*x*y + x^2*z`.
//
// # Safety
// `p` must be a live polynomial handle; `out` must be a valid pointer.
enum CwisingStatus cwising_poly_to_text(const struct CwisingPoly *p, char **out);

// Parses the canonical JSON form into a new polynomial handle.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be a valid pointer.
enum CwisingStatus cwising_poly_parse_json(const char *text, struct CwisingPoly **out);

// Exact structural equality (same variables, terms, coefficients).
// NULL handles compare unequal.
//
// # Safety
// `a` and `b` must each be a live polynomial handle or NULL.
bool cwising_poly_eq(const struct CwisingPoly *a, const struct CwisingPoly *b);

// Largest exponent of the named variable; 0 when the variable is unknown
// or the polynomial is constant (check `cwising_last_error` to tell the
// two apart).
//
// # Safety
// `p` must be a live polynomial handle; `var` a NUL-terminated string.
uint64_t cwising_poly_max_degree(const struct CwisingPoly *p, const char *var);

// # Safety
// `p` must be a live polynomial handle or NULL.
void cwising_poly_free(struct CwisingPoly *p);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* CWISING_H */
