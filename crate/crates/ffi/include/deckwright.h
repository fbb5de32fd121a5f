#ifndef DECKWRIGHT_H
#define DECKWRIGHT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a call. Zero is success.
 */
typedef enum {
  DW_STATUS_OK = 0,
  DW_STATUS_NULL_POINTER = 1,
  DW_STATUS_INVALID_UTF8 = 2,
  DW_STATUS_PARSE = 3,
  DW_STATUS_INVALID_ARGUMENT = 4,
  DW_STATUS_GRAPH_TOO_SMALL = 5,
  DW_STATUS_MIXED_COLORING = 6,
  DW_STATUS_ORDER_LIMIT = 7,
  DW_STATUS_INCONSISTENT_DECK = 8,
  DW_STATUS_OUTSIDE_DOMAIN = 9,
  DW_STATUS_NOT_IN_IMAGE = 10,
  DW_STATUS_FORMULA = 11,
  DW_STATUS_IO = 12,
  DW_STATUS_PANIC = 13,
} DwStatus;

/**
 * A multiset of vertex-deleted cards.
 */
typedef struct DwDeck DwDeck;

/**
 * A graph, plain or edge-colored.
 */
typedef struct DwGraph DwGraph;

/**
 * A first-order sentence, compiled for evaluation.
 */
typedef struct DwSentence DwSentence;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL if none.
 * Release with `dw_string_free`.
 */
char *dw_last_error(void);

/**
 * Release a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void dw_string_free(char *s);

/**
 * Library version, statically allocated.
 */
const char *dw_version(void);

/**
 * Parse a graph from graph6 or the colored edge-list format.
 *
 * # Safety
 * `input` must be a NUL-terminated string and `out` writable.
 */
DwStatus dw_graph_parse(const char *input, DwGraph **out);

/**
 * # Safety
 * `g` must come from `dw_graph_parse` and not have been freed. NULL is ignored.
 */
void dw_graph_free(DwGraph *g);

/**
 * Number of vertices, or 0 for NULL.
 *
 * # Safety
 * `g` must be NULL or a live graph handle.
 */
size_t dw_graph_order(const DwGraph *g);

/**
 * Serialize a graph in the format it was parsed from.
 *
 * # Safety
 * `g` must be a live graph handle and `out` writable.
 */
DwStatus dw_graph_to_string(const DwGraph *g, char **out);

/**
 * Compute a polynomial invariant: one of tutte, charpoly, chromatic,
 * interlace, u, ulab, xi, xilab, xg. The result is a JSON array of terms.
 *
 * # Safety
 * `g` must be a live graph handle, `name` a NUL-terminated string and `out` writable.
 */
DwStatus dw_graph_poly(const DwGraph *g, const char *name, char **out);

/**
 * The deck of a graph.
 *
 * # Safety
 * `g` must be a live graph handle and `out` writable.
 */
DwStatus dw_graph_deck(const DwGraph *g, DwDeck **out);

/**
 * Parse a deck file.
 *
 * # Safety
 * `input` must be a NUL-terminated string and `out` writable.
 */
DwStatus dw_deck_parse(const char *input, DwDeck **out);

/**
 * # Safety
 * `d` must come from this library and not have been freed. NULL is ignored.
 */
void dw_deck_free(DwDeck *d);

/**
 * Order of the graph the deck belongs to, or 0 for NULL.
 *
 * # Safety
 * `d` must be NULL or a live deck handle.
 */
size_t dw_deck_order(const DwDeck *d);

/**
 * Serialize a deck in the deck file format.
 *
 * # Safety
 * `d` must be a live deck handle and `out` writable.
 */
DwStatus dw_deck_to_string(const DwDeck *d, char **out);

/**
 * Reconstruct an invariant from the deck alone: one of u, ulab, xi,
 * xilab, interlace, rank, pmparity. The result is a JSON array of terms.
 *
 * # Safety
 * `d` must be a live deck handle, `name` a NUL-terminated string and `out` writable.
 */
DwStatus dw_deck_reconstruct(const DwDeck *d, const char *name, char **out);

/**
 * Reconstruct over every graph of order 3..=max_n and compare with direct
 * computation. `passed` receives whether all agreed; `report`, if not
 * NULL, receives the full JSON report.
 *
 * # Safety
 * `name` must be a NUL-terminated string, `passed` writable, and `report`
 * NULL or writable.
 */
DwStatus dw_verify(const char *name, size_t max_n, bool *passed, char **report);

/**
 * Parse a first-order sentence over the edge relation.
 *
 * # Safety
 * `input` must be a NUL-terminated string and `out` writable.
 */
DwStatus dw_sentence_parse(const char *input, DwSentence **out);

/**
 * # Safety
 * `s` must come from `dw_sentence_parse` and not have been freed. NULL is ignored.
 */
void dw_sentence_free(DwSentence *s);

/**
 * Quantifier rank with degree and distinctness macros expanded.
 *
 * # Safety
 * `s` must be a live sentence handle and `out` writable.
 */
DwStatus dw_sentence_rank(const DwSentence *s, size_t *out);

/**
 * Truth of a sentence in the uncolored graph underlying `g`.
 *
 * # Safety
 * `s` and `g` must be live handles and `out` writable.
 */
DwStatus dw_sentence_eval(const DwSentence *s, const DwGraph *g, bool *out);

/**
 * Whether the two graphs have the same order and the same multiset of
 * radius-`d` ball types.
 *
 * # Safety
 * `a` and `b` must be live graph handles and `out` writable.
 */
DwStatus dw_hanf_equiv(const DwGraph *a, const DwGraph *b, size_t d, bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DECKWRIGHT_H */
