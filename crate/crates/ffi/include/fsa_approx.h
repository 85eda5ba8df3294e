#ifndef FSA_APPROX_H
#define FSA_APPROX_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FsaConstraints {
  /**
   * Boundary, adjacency and recursion constraints.
   */
  FSA_CONSTRAINTS_FULL = 0,
  /**
   * Boundary and adjacency constraints only.
   */
  FSA_CONSTRAINTS_ONE_TO_SIX = 1,
} FsaConstraints;

typedef enum FsaStatus {
  FSA_STATUS_OK = 0,
  FSA_STATUS_NULL_POINTER = 1,
  FSA_STATUS_INVALID_UTF8 = 2,
  FSA_STATUS_SYNTAX = 3,
  FSA_STATUS_UNKNOWN_SYMBOL = 4,
  FSA_STATUS_UNKNOWN_NONTERMINAL = 5,
  FSA_STATUS_STATE_CAP_EXCEEDED = 6,
  FSA_STATUS_ALPHABET_MISMATCH = 7,
  FSA_STATUS_OTHER = 8,
} FsaStatus;

/**
 * Opaque automaton handle.
 */
typedef struct FsaAutomaton FsaAutomaton;

/**
 * Opaque grammar handle.
 */
typedef struct FsaGrammar FsaGrammar;

typedef struct FsaApproxOptions {
  enum FsaConstraints constraints;
  /**
   * Comma-separated nonterminals that get recursion constraints; NULL
   * means all.
   */
  const char *full_rule_nonterminals;
  bool use_scc;
  /**
   * Largest intermediate automaton allowed.
   */
  size_t state_cap;
} FsaApproxOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Valid until the
 * next failing call on the same thread.
 */
const char *fsa_last_error_message(void);

/**
 * Default approximation options: all constraints, all nonterminals, no
 * decomposition, the default state cap.
 */
struct FsaApproxOptions fsa_options_default(void);

/**
 * # Safety
 * `text` must be a valid C string and `out` a valid pointer.
 */
enum FsaStatus fsa_grammar_parse(const char *text, struct FsaGrammar **out);

/**
 * Changes the start symbol.
 *
 * # Safety
 * `g` must come from [`fsa_grammar_parse`]; `name` must be a valid C string.
 */
enum FsaStatus fsa_grammar_set_start(struct FsaGrammar *g, const char *name);

/**
 * # Safety
 * `g` must be NULL or come from [`fsa_grammar_parse`], and not be used
 * afterwards.
 */
void fsa_grammar_free(struct FsaGrammar *g);

/**
 * Approximates `g`; `opts` may be NULL for the defaults.
 *
 * # Safety
 * Pointers must be valid; `opts.full_rule_nonterminals` must be NULL or a
 * valid C string.
 */
enum FsaStatus fsa_approximate(const struct FsaGrammar *g,
                               const struct FsaApproxOptions *opts,
                               struct FsaAutomaton **out);

/**
 * Reads an automaton in the tab format.
 *
 * # Safety
 * `text` must be a valid C string and `out` a valid pointer.
 */
enum FsaStatus fsa_automaton_from_tab(const char *text, struct FsaAutomaton **out);

/**
 * Tab rendering of the canonical form, or NULL for a NULL handle.
 *
 * # Safety
 * `m` must be NULL or a live automaton handle.
 */
char *fsa_automaton_to_tab(const struct FsaAutomaton *m);

/**
 * Graphviz rendering, or NULL for a NULL handle.
 *
 * # Safety
 * `m` must be NULL or a live automaton handle.
 */
char *fsa_automaton_to_dot(const struct FsaAutomaton *m);

/**
 * State count of the canonical form; 0 for a NULL handle.
 *
 * # Safety
 * `m` must be NULL or a live automaton handle.
 */
size_t fsa_automaton_num_states(const struct FsaAutomaton *m);

/**
 * Membership of a whitespace-separated token string. Tokens outside the
 * alphabet make the string rejected.
 *
 * # Safety
 * Pointers must be valid.
 */
enum FsaStatus fsa_automaton_accepts(const struct FsaAutomaton *m, const char *text, bool *out);

/**
 * Language equality; the alphabets may differ.
 *
 * # Safety
 * Pointers must be valid.
 */
enum FsaStatus fsa_automaton_equivalent(const struct FsaAutomaton *a,
                                        const struct FsaAutomaton *b,
                                        bool *out);

/**
 * # Safety
 * `m` must be NULL or a live automaton handle, not used afterwards.
 */
void fsa_automaton_free(struct FsaAutomaton *m);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library.
 */
void fsa_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FSA_APPROX_H */
