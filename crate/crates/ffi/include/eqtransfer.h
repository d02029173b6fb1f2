#ifndef EQTRANSFER_H
#define EQTRANSFER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EtGameKind {
  ET_GAME_KIND_NORMAL_FORM = 0,
  ET_GAME_KIND_TREE = 1,
  ET_GAME_KIND_GRAPH = 2,
  ET_GAME_KIND_ARENA = 3,
} EtGameKind;

typedef enum EtStatus {
  ET_STATUS_OK = 0,
  /**
   * The answer is negative: no equilibrium was found, the structure is
   * not determined, or a corpus claim failed.
   */
  ET_STATUS_NEGATIVE = 1,
  ET_STATUS_INVALID_INPUT = 2,
  ET_STATUS_NULL_ARGUMENT = 3,
  /**
   * The operation does not apply to this kind of document.
   */
  ET_STATUS_UNSUPPORTED = 4,
  ET_STATUS_PANIC = 5,
} EtStatus;

/**
 * A loaded game document.
 */
typedef struct EtGame EtGame;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Version string of the library, static and nul-terminated.
 */
const char *et_version(void);

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next call into the library on this thread.
 */
const char *et_last_error(void);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` is null or a string returned by this library and not yet freed.
 */
void et_string_free(char *s);

/**
 * Parses a game, tree, graph or arena document.
 *
 * # Safety
 * `json` is a nul-terminated string and `out` is valid for a pointer write.
 */
enum EtStatus et_game_from_json(const char *json, struct EtGame **out);

/**
 * Releases a game. Null is ignored.
 *
 * # Safety
 * `game` is null or a handle from [`et_game_from_json`] not yet freed.
 */
void et_game_free(struct EtGame *game);

/**
 * # Safety
 * `game` is a live handle and `out` is valid for a write.
 */
enum EtStatus et_game_kind(const struct EtGame *game, enum EtGameKind *out);

/**
 * Whether every derived win-lose game of a two-player normal-form game or
 * tree has a winner.
 *
 * # Safety
 * `game` is a live handle and `out` is valid for a write.
 */
enum EtStatus et_game_is_determined(const struct EtGame *game, bool *out);

/**
 * Whether `profile` (one strategy index per player; tree strategies in
 * the normal-form numbering) is a Nash equilibrium.
 *
 * # Safety
 * `game` is a live handle, `profile` points to `len` values and `out` is
 * valid for a write.
 */
enum EtStatus et_game_is_nash_equilibrium(const struct EtGame *game,
                                          const size_t *profile,
                                          size_t len,
                                          bool *out);

/**
 * Runs the transfer algorithm with the oracle matching the document: brute
 * force for normal-form games, backward induction for trees, and the
 * parity or Muller solver for graph games. Writes a JSON result.
 *
 * # Safety
 * `game` is a live handle and `out` is valid for a pointer write.
 */
enum EtStatus et_game_transfer(const struct EtGame *game, char **out);

/**
 * Solves the arena of a graph or arena document as a parity game and
 * writes the winner from the start vertex, its positional strategy and the
 * winner of every vertex as JSON.
 *
 * # Safety
 * `game` is a live handle and `out` is valid for a pointer write.
 */
enum EtStatus et_game_solve_parity(const struct EtGame *game, char **out);

/**
 * Verifies the claims of a corpus entry and writes the report as JSON.
 * Returns `Negative` when some claim fails.
 *
 * # Safety
 * `name` is a nul-terminated string and `out` is valid for a pointer write.
 */
enum EtStatus et_corpus_verify(const char *name, uint64_t seed, size_t samples, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EQTRANSFER_H */
