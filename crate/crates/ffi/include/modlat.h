#ifndef MODLAT_H
#define MODLAT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes of every fallible call.
 */
typedef enum ModlatStatus {
  MODLAT_STATUS_OK = 0,
  MODLAT_STATUS_NULL_POINTER = 1,
  MODLAT_STATUS_INVALID_UTF8 = 2,
  MODLAT_STATUS_PARSE_ERROR = 3,
  MODLAT_STATUS_NOT_MODULAR = 4,
  MODLAT_STATUS_INVALID_INPUT = 5,
  MODLAT_STATUS_OVERFLOW = 6,
  MODLAT_STATUS_PANIC = 7,
} ModlatStatus;

/**
 * A finite lattice.
 */
typedef struct ModlatLattice ModlatLattice;

/**
 * A partial linear space.
 */
typedef struct ModlatPls ModlatPls;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * Valid until the next call on the same thread.
 */
const char *modlat_last_error(void);

/**
 * Library version as a static string.
 */
const char *modlat_version(void);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void modlat_string_free(char *s);

/**
 * Lattice from `{"names": [...], "covers": [[lo, hi], ...]}`.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum ModlatStatus modlat_lattice_from_json(const char *json, struct ModlatLattice **out);

/**
 * Subgroup lattice of `Z_{f0} × … × Z_{f(len-1)}`.
 *
 * # Safety
 * `factors` must point to `len` values; `out` must be writable.
 */
enum ModlatStatus modlat_lattice_from_group(const uint64_t *factors,
                                            size_t len,
                                            struct ModlatLattice **out);

/**
 * # Safety
 * `l` must come from this library or be null.
 */
void modlat_lattice_free(struct ModlatLattice *l);

/**
 * # Safety
 * Valid handle and output pointer.
 */
enum ModlatStatus modlat_lattice_size(const struct ModlatLattice *l, size_t *out);

/**
 * # Safety
 * Valid handle and output pointer.
 */
enum ModlatStatus modlat_lattice_is_modular(const struct ModlatLattice *l, bool *out);

/**
 * Lattice JSON of `l`.
 *
 * # Safety
 * Valid handle and output pointer.
 */
enum ModlatStatus modlat_lattice_to_json(const struct ModlatLattice *l, char **out);

/**
 * Hasse diagram in DOT.
 *
 * # Safety
 * Valid handle and output pointer.
 */
enum ModlatStatus modlat_lattice_to_dot(const struct ModlatLattice *l, char **out);

/**
 * Parameter report (`j`, `delta`, `s`, `i`, `o`, `mu`, `r*`, verdicts) as
 * JSON.
 *
 * # Safety
 * Valid handle and output pointer.
 */
enum ModlatStatus modlat_lattice_params_json(const struct ModlatLattice *l, char **out);

/**
 * Canonical base of lines as JSON (`points`, `lines`, `tops`, `bottoms`).
 *
 * # Safety
 * Valid handle and output pointer.
 */
enum ModlatStatus modlat_lattice_bol_json(const struct ModlatLattice *l, char **out);

/**
 * Point-line space of the canonical base of lines.
 *
 * # Safety
 * Valid handle and output pointer.
 */
enum ModlatStatus modlat_lattice_canonical_pls(const struct ModlatLattice *l,
                                               struct ModlatPls **out);

/**
 * Number of closed ideals of the canonical base, which equals the size of
 * a modular lattice.
 *
 * # Safety
 * Valid handle and output pointer.
 */
enum ModlatStatus modlat_lattice_closed_ideal_count(const struct ModlatLattice *l, uint64_t *out);

/**
 * Whether the lattice is rebuilt up to isomorphism from its canonical base.
 *
 * # Safety
 * Valid handle and output pointer.
 */
enum ModlatStatus modlat_lattice_roundtrip(const struct ModlatLattice *l, bool *out);

/**
 * Wildcard rows of the closed ideals of a poset under lines, as row-set
 * JSON. `lines_json` may be null for no lines.
 *
 * # Safety
 * Nul-terminated strings and a writable output pointer.
 */
enum ModlatStatus modlat_enumerate_json(const char *poset_json, const char *lines_json, char **out);

/**
 * Point-line space from `{"points": [...], "lines": [[...], ...]}`.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum ModlatStatus modlat_pls_from_json(const char *json, struct ModlatPls **out);

/**
 * # Safety
 * `p` must come from this library or be null.
 */
void modlat_pls_free(struct ModlatPls *p);

/**
 * # Safety
 * Valid handle and output pointer.
 */
enum ModlatStatus modlat_pls_rstar(const struct ModlatPls *p, size_t *out);

/**
 * # Safety
 * Valid handle and output pointer.
 */
enum ModlatStatus modlat_pls_is_acyclic(const struct ModlatPls *p, bool *out);

/**
 * # Safety
 * Valid handle and output pointer.
 */
enum ModlatStatus modlat_pls_num_components(const struct ModlatPls *p, size_t *out);

/**
 * PLS JSON of `p`.
 *
 * # Safety
 * Valid handle and output pointer.
 */
enum ModlatStatus modlat_pls_to_json(const struct ModlatPls *p, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MODLAT_H */
