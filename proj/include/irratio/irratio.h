/* irratio: exact-arithmetic construction and verification of witness
 * hypersurfaces with degenerate quadric fibrations.
 *
 * The library is exposed as a C API: opaque handles, integer status
 * codes, and caller-freed strings.  Every function returns IRR_OK on
 * success; on any other status the handle/out parameters are left
 * untouched and irr_last_error() describes what went wrong (the message
 * is thread-local and valid until the next failing call on that thread).
 */
#ifndef IRRATIO_H
#define IRRATIO_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum irr_status {
  IRR_OK = 0,
  IRR_ERR_USAGE = 1,    /* a documented precondition was violated */
  IRR_ERR_FAIL = 2,     /* verification ran and a named check failed */
  IRR_ERR_TAMPERED = 3, /* certificate structure or records inconsistent */
  IRR_ERR_IO = 4,       /* file could not be read or written */
  IRR_ERR_PARSE = 5,    /* input could not be decoded */
  IRR_ERR_INTERNAL = 6  /* invariant breakage inside the library */
} irr_status;

typedef struct irr_certificate irr_certificate;

typedef struct irr_params {
  int n;                     /* base projective space P^n, 2..16 */
  long long r;               /* fiber count, 1..2^n-2 */
  int d;                     /* witness degree, >= n+2 */
  const char* construction;  /* "hypersurface" | "double-cover" | "conic" */
  const char* base;          /* "parametric" | "finite-field" | "integral" */
  unsigned long long base_param; /* finite-field prime / integral prime; 0 otherwise */
  unsigned long long seed;       /* sampling oracle stream */
  int samples;                   /* oracle sample count, >= 1 */
  unsigned long long oracle_p;   /* sampling prime (ignored for finite-field) */
} irr_params;

/* Fill with the defaults: n=2 r=1 d=4, hypersurface over the parametric
 * base, seed 424242, 200 samples at p=10007. */
void irr_params_init(irr_params* params);

/* Construct the witness, run the full check battery, and hand back the
 * certificate.  Succeeds (IRR_OK) even if a check failed; ask
 * irr_witness_pass for the verdict. */
irr_status irr_witness_build(const irr_params* params, irr_certificate** out);

/* 1 if every recorded check passed, else 0. */
irr_status irr_witness_pass(const irr_certificate* cert, int* pass);

/* Serialize to the stable JSON format (atomic: temp file + rename). */
irr_status irr_witness_write(const irr_certificate* cert, const char* path);

/* Load a certificate file.  Decoding failures are IRR_ERR_PARSE. */
irr_status irr_witness_read(const char* path, irr_certificate** out);

/* Re-derive everything from the certificate's polynomial data.  Returns
 * IRR_OK when all checks pass and the stored records match, IRR_ERR_FAIL
 * when a named check fails, IRR_ERR_TAMPERED when the structure or the
 * stored records are inconsistent with recomputation.  *report (optional,
 * may be NULL) receives a human-readable account either way. */
irr_status irr_witness_verify(const irr_certificate* cert, char** report);

/* Short human-readable summary of parameters, checks and verdict. */
irr_status irr_witness_summary(const irr_certificate* cert, char** text);

void irr_witness_free(irr_certificate* cert);

/* Dimension bookkeeping: N = n + r with 1 <= r <= 2^n - 2, minimal
 * witness degree n + 2.  N >= 3. */
irr_status irr_decompose_dimension(long long N, int* n, long long* r);
irr_status irr_min_degree(long long N, int* degree);

/* Aligned table of (n, dim_max, deg_min) blocks covering 3..max_dim,
 * followed by one machine-readable "row ..." line per block. */
irr_status irr_bounds_table(long long max_dim, char** text);

/* bound = ceil(log2 N) + 2; tight = 1 when the minimal degree meets it. */
irr_status irr_log_bound(long long N, int* bound, int* tight);

/* Residue-chain transcript certifying the distinguished n-symbol nonzero;
 * nonzero receives 1 on a NONZERO verdict.  n >= 1. */
irr_status irr_residue_chain(int n, char** transcript, int* nonzero);

/* Exhaustive isotropy scan of a diagonal form over F_p.  Odd prime
 * p <= 101, 1 <= rank <= 6, coefficients nonzero mod p. */
irr_status irr_ff_isotropic(unsigned long long p, const unsigned long long* coeffs,
                            size_t rank, int* isotropic);

/* Rank + discriminant-class test for equivalence of diagonal forms over
 * F_p (same constraints on p; coefficients nonzero mod p). */
irr_status irr_ff_equivalent(unsigned long long p, const unsigned long long* a,
                             size_t rank_a, const unsigned long long* b,
                             size_t rank_b, int* equivalent);

/* Message for the most recent failing call on this thread ("" if none). */
const char* irr_last_error(void);

/* Free any char* handed out by this library. */
void irr_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* IRRATIO_H */
