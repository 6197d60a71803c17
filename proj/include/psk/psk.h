/* SPDX-License-Identifier: MIT */
#ifndef PSK_PSK_H
#define PSK_PSK_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define PSK_API __declspec(dllexport)
#else
#define PSK_API __attribute__((visibility("default")))
#endif

typedef enum psk_status {
    PSK_OK = 0,
    PSK_ERR_PARSE = 1,         /* malformed input file or text */
    PSK_ERR_INVALID = 2,       /* well-formed data violating an axiom */
    PSK_ERR_ARG = 3,           /* bad argument (null pointer, unknown name, wrong ring) */
    PSK_ERR_CAP = 4,           /* request exceeds an enumeration cap */
    PSK_ERR_IO = 5,            /* file could not be read or written */
    PSK_ERR_VERIFY_FAILED = 6, /* an identity check found a counterexample */
    PSK_ERR_NOT_COCYCLE = 7,   /* deformation datum is not closed */
    PSK_ERR_INTERNAL = 8
} psk_status;

typedef enum psk_complex {
    PSK_COMPLEX_GS = 0,     /* full GS complex of the prestack */
    PSK_COMPLEX_NR = 1,     /* normalized reduced subcomplex */
    PSK_COMPLEX_GRADED = 2  /* graded Hochschild complex of the Grothendieck construction */
} psk_complex;

typedef enum psk_law {
    PSK_LAW_D2 = 0,       /* d d = 0 on the GS complex */
    PSK_LAW_DELTA2 = 1,   /* delta delta = 0 on the graded complex */
    PSK_LAW_FD = 2,       /* F d = delta F */
    PSK_LAW_GD = 3,       /* G delta = d G */
    PSK_LAW_GF = 4,       /* G F = 1 on normalized reduced cochains */
    PSK_LAW_HOMOTOPY = 5, /* F G - 1 = delta T + T delta */
    PSK_LAW_PATHS = 6,    /* all twist paths on a simplex agree */
    PSK_LAW_SHUFFLES = 7  /* shuffle counts, signs and path splitting */
} psk_law;

typedef struct psk_prestack psk_prestack;
typedef struct psk_matrix psk_matrix;

PSK_API const char* psk_version(void);
PSK_API const char* psk_status_name(psk_status status);
/* Message of the last failing call on this thread; "" after success. */
PSK_API const char* psk_last_error(void);

/* Enumeration cap for paths and shuffles (default 8). */
PSK_API psk_status psk_set_enum_cap(int cap);

PSK_API psk_status psk_prestack_load_file(const char* path, psk_prestack** out);
PSK_API psk_status psk_prestack_load_json(const char* text, psk_prestack** out);
/* Shipped fixture by name over Q. */
PSK_API psk_status psk_prestack_fixture(const char* name, psk_prestack** out);
PSK_API void psk_prestack_free(psk_prestack* p);
PSK_API psk_status psk_prestack_write_file(const psk_prestack* p, const char* path);
/* Writes the ring name ("Q", "F_p", "Q[e]", "F_p[e]") into buf. */
PSK_API psk_status psk_prestack_ring(const psk_prestack* p, char* buf, size_t len);

/* PSK_OK when the data is a prestack; PSK_ERR_INVALID with the first
   violated axiom in psk_last_error otherwise. */
PSK_API psk_status psk_validate(const psk_prestack* p);

/* The remaining queries need a prestack over Q or F_p. */
PSK_API psk_status psk_cochain_dim(const psk_prestack* p, psk_complex c, int degree, long* out);
PSK_API psk_status psk_cohomology_dim(const psk_prestack* p, psk_complex c, int degree, long* out);
/* Matrix of the differential C^degree -> C^(degree+1). */
PSK_API psk_status psk_differential(const psk_prestack* p, psk_complex c, int degree, psk_matrix** out);

PSK_API psk_status psk_matrix_dims(const psk_matrix* m, long* rows, long* cols);
PSK_API psk_status psk_matrix_nnz(const psk_matrix* m, long* nnz);
PSK_API psk_status psk_matrix_rank(const psk_matrix* m, long* rank);
/* Text triplets: "rows cols nnz" then one "i j value" line per entry. */
PSK_API psk_status psk_matrix_write_file(const psk_matrix* m, const char* path);
PSK_API void psk_matrix_free(psk_matrix* m);

/* Checks a law at the given degree on `trials` random cochains drawn from
   `seed`. Returns PSK_ERR_VERIFY_FAILED on a counterexample. A summary is
   written into report when it is non-null. */
PSK_API psk_status psk_verify(const psk_prestack* p, psk_law law, int degree, int trials, uint64_t seed,
                              char* report, size_t report_len);

/* Dimension of the second cohomology of the normalized reduced complex. */
PSK_API psk_status psk_deform_classify(const psk_prestack* p, long* dim);
/* Writes the first-order deformation of the i-th H^2 basis class. */
PSK_API psk_status psk_deform_write_class(const psk_prestack* p, long index, const char* path);
/* Reads a degree-2 cochain file and writes the deformation it defines.
   Returns PSK_ERR_NOT_COCYCLE, listing the nonzero components of its
   differential in psk_last_error, when the cochain is not closed. */
PSK_API psk_status psk_deform_from_cocycle(const psk_prestack* p, const char* cochain_path, const char* path);
/* Writes a GS cochain of the given degree (zero when values is null, else
   the coordinates in layout order) in the cochain text format. */
PSK_API psk_status psk_cochain_write_file(const psk_prestack* p, int degree, const char* const* values, long count,
                                          const char* path);

/* Writes a shipped fixture as a JSON file. */
PSK_API psk_status psk_fixture_write(const char* name, const char* path);
/* Number of shipped fixtures and the name of the i-th one. */
PSK_API int psk_fixture_count(void);
PSK_API const char* psk_fixture_name(int index);

#ifdef __cplusplus
}
#endif

#endif /* PSK_PSK_H */
