#ifndef WILLMORE_C_H
#define WILLMORE_C_H

/* C interface to the willmore library.
 *
 * Surfaces and reports are opaque handles owned by the caller and released
 * with the matching *_free function. Every fallible call returns a
 * wm_status; on failure the handle outputs are left untouched and
 * wm_last_error() describes the problem for the calling thread. Strings
 * returned through char** outputs are heap copies released with
 * wm_string_free. */

#include <stdint.h>

#if defined(_WIN32)
#define WM_API __declspec(dllexport)
#else
#define WM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct wm_surface wm_surface;
typedef struct wm_report wm_report;

/* Numeric values match the library's internal error codes. */
typedef enum wm_status {
  WM_OK = 0,
  WM_ERR_DIMENSION_MISMATCH = 1,
  WM_ERR_NULL_DIRECTION = 2,
  WM_ERR_PARAMETER_DOMAIN = 3,
  WM_ERR_NO_NONTRIVIAL_SOLUTION = 4,
  WM_ERR_INCONSISTENT_TARGETS = 5,
  WM_ERR_NOT_CONFORMAL = 6,
  WM_ERR_NONZERO_RESIDUE = 7,
  WM_ERR_POLE_ORDER_MISMATCH = 8,
  WM_ERR_DIVISION_BY_ZERO_JET = 9,
  WM_ERR_NONPOSITIVE_BRANCH = 10,
  WM_ERR_BRANCH_POINT = 11,
  WM_ERR_DEGENERATE_V = 12,
  WM_ERR_NOT_NORMAL = 13,
  WM_ERR_QUADRATURE_NONCONVERGENT = 14,
  WM_ERR_UMBILIC_POINT = 15,
  WM_ERR_GRID_TOO_COARSE = 16,
  WM_ERR_NOT_IMMERSED = 17,
  WM_ERR_SPAN_DEFICIT = 18,
  WM_ERR_RANK_DROP = 19,
  WM_ERR_TOTALLY_ISOTROPIC_INPUT = 20,
  WM_ERR_SINGULAR_SET_HIT = 21,
  WM_ERR_RANK_COLLAPSE = 22,
  WM_ERR_NOT_TOTALLY_ISOTROPIC = 23,
  WM_ERR_DEGENERATE_INPUT = 24,
  WM_ERR_PARSE = 25,
  WM_ERR_SCHEMA = 26,
  WM_ERR_IO = 27,
  WM_ERR_INVALID_ARGUMENT = 28,
  WM_ERR_INTERNAL = 99 /* unexpected exception, e.g. out of memory */
} wm_status;

typedef enum wm_adjoint_mode { WM_ADJOINT_DUAL = 0, WM_ADJOINT_RICCATI = 1 } wm_adjoint_mode;
typedef enum wm_chart { WM_CHART_NORTH = 0, WM_CHART_SOUTH = 1 } wm_chart;

typedef struct wm_surface_info {
  int k; /* -1 when not generated or totally isotropic */
  int m;
  int ambient_dim;
  int n; /* 0 for a general pole structure */
} wm_surface_info;

typedef struct wm_export_info {
  int rows;
  int masked_nodes;
  int masked_poles;
} wm_export_info;

WM_API const char* wm_last_error(void);
WM_API const char* wm_status_name(wm_status status);
WM_API void wm_string_free(char* s);

/* Surfaces */
WM_API wm_status wm_generate(int k, int m, uint64_t seed, wm_surface** out);
WM_API wm_status wm_surface_parse(const char* json, wm_surface** out);
WM_API wm_status wm_surface_load(const char* path, wm_surface** out);
WM_API wm_status wm_surface_json(const wm_surface* s, char** out);
/* Writes through a temporary file and a rename. */
WM_API wm_status wm_surface_save(const wm_surface* s, const char* path);
WM_API wm_status wm_surface_get_info(const wm_surface* s, wm_surface_info* out);
WM_API void wm_surface_free(wm_surface* s);

/* Check suites. Failing checks are not errors: they produce a report whose
 * wm_report_passed() is 0. */
WM_API wm_status wm_verify(const wm_surface* s, wm_report** out);
WM_API wm_status wm_invariants(const wm_surface* s, int samples, int energy, wm_report** out);
WM_API wm_status wm_adjoint(const wm_surface* s, wm_adjoint_mode mode, double g_re, double g_im, wm_report** out);
WM_API wm_status wm_harmonic(const wm_surface* s, int max_steps, wm_report** out);
WM_API wm_status wm_twistor(const wm_surface* s, wm_report** out);

/* CSV point cloud on a grid x grid chart box; info may be NULL. */
WM_API wm_status wm_export_csv(const wm_surface* s, const char* path, wm_chart chart, int grid, wm_export_info* info);

/* Reports */
WM_API int wm_report_passed(const wm_report* r);
WM_API wm_status wm_report_json(const wm_report* r, int include_timing, char** out);
WM_API wm_status wm_report_save(const wm_report* r, const char* path, int include_timing);
WM_API wm_status wm_report_summary(const wm_report* r, char** out);
WM_API void wm_report_free(wm_report* r);

#ifdef __cplusplus
}
#endif

#endif /* WILLMORE_C_H */
