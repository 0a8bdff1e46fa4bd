#ifndef HOMFLOW_H
#define HOMFLOW_H

#include <stddef.h>
#include <stdint.h>

#if defined(HOMFLOW_BUILDING)
#define HOMFLOW_API __attribute__((visibility("default")))
#else
#define HOMFLOW_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum homflow_status {
  HOMFLOW_OK = 0,
  HOMFLOW_CHECK_FAILED = 1, /* ran, but some check did not pass */
  HOMFLOW_INPUT_ERROR = 2,  /* bad file, flag or argument */
  HOMFLOW_INTERNAL = 3
} homflow_status;

typedef struct homflow_algebra homflow_algebra;
typedef struct homflow_report homflow_report;

typedef enum homflow_method { HOMFLOW_RK4 = 0, HOMFLOW_MIDPOINT = 1 } homflow_method;

/* Zero dt / t_end pick per-command defaults. x0 / p0 may be NULL. */
typedef struct homflow_options {
  double dt;
  double t_end;
  int has_seed;
  uint64_t seed;
  int has_alpha;
  double alpha;
  homflow_method method;
  const double* x0;
  size_t x0_len;
  const double* p0;
  size_t p0_len;
} homflow_options;

HOMFLOW_API void homflow_options_init(homflow_options* opts);

/* Message of the last failing call on this thread; empty if none. */
HOMFLOW_API const char* homflow_last_error(void);
HOMFLOW_API const char* homflow_version(void);

/* Names accepted by homflow_algebra_builtin, separated by spaces. */
HOMFLOW_API const char* homflow_builtin_names(void);

HOMFLOW_API homflow_status homflow_algebra_from_file(const char* path, const homflow_options* opts,
                                                     homflow_algebra** out);
HOMFLOW_API homflow_status homflow_algebra_from_text(const char* text, const homflow_options* opts,
                                                     homflow_algebra** out);
HOMFLOW_API homflow_status homflow_algebra_builtin(const char* name, const homflow_options* opts,
                                                   homflow_algebra** out);
HOMFLOW_API void homflow_algebra_free(homflow_algebra* alg);
HOMFLOW_API size_t homflow_algebra_dim(const homflow_algebra* alg);

/* Each command stores its report in *out, also when a check fails
   (HOMFLOW_CHECK_FAILED). On input or internal errors *out is NULL. */
HOMFLOW_API homflow_status homflow_analyze(const homflow_algebra* alg, const homflow_options* opts,
                                           homflow_report** out);
HOMFLOW_API homflow_status homflow_integrate_coalgebra(const homflow_algebra* alg, const homflow_options* opts,
                                                       homflow_report** out);
HOMFLOW_API homflow_status homflow_integrate_geodesic(const homflow_algebra* alg, const homflow_options* opts,
                                                      homflow_report** out);
HOMFLOW_API homflow_status homflow_check_transform(const char* example, const homflow_options* opts,
                                                   homflow_report** out);
HOMFLOW_API homflow_status homflow_reproduce(const char* target, const homflow_options* opts,
                                             homflow_report** out);

HOMFLOW_API const char* homflow_report_text(const homflow_report* r);
HOMFLOW_API const char* homflow_report_kv(const homflow_report* r);
HOMFLOW_API int homflow_report_passed(const homflow_report* r);
HOMFLOW_API size_t homflow_report_csv_count(const homflow_report* r);
HOMFLOW_API const char* homflow_report_csv_name(const homflow_report* r, size_t i);
HOMFLOW_API const char* homflow_report_csv_data(const homflow_report* r, size_t i);
HOMFLOW_API void homflow_report_free(homflow_report* r);

#ifdef __cplusplus
}
#endif

#endif
