/*
 * C interface to the d'Alembert-sum solver for a bar with viscous dampers at
 * both ends and at one internal point.
 *
 * All objects are opaque handles created by dal_*_create and released by the
 * matching dal_*_destroy. Every fallible call returns a dal_status; on failure
 * dal_last_error_message() describes the problem (per thread).
 */
#ifndef DALEMBERT_DALEMBERT_H
#define DALEMBERT_DALEMBERT_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(DALEMBERT_BUILDING_LIBRARY)
#    define DAL_API __declspec(dllexport)
#  else
#    define DAL_API __declspec(dllimport)
#  endif
#else
#  define DAL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dal_status
{
  DAL_OK = 0,
  DAL_INVALID_ARGUMENT = 1,
  DAL_CRITICAL_PARAMETER = 2,  /* some 1 + h_i vanishes */
  DAL_BAD_GEOMETRY = 3,
  DAL_REGION_MISMATCH = 4,
  DAL_POSITIVE_EXPONENT = 5,
  DAL_WAVEFRONT_SAMPLE = 6,
  DAL_WAVEFRONT_PROXIMITY = 7,
  DAL_QUADRATURE_FAILURE = 8,
  DAL_NO_CONVERGENCE = 9,
  DAL_UNSTABLE = 10,
  DAL_OUT_OF_HORIZON = 11,
  DAL_BUFFER_TOO_SMALL = 12,
  DAL_INTERNAL_ERROR = 13
} dal_status;

DAL_API const char *dal_version(void);
DAL_API const char *dal_status_name(dal_status status);
DAL_API const char *dal_last_error_message(void);

/* ---- bar ---------------------------------------------------------------- */

typedef struct dal_bar_params
{
  double length;          /* L [m] */
  double wave_speed;      /* c [m/s] */
  double damper_position; /* a [m], read only if has_damper_position */
  int has_damper_position;
  double h1, h2, h3;      /* dimensionless damper strengths */
  double rho_a;           /* mass per unit length [kg/m]; 0 selects 1 */
} dal_bar_params;

typedef struct dal_bar dal_bar;

DAL_API dal_status dal_bar_create(const dal_bar_params *params, dal_bar **out);
DAL_API void dal_bar_destroy(dal_bar *bar);

/* (1 - h) / (1 + h). */
DAL_API double dal_reflection_coefficient(double h);

/*
 * Normalised denominator 1 + sum_k b_k exp(-alpha_k s). Writes up to capacity
 * entries and the true count; DAL_BUFFER_TOO_SMALL if capacity < count.
 */
DAL_API dal_status dal_bar_denominator(const dal_bar *bar, double *b, double *alpha,
                                       size_t capacity, size_t *count);

/* ---- Green's function ---------------------------------------------------- */

typedef enum dal_engine_path
{
  DAL_PATH_GENERAL = 0,
  DAL_PATH_NO_INTERNAL_DAMPER = 1, /* requires h3 = 0 */
  DAL_PATH_RIGHT_TRANSPARENT = 2   /* requires h2 = 1, h3 != 0 */
} dal_engine_path;

/* Passed as max_order to sum every order the wavefronts allow. */
#define DAL_ALL_ORDERS (-1)

typedef struct dal_greens dal_greens;

/* Gamma(x, xi, t) for 0 <= t <= horizon. */
DAL_API dal_status dal_greens_create(const dal_bar *bar, double horizon, dal_engine_path path,
                                     dal_greens **out);
DAL_API void dal_greens_destroy(dal_greens *greens);

DAL_API dal_status dal_greens_eval(const dal_greens *greens, double x, double xi, double t,
                                   int max_order, double *out);

/* Number of series orders 0..N contributing at t, and N itself. */
DAL_API dal_status dal_greens_orders(const dal_greens *greens, double t, int *orders_used,
                                     int *max_order);

/* Number of individual series terms active at t. */
DAL_API dal_status dal_greens_series_count(const dal_greens *greens, double t, size_t *count);

/* Times in [0, t] where Gamma(x, xi, .) jumps, with the jump sizes. */
DAL_API dal_status dal_greens_step_times(const dal_greens *greens, double x, double xi, double t,
                                         double *times, double *jumps, size_t capacity,
                                         size_t *count);

/* ---- initial value problem ----------------------------------------------- */

typedef double (*dal_profile_fn)(double x, void *user);
typedef double (*dal_field_fn)(double x, double t, void *user);

typedef enum dal_forcing_kind
{
  DAL_FORCING_NONE = 0,
  DAL_FORCING_POINT_HARMONIC = 1, /* p = (F0 / rhoA) cos(omega t) delta(x - x_F) */
  DAL_FORCING_FIELD = 2           /* p(x, t), force per unit mass */
} dal_forcing_kind;

typedef struct dal_problem
{
  dal_profile_fn u0; /* NULL for zero displacement; must be continuous */
  void *u0_user;
  dal_profile_fn v0; /* NULL for zero velocity */
  void *v0_user;
  dal_forcing_kind forcing;
  double force_position;  /* x_F [m] */
  double force_amplitude; /* F0 [N] */
  double force_omega;     /* [rad/s] */
  dal_field_fn field;
  void *field_user;
} dal_problem;

/* amplitude * exp(-((x - center) / width)^2); usable as a dal_profile_fn. */
typedef struct dal_gaussian
{
  double center, width, amplitude;
} dal_gaussian;

DAL_API double dal_gaussian_eval(double x, void *gaussian);

/* x_i = L i / (nx - 1), t_j = t_max j / (nt - 1). */
typedef struct dal_grid
{
  int nx, nt;
  double t_max;
} dal_grid;

typedef struct dal_response dal_response;

/* The problem's callbacks and user pointers must outlive the handle. */
DAL_API dal_status dal_response_create(const dal_bar *bar, const dal_problem *problem,
                                       double horizon, dal_response **out);
DAL_API void dal_response_destroy(dal_response *response);

DAL_API dal_status dal_response_eval(const dal_response *response, double x, double t,
                                     int max_order, double *u);

/* u receives nt * nx values, time-major; orders_used (nt values) may be NULL. */
DAL_API dal_status dal_response_field(const dal_response *response, const dal_grid *grid,
                                      int max_order, double *u, int *orders_used);

/* Energy and predicted flux of an unforced problem at time t. */
DAL_API dal_status dal_response_energy(const dal_response *response, double t, double *energy,
                                       double *flux);

/* ---- oracles ------------------------------------------------------------- */

/*
 * Finite-element solution on the grid (nt * nx values, time-major). dt <= 0
 * selects half the element transit time. energy (nt values) may be NULL.
 */
DAL_API dal_status dal_fem_solve(const dal_bar *bar, const dal_problem *problem,
                                 const dal_grid *grid, int elements, double dt, double *u,
                                 double *energy);

/*
 * Gamma(x, xi, t) by numerical inversion of its Laplace transform, t > 0.
 * terms is the series length per L/c of elapsed time; 0 selects the default.
 */
DAL_API dal_status dal_laplace_greens(const dal_bar *bar, double x, double xi, double t, int terms,
                                      double *out);

#ifdef __cplusplus
}
#endif

#endif /* DALEMBERT_DALEMBERT_H */
