#ifndef HYPERRE_H
#define HYPERRE_H

/* C interface to the hyperre library. All functions return an hre_status;
 * on failure hre_last_error() describes the most recent error on the calling
 * thread. Handles are opaque and owned by the caller once created. */

#include <stddef.h>

#if defined(HRE_BUILDING_LIBRARY)
#define HRE_API __attribute__((visibility("default")))
#else
#define HRE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hre_status {
  HRE_OK = 0,
  HRE_INVALID_ARGUMENT = 1,
  HRE_DOMAIN = 2,
  HRE_COLLISION = 3,
  HRE_NO_SOLUTION = 4,
  HRE_NONPOSITIVE_OMEGA_SQ = 5,
  HRE_BREAKDOWN = 6,
  HRE_INTERNAL = 99
} hre_status;

typedef enum hre_model { HRE_MODEL_L2 = 0, HRE_MODEL_H2 = 1 } hre_model;

typedef enum hre_coefficients { HRE_COEFF_DYNAMICS = 0, HRE_COEFF_PRINTED = 1 } hre_coefficients;

typedef struct hre_system hre_system;
typedef struct hre_trajectory hre_trajectory;
typedef struct hre_ngon_scan hre_ngon_scan;
typedef struct hre_region_map hre_region_map;

HRE_API const char* hre_last_error(void);
HRE_API const char* hre_status_name(hre_status s);
HRE_API const char* hre_version(void);

/* Polynomial on the boundary line. */
HRE_API double hre_pbar(double x);
HRE_API hre_status hre_pbar_root(double* x0, double* alpha1);
HRE_API hre_status hre_boundary_f2(double alpha, hre_coefficients coeffs, double* limit, double* closed_form);

/* Collinear five-body family. */
HRE_API hre_status hre_f_coeffs(double alpha, double beta, hre_coefficients coeffs, double f[3]);
HRE_API hre_status hre_omega_sq(double alpha, double beta, double m, double big_m, double mu, hre_coefficients coeffs,
                                double* omega1_sq, double* omega2_sq);

typedef struct hre_collinear_solution {
  double alpha, beta;
  double m, big_m, mu;
  double omega_sq;
  double f1, f2, f3;
  hre_coefficients coeffs;
} hre_collinear_solution;

/* Fixes M = big_m and mu, solves for m. Returns HRE_NO_SOLUTION when f2 >= 0
 * or no positive m exists, HRE_NONPOSITIVE_OMEGA_SQ when omega^2 <= 0. `out`
 * is filled as far as the computation got in every case but
 * HRE_INVALID_ARGUMENT. `reason` (optional) receives a short tag. */
HRE_API hre_status hre_collinear_solve(double alpha, double beta, double big_m, double mu, hre_coefficients coeffs,
                                       hre_collinear_solution* out, const char** reason);

/* Per-body residuals (5 entries) of the homothetic orbit at the given times,
 * plus the pairwise distance and energy drift of an RK4 run over [0, t_end]. */
HRE_API hre_status hre_collinear_verify(const hre_collinear_solution* sol, const double* times, size_t n_times,
                                        double t_end, double h, double residuals[5], double* distance_drift,
                                        double* energy_drift);

/* Writes the 5 initial positions (re, im pairs) and masses. */
HRE_API hre_status hre_collinear_initial(const hre_collinear_solution* sol, double positions[10], double masses[5]);

/* Regular n-gons. */
HRE_API hre_status hre_ngon_zsum(int n, double r, double omega, double t, double* sum, double* terms, double* bounds,
                                 size_t capacity);
/* Body-1 z-component of the equation-of-motion defect on the boost orbit. */
HRE_API hre_status hre_ngon_z_residual(int n, double r, double omega, double t, double* residual);
HRE_API hre_status hre_elliptic_ngon_omega(int n, double mass, double r, double* omega_sq);
/* Max-norm residual of the rotating n-gon at the given times. */
HRE_API hre_status hre_elliptic_ngon_residual(int n, double mass, double r, double omega, const double* times,
                                              size_t n_times, double* residual);

typedef struct hre_scan_cell {
  int n;
  double r, omega, t, sum, worst_term_gap;
} hre_scan_cell;

HRE_API hre_status hre_ngon_scan_run(int n_min, int n_max, const double* r, size_t n_r, const double* omega,
                                     size_t n_omega, const double* omega_t, size_t n_omega_t, double mass,
                                     hre_ngon_scan** out);
HRE_API void hre_ngon_scan_free(hre_ngon_scan* scan);
HRE_API size_t hre_ngon_scan_size(const hre_ngon_scan* scan);
HRE_API hre_status hre_ngon_scan_cell(const hre_ngon_scan* scan, size_t index, hre_scan_cell* cell);
HRE_API hre_status hre_ngon_scan_summary(const hre_ngon_scan* scan, double* max_sum, double* min_margin,
                                         double* max_term_gap, int* certified);

typedef struct hre_region_cell {
  double alpha, beta;
  double f1, f2, f3;
  double m, omega_sq;
  /* 0 ok, 1 f2 >= 0, 2 m <= 0, 3 omega_sq <= 0 */
  int status;
} hre_region_cell;

HRE_API hre_status hre_region_map_run(size_t alpha_steps, size_t beta_steps, hre_coefficients coeffs,
                                      hre_region_map** out);
HRE_API void hre_region_map_free(hre_region_map* map);
HRE_API size_t hre_region_map_size(const hre_region_map* map);
HRE_API hre_status hre_region_map_cell(const hre_region_map* map, size_t index, hre_region_cell* cell);
HRE_API hre_status hre_region_map_counts(const hre_region_map* map, size_t* f2_negative, size_t* f2_positive,
                                         size_t* solved);

/* Systems of bodies. L2 positions and velocities are 3-vectors per body, H2
 * ones 2-vectors (re, im). */
HRE_API hre_status hre_system_create(hre_model model, size_t n_bodies, const double* masses, const double* positions,
                                     const double* velocities, hre_system** out);
HRE_API void hre_system_free(hre_system* sys);
HRE_API size_t hre_system_size(const hre_system* sys);
HRE_API hre_model hre_system_model(const hre_system* sys);
HRE_API hre_status hre_system_energy(const hre_system* sys, double* energy);
/* Writes accelerations in the system's own model (3 or 2 doubles per body). */
HRE_API hre_status hre_system_accelerations(const hre_system* sys, double* out, size_t capacity);
/* L_xy, L_xz, L_yz. */
HRE_API hre_status hre_system_first_integrals(const hre_system* sys, double out[3]);

typedef struct hre_diagnostics {
  double energy_drift;
  double constraint_drift;
  double lxy_drift, lxz_drift, lyz_drift;
  double repair_max;
} hre_diagnostics;

/* Integrates with fixed-step RK4. A collision or numerical breakdown still
 * produces a trajectory (status HRE_COLLISION or HRE_BREAKDOWN, *out set)
 * holding the samples up to the abort. */
HRE_API hre_status hre_integrate(const hre_system* sys, double t_end, double h, size_t record_every,
                                 hre_trajectory** out);
HRE_API void hre_trajectory_free(hre_trajectory* traj);
HRE_API size_t hre_trajectory_size(const hre_trajectory* traj);
HRE_API int hre_trajectory_completed(const hre_trajectory* traj);
HRE_API const char* hre_trajectory_abort_reason(const hre_trajectory* traj);
HRE_API hre_status hre_trajectory_diagnostics(const hre_trajectory* traj, hre_diagnostics* out);
/* Sample `index` in the model the system was created in: time, energy,
 * constraint defect, and positions/velocities (3 or 2 doubles per body). */
HRE_API hre_status hre_trajectory_sample(const hre_trajectory* traj, size_t index, double* t, double* energy,
                                         double* constraint, double* positions, double* velocities, size_t capacity);
/* Largest deviation of any pairwise distance from its initial value. */
HRE_API hre_status hre_trajectory_distance_drift(const hre_trajectory* traj, double* drift);

#ifdef __cplusplus
}
#endif

#endif
