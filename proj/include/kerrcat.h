/* kerrcat: squeeze-driven Kerr oscillator toolkit, C interface.
 *
 * Every function returns a kc_status; on failure kc_last_error() holds a
 * message for the calling thread. Handles are opaque and owned by the caller,
 * who releases them with the matching *_free function. Energies are in units
 * of K when kerr = 1, times in 1/K.
 */
#ifndef KERRCAT_H
#define KERRCAT_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(KERRCAT_BUILDING_LIBRARY)
#    define KC_API __declspec(dllexport)
#  else
#    define KC_API __declspec(dllimport)
#  endif
#else
#  define KC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kc_status {
  KC_OK = 0,
  KC_ERR_INVALID_ARGUMENT = 1,
  KC_ERR_INVALID_DIMENSION = 2,
  KC_ERR_TRUNCATION_RISK = 3,
  KC_ERR_NOT_HERMITIAN = 4,
  KC_ERR_DEGENERATE_BASIS = 5,
  KC_ERR_DOMAIN = 6,
  KC_ERR_POLE = 7,
  KC_ERR_NO_CONVERGENCE = 8,
  KC_ERR_BASIS_MISMATCH = 9,
  KC_ERR_RANK_DEFICIENT = 10,
  KC_ERR_INSUFFICIENT_DIMENSION = 11,
  KC_ERR_INEXACT_CONVERSION = 12,
  KC_ERR_IO = 13,
  KC_ERR_INTERNAL = 14
} kc_status;

KC_API const char* kc_version(void);
KC_API const char* kc_last_error(void);
/* Kebab-case name of a status ("ok", "pole", ...). */
KC_API const char* kc_status_name(kc_status status);

/* H = delta n - kerr a^dag2 a^2 + eps2 (a^dag2 + a^2) + eps4 (a^dag4 + a^4).
 * dim = 0 selects max(60, ceil(10 (delta/kerr + 2 |eps2|/kerr))). */
typedef struct kc_params {
  double delta;
  double kerr;
  double eps2;
  double eps4;
  int dim;
} kc_params;

KC_API kc_params kc_params_default(void);
KC_API kc_status kc_resolved_dim(const kc_params* params, int* dim);

/* ---- spectra ---------------------------------------------------------- */

typedef struct kc_eigensystem kc_eigensystem;

/* Eigenvalues sorted descending (wells at the top) with parity labels. */
KC_API kc_status kc_eigensystem_new(const kc_params* params, kc_eigensystem** out);
KC_API void kc_eigensystem_free(kc_eigensystem* es);
KC_API int kc_eigensystem_dim(const kc_eigensystem* es);
/* Copies the first `count` eigenvalues and parities (either pointer may be NULL). */
KC_API kc_status kc_eigensystem_levels(const kc_eigensystem* es, int count, double* values, int* parities);
/* Real and imaginary parts of eigenvector `index` (dim entries each). */
KC_API kc_status kc_eigensystem_vector(const kc_eigensystem* es, int index, double* re, double* im);

/* Signed splitting: top even-parity level minus top odd-parity level. */
KC_API kc_status kc_tunnel_splitting(const kc_params* params, double* signed_splitting);

/* Zeros of the signed splitting over a sorted delta grid (bisection to 1e-8).
 * Writes at most `capacity` zeros and the total count to *count. The
 * per-point values go to `values` when it is not NULL (grid_size entries). */
KC_API kc_status kc_splitting_zeros(const kc_params* base, const double* grid, size_t grid_size, unsigned threads,
                                    double* values, double* zeros, size_t capacity, size_t* count);

typedef struct kc_degeneracy_report {
  int m;
  int expected_pairs;
  int degenerate_pairs;
  double max_intra_gap;
  double next_gap;
  int ok;
} kc_degeneracy_report;

KC_API kc_status kc_degeneracy_check(int m, double eps2, double kerr, int dim, kc_degeneracy_report* out);

/* (m+1) eigenvalues of the decoupled displaced block, the displacement
 * offset, and the worst distance to a full-spectrum pair. */
KC_API kc_status kc_exact_block(int m, double eps2, double kerr, int dim, double* values, double* offset,
                                double* max_mismatch);

KC_API kc_status kc_first_order_crossing_amplitude(int n, double eps2, double* out);
KC_API kc_status kc_second_order_energy(int level, const kc_params* params, double* out);

/* ---- semiclassical ---------------------------------------------------- */

typedef enum kc_phase { KC_PHASE_SINGLE_NODE = 0, KC_PHASE_DOUBLE_NODE = 1, KC_PHASE_TRIPLE_NODE = 2 } kc_phase;

KC_API kc_status kc_classify_phase(double delta, double eps2, kc_phase* out);
KC_API const char* kc_phase_name(kc_phase phase);

typedef struct kc_geometry {
  kc_phase phase;
  double node_distance;
  double saddle_distance;
  double node_depth;
  double saddle_depth;
  double barrier_height;
  double separatrix_area;
} kc_geometry;

KC_API kc_status kc_metapotential_geometry(double delta, double eps2, double kerr, kc_geometry* out);

typedef struct kc_ebk {
  kc_phase phase;
  double n;
  double n_area;
  int excited_count;
  int excited_count_area;
  int in_well_pairs;
  int boundary;
  double n_double_branch; /* NaN outside |delta| <= 2 eps2 */
  double n_triple_branch; /* NaN for delta < 0 */
} kc_ebk;

KC_API kc_status kc_ebk_count(double delta, double eps2, double kerr, kc_ebk* out);
KC_API kc_status kc_wkb_splitting(double delta, double eps2, double kerr, double* out);

/* ---- phase space ------------------------------------------------------ */

/* Coefficients of (D - 2K) A+A - K A+^2 A^2 + c from quantizing D a*a - K a*^2 a^2. */
KC_API kc_status kc_kerr_lamb_shift(double delta, double kerr, double* number_coefficient,
                                    double* quartic_coefficient, double* constant);

typedef struct kc_fokker_planck {
  double drift;
  double diffusion_complex;
  double diffusion_quadrature;
  double diffusion_quadrature_lambda2;
  int matches_all_monomials;
  int monomials_checked;
  int drift_independent_of_n_th;
  int hamiltonian_part_odd_only;
} kc_fokker_planck;

KC_API kc_status kc_fokker_planck_symbols(double kappa, double n_th, int max_degree, kc_fokker_planck* out);

typedef enum kc_state_kind { KC_STATE_EIGEN = 0, KC_STATE_RIGHT = 1, KC_STATE_LEFT = 2 } kc_state_kind;

typedef struct kc_wigner kc_wigner;

/* Wigner function of eigenstate `index` or of the right/left localized state
 * of pair `index`. half_width <= 0 picks the default extent. */
KC_API kc_status kc_wigner_new(const kc_params* params, kc_state_kind kind, int index, int nx, int np,
                               double half_width, unsigned threads, kc_wigner** out);
KC_API void kc_wigner_free(kc_wigner* w);
KC_API kc_status kc_wigner_stats(const kc_wigner* w, double* normalization, double* purity, double* min_value,
                                 double* max_value);
KC_API kc_status kc_wigner_value(const kc_wigner* w, int ix, int ip, double* x, double* p, double* value);
/* format is "csv" or "json"; metadata_json may be NULL. */
KC_API kc_status kc_wigner_write(const kc_wigner* w, const char* path, const char* format, const char* metadata_json);

/* ---- dynamics --------------------------------------------------------- */

typedef enum kc_initial { KC_INIT_RIGHT_WELL = 0, KC_INIT_LEFT_WELL = 1, KC_INIT_VACUUM = 2, KC_INIT_FOCK = 3 } kc_initial;
typedef enum kc_method { KC_METHOD_AUTO = 0, KC_METHOD_RK4 = 1, KC_METHOD_PROPAGATOR = 2 } kc_method;

typedef struct kc_lindblad {
  kc_params params;
  double kappa;
  double n_th;
  double t_final;
  double dt;        /* 0: automatic */
  double sample_dt; /* 0: t_final / 200 (evolve) or 1 (T_X) */
  kc_initial initial;
  int fock_n;
  int well_pairs; /* 0: EBK in-well count */
  kc_method method;
} kc_lindblad;

KC_API kc_lindblad kc_lindblad_default(void);

typedef struct kc_tx_result {
  double t_x;
  int lower_bound;
  int fit_points;
  double s_final;
  double t_end;
} kc_tx_result;

KC_API kc_status kc_tx_lifetime(const kc_lindblad* cfg, kc_tx_result* out);

typedef struct kc_trajectory kc_trajectory;

KC_API kc_status kc_evolve(const kc_lindblad* cfg, kc_trajectory** out);
KC_API void kc_trajectory_free(kc_trajectory* tr);
KC_API size_t kc_trajectory_size(const kc_trajectory* tr);
/* column: t, s, tr, purity, n, x, energy, min_eigenvalue. */
KC_API kc_status kc_trajectory_column(const kc_trajectory* tr, const char* column, double* out);
KC_API kc_status kc_trajectory_write(const kc_trajectory* tr, const char* path, const char* format,
                                     const char* metadata_json);

/* ---- tables ----------------------------------------------------------- */

typedef struct kc_table kc_table;

KC_API kc_status kc_table_new(const char* const* columns, int column_count, kc_table** out);
KC_API void kc_table_free(kc_table* table);
/* texts may be NULL; a non-NULL texts[i] stores a string cell instead of values[i]. */
KC_API kc_status kc_table_add_row(kc_table* table, const double* values, const char* const* texts, int error_code);
KC_API size_t kc_table_rows(const kc_table* table);
KC_API kc_status kc_table_write(const kc_table* table, const char* path, const char* format,
                                const char* metadata_json);

/* Rabi map over axis "delta" or "eps2": per-cell transition probabilities
 * and per-column damped-sinusoid fits. */
KC_API kc_status kc_rabi_map(const kc_lindblad* base, const char* axis, const double* values, size_t value_count,
                             const double* times, size_t time_count, unsigned threads, kc_table** cells,
                             kc_table** fits);

/* ---- calibration ------------------------------------------------------ */

typedef struct kc_calibration {
  double alpha0_sq;
  double eps2;
} kc_calibration;

KC_API kc_status kc_calibrate(double omega_x, double eps_x, double kerr, kc_calibration* out);

#ifdef __cplusplus
}
#endif

#endif /* KERRCAT_H */
