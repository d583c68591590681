/* Matter-wave diffraction at absorptive standing-wave gratings: C interface.
 *
 * All functions return an mwg_status. On failure the message of the last error on
 * the calling thread is available from mwg_last_error(). Objects are opaque handles
 * owned by the caller and released with the matching *_free function. Positions are
 * in units of the grating period d; screen coordinates are in units of the
 * diffraction-peak spacing dx. Complex arrays are interleaved (re, im).
 */
#ifndef MWG_MWG_H
#define MWG_MWG_H

#include <stddef.h>

#if defined(_WIN32)
#if defined(MWG_BUILDING_LIBRARY)
#define MWG_API __declspec(dllexport)
#else
#define MWG_API __declspec(dllimport)
#endif
#else
#define MWG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mwg_status {
  MWG_OK = 0,
  MWG_ERR_INVALID_INPUT = 1,
  MWG_ERR_DOMAIN = 2,
  MWG_ERR_RESOLUTION = 3,
  MWG_ERR_INTEGRATOR = 4,
  MWG_ERR_REGIME = 5,
  MWG_ERR_IO = 6,
  MWG_ERR_INTERNAL = 7
} mwg_status;

/* Channel selector: an absorption number ell >= 0, or the sum over all ell. */
#define MWG_SUM (-1)

typedef enum mwg_variant { MWG_QUANTUM = 0, MWG_CLASSICAL = 1 } mwg_variant;
typedef enum mwg_envelope { MWG_ENVELOPE_CONSTANT = 0, MWG_ENVELOPE_GAUSSIAN = 1 } mwg_envelope;
typedef enum mwg_ladder_method {
  MWG_LADDER_ODE = 0,
  MWG_LADDER_ANALYTIC = 1,
  MWG_LADDER_T1 = 2
} mwg_ladder_method;
typedef enum mwg_rabi_method { MWG_RABI_EXACT = 0, MWG_RABI_ODE = 1 } mwg_rabi_method;
typedef enum mwg_farfield_model {
  MWG_FARFIELD_FOURIER = 0,
  MWG_FARFIELD_FRAUNHOFER = 1,
  MWG_FARFIELD_KIRCHHOFF = 2,
  MWG_FARFIELD_PHASE_SPACE = 3
} mwg_farfield_model;
typedef enum mwg_resolution_kernel { MWG_KERNEL_GAUSSIAN = 0, MWG_KERNEL_BOXCAR = 1 } mwg_resolution_kernel;

/* SI units. alpha_si in C m^2/V. */
typedef struct mwg_beam {
  double power, waist_y, waist_z, wavelength, alpha_si, sigma_abs, velocity, mass;
} mwg_beam;

typedef struct mwg_grating {
  double phi0, n0, eta_p, eta_a;
} mwg_grating;

typedef struct mwg_scales {
  double talbot_length, de_broglie, separation, talbot_parameter, interaction_time;
} mwg_scales;

typedef struct mwg_kdtli_config {
  double open_fraction;   /* f */
  double talbot;          /* L / L_T */
  double velocity_spread; /* rms dv/v, 0 = monochromatic */
  int jmax_cap;
  int shifts;             /* samples of x_s on [0, 1) */
} mwg_kdtli_config;

typedef struct mwg_farfield_config {
  double slit_ratio;  /* D / d */
  double period_ratio; /* d / dx */
  int q_nodes_per_unit;
  int jmax;
  int kirchhoff_nodes;
} mwg_farfield_config;

/* Units of the interaction time t_L. */
typedef struct mwg_rabi_config {
  double pulse_area, detuning, lifetime;
  int grid;
} mwg_rabi_config;

typedef struct mwg_source mwg_source;
typedef struct mwg_signal mwg_signal;
typedef struct mwg_density mwg_density;

MWG_API const char* mwg_version(void);
MWG_API const char* mwg_last_error(void);
MWG_API const char* mwg_status_name(mwg_status status);

MWG_API void mwg_grating_init(mwg_grating* g);
MWG_API void mwg_kdtli_config_init(mwg_kdtli_config* c);
MWG_API void mwg_farfield_config_init(mwg_farfield_config* c);
MWG_API void mwg_rabi_config_init(mwg_rabi_config* c);

MWG_API mwg_status mwg_derive_grating(const mwg_beam* beam, mwg_grating* out);
MWG_API mwg_status mwg_derive_scales(const mwg_beam* beam, double separation, mwg_scales* out);
MWG_API mwg_status mwg_alpha_si_from_angstrom3(double alpha_a3, double* out);

/* M_ell(x), written to out[2]. */
MWG_API mwg_status mwg_measurement_operator(const mwg_grating* g, int ell, double x, double* out);
MWG_API mwg_status mwg_ladder_cutoff(const mwg_grating* g, int* out);
MWG_API mwg_status mwg_transmission_closed_form(int ell, double n0, double open_fraction, double* out);

/* Talbot-coefficient sources. */
MWG_API mwg_status mwg_source_closed_form(const mwg_grating* g, mwg_variant variant, mwg_source** out);
MWG_API mwg_status mwg_source_ladder(const mwg_grating* g, mwg_envelope envelope, mwg_ladder_method method,
                                     int jobs, mwg_source** out);
/* Ground-state kernel of the three-level model; its only channel is ell = 0. */
MWG_API mwg_status mwg_source_rabi(const mwg_rabi_config* cfg, mwg_rabi_method method, int jobs,
                                   mwg_source** out);
MWG_API void mwg_source_free(mwg_source* src);
MWG_API mwg_status mwg_source_max_ell(const mwg_source* src, int* out);
MWG_API const char* mwg_source_name(const mwg_source* src);

/* B_j(xi) for j = -jmax..jmax into out[2 (2 jmax + 1)]. */
MWG_API mwg_status mwg_talbot_row(const mwg_source* src, double xi, int ell, int jmax, double* out);
MWG_API mwg_status mwg_mean_transmission(const mwg_source* src, int ell, double open_fraction, double* out);

MWG_API mwg_status mwg_kdtli_signal(const mwg_source* src, const mwg_kdtli_config* cfg, int ell,
                                    mwg_signal** out);
MWG_API mwg_status mwg_kdtli_visibility(const mwg_source* src, const mwg_kdtli_config* cfg, int ell,
                                        double* out);
MWG_API void mwg_signal_free(mwg_signal* s);
MWG_API size_t mwg_signal_length(const mwg_signal* s);
MWG_API const double* mwg_signal_shifts(const mwg_signal* s);
MWG_API const double* mwg_signal_values(const mwg_signal* s);
/* S_j, j = 0..count-1, interleaved. */
MWG_API size_t mwg_signal_component_count(const mwg_signal* s);
MWG_API const double* mwg_signal_components(const mwg_signal* s);
MWG_API double mwg_signal_mean(const mwg_signal* s);
MWG_API mwg_status mwg_signal_visibility_minmax(const mwg_signal* s, double* out);

/* Kirchhoff and phase-space models need a closed-form quantum source. */
MWG_API mwg_status mwg_farfield_density(const mwg_source* src, const mwg_farfield_config* cfg,
                                        const double* screen, size_t n, int ell, mwg_farfield_model model,
                                        mwg_density** out);
MWG_API mwg_status mwg_density_smooth(const mwg_density* in, double sigma, mwg_resolution_kernel kernel,
                                      mwg_density** out);
MWG_API void mwg_density_free(mwg_density* d);
MWG_API size_t mwg_density_length(const mwg_density* d);
MWG_API const double* mwg_density_screen(const mwg_density* d);
MWG_API const double* mwg_density_values(const mwg_density* d);
/* Empty when the model is in its regime of validity. */
MWG_API const char* mwg_density_warning(const mwg_density* d);

/* K_ell(x, x') for ell = 0..n-1 into out[2 n]; n must be the ladder cutoff + 1. */
MWG_API mwg_status mwg_ladder_pair(const mwg_grating* g, mwg_envelope envelope, mwg_ladder_method method,
                                   double x, double xp, size_t n, double* out);

/* rho_{nn'}(x, x') after the pulse, row-major, into out[18]. */
MWG_API mwg_status mwg_rabi_pair(const mwg_rabi_config* cfg, mwg_rabi_method method, double x, double xp,
                                 double* out);
/* Diagonal populations on x_i = i / n; n must equal cfg->grid. Any output may be NULL. */
MWG_API mwg_status mwg_rabi_populations(const mwg_rabi_config* cfg, mwg_rabi_method method, size_t n,
                                        double* x, double* p0, double* p1, double* p2);
/* Effective (phi0, n0) of the short-lifetime reduction; enforce != 0 applies the tau <= t_L/50 check. */
MWG_API mwg_status mwg_rabi_short_lifetime(const mwg_rabi_config* cfg, int enforce, mwg_grating* out);

#ifdef __cplusplus
}
#endif

#endif
