/* invsim: inverse flight-mechanics simulation toolkit, C interface.
 *
 * All entry points return a status code (INVSIM_OK on success) and report
 * details via invsim_last_error(). Objects are opaque handles owned by the
 * caller through the matching *_free function. The library keeps no global
 * state apart from the thread-local error message.
 */
#ifndef INVSIM_H
#define INVSIM_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define INVSIM_OK 0
#define INVSIM_ERR_NUMERIC 2 /* guard violation, singularity, integration failure */
#define INVSIM_ERR_IO 3      /* file, parse or configuration problem */
#define INVSIM_ERR_USAGE 4   /* bad arguments to the API itself */

typedef struct invsim_airframe_s invsim_airframe;
typedef struct invsim_maneuver_s invsim_maneuver;
typedef struct invsim_series_s invsim_series;

/* Thread-local message for the most recent failure in this thread. */
const char* invsim_last_error(void);
const char* invsim_version(void);

/* ---- atmosphere ---------------------------------------------------------- */

typedef struct {
    double altitude_m;
    double density_kg_m3;
    double temperature_K;
    double speed_of_sound_m_s;
} invsim_atmo_sample;

int invsim_atmosphere_sample(double altitude_m, invsim_atmo_sample* out);
int invsim_mach_number(double speed_m_s, double altitude_m, double* out);

/* ---- airframe ------------------------------------------------------------ */

int invsim_airframe_load(const char* json_path, invsim_airframe** out);
int invsim_airframe_parse(const char* json_text, invsim_airframe** out);
void invsim_airframe_free(invsim_airframe* af);

/* ---- maneuvers ----------------------------------------------------------- */

int invsim_maneuver_builtin(const char* name, invsim_maneuver** out);
int invsim_maneuver_load_csv(const char* path, invsim_maneuver** out);
void invsim_maneuver_free(invsim_maneuver* m);

/* ---- inverse simulation --------------------------------------------------- */

typedef struct {
    double dt_s;            /* integration step; <= 0 selects a sampled maneuver's own step */
    double v_min_m_s;       /* minimum admissible speed, default 1.0 */
    double angle_guard_rad; /* wind-angle guard from +-pi/2, default 1e-3 */
} invsim_options;

void invsim_options_init(invsim_options* opt);

int invsim_run(const invsim_airframe* af, const invsim_maneuver* m, const invsim_options* opt,
               invsim_series** out);

/* ---- control series ------------------------------------------------------- */

size_t invsim_series_rows(const invsim_series* s);

/* Copies one column into the caller's buffer (cap >= rows). Column names match
 * the CSV header (t_s, thrust_N, delta_l_rad, ...) plus the diagnostics
 * alpha_conv_rad, cl, cm, cn, phi_rad, phi_dot, phi_ddot. */
int invsim_series_column(const invsim_series* s, const char* name, double* out, size_t cap);

int invsim_series_write_csv(const invsim_series* s, const char* path);
int invsim_series_read_csv(const char* path, invsim_series** out);
void invsim_series_free(invsim_series* s);

/* Emits the SVG figure set (8 files) into dir. A maneuver is required when the
 * series was loaded from CSV (the roll channels are rebuilt from it). */
int invsim_series_write_plots(const invsim_series* s, const invsim_maneuver* m_or_null,
                              const char* dir);

typedef struct {
    /* flight condition at the first station */
    double v_ini_m_s;
    double psi_w_ini_rad;
    double theta_w_ini_rad;
    double h_ini_m;
    double rho_ini_kg_m3;
    double qbar_ini_pa;
    double temperature_ini_K;
    double pressure_ini_pa;
    double speed_of_sound_ini_m_s;
    double mach_ini;
    double alpha_equb_rad;
    /* run statistics */
    size_t stations;
    double dt_s;
    double thrust_initial_N, thrust_final_N, thrust_mean_N;
    double thrust_min_N, thrust_min_time_s;
    double thrust_max_N, thrust_max_time_s;
    int thrust_reversal;
    double max_abs_delta_l_rad, max_abs_delta_l_time_s, mean_delta_l_rad;
    double max_abs_delta_m_rad, max_abs_delta_m_time_s, mean_delta_m_rad;
    double max_abs_delta_n_rad, max_abs_delta_n_time_s, mean_delta_n_rad;
    double alpha_conv_min_rad, alpha_conv_max_rad;
    double max_res_eq33, max_res_eq34;
} invsim_summary;

int invsim_series_summary(const invsim_series* s, invsim_summary* out);

/* ---- forward verification -------------------------------------------------- */

typedef struct {
    double max_pos_dev_m;   /* pass threshold, default 5.0 */
    double max_roll_dev_deg; /* pass threshold, default 1.0 */
    int zero_order_hold;    /* control interpolation mode, default 0 (linear) */
} invsim_verify_options;

void invsim_verify_options_init(invsim_verify_options* opt);

typedef struct {
    double max_pos_dev_m;
    double rms_pos_dev_m;
    double max_roll_dev_deg;
    double max_speed_dev_m_s;
    int pass;
} invsim_verify_report;

int invsim_verify(const invsim_airframe* af, const invsim_maneuver* m, const invsim_series* s,
                  const invsim_verify_options* opt, invsim_verify_report* out);

#ifdef __cplusplus
}
#endif

#endif /* INVSIM_H */
