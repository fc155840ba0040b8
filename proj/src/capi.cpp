#include "invsim.h"

#include <cmath>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

#include "airframe.hpp"
#include "errors.hpp"
#include "finite_diff.hpp"
#include "forward_sim.hpp"
#include "series.hpp"
#include "solver.hpp"
#include "svg_plot.hpp"
#include "trajectory.hpp"

using namespace invsim;

struct invsim_airframe_s {
    AirframeParams params;
};
struct invsim_maneuver_s {
    ManeuverInput input;
};
struct invsim_series_s {
    ControlSeries series;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

// Runs the body and translates exceptions into status codes.
template <class Fn>
int guarded(Fn&& fn) {
    try {
        fn();
        return INVSIM_OK;
    } catch (const NumericError& e) {
        set_error(e.what());
        return INVSIM_ERR_NUMERIC;
    } catch (const std::domain_error& e) {
        set_error(e.what());
        return INVSIM_ERR_NUMERIC;
    } catch (const ConfigError& e) {
        set_error(e.what());
        return INVSIM_ERR_IO;
    } catch (const std::bad_alloc&) {
        set_error("out of memory");
        return INVSIM_ERR_IO;
    } catch (const std::exception& e) {
        set_error(e.what());
        return INVSIM_ERR_IO;
    }
}

int usage_error(const std::string& msg) {
    set_error(msg);
    return INVSIM_ERR_USAGE;
}

SolverOptions to_solver_options(const invsim_options* opt, const ManeuverInput& input) {
    SolverOptions so;
    if (opt) {
        so.v_min = opt->v_min_m_s;
        so.angle_guard = opt->angle_guard_rad;
        if (opt->dt_s > 0.0)
            so.dt = opt->dt_s;
        else if (!input.analytic())
            so.dt = input.dt;
        else
            throw ConfigError("run: dt must be positive for an analytic maneuver");
    }
    return so;
}

}  // namespace

extern "C" {

const char* invsim_last_error(void) { return g_last_error.c_str(); }

const char* invsim_version(void) { return "invsim 1.0.0"; }

int invsim_atmosphere_sample(double altitude_m, invsim_atmo_sample* out) {
    if (!out) return usage_error("invsim_atmosphere_sample: out is null");
    return guarded([&] {
        out->altitude_m = altitude_m;
        out->density_kg_m3 = atmo::density(altitude_m);
        out->temperature_K = atmo::temperature(altitude_m);
        out->speed_of_sound_m_s = atmo::speed_of_sound(altitude_m);
    });
}

int invsim_mach_number(double speed_m_s, double altitude_m, double* out) {
    if (!out) return usage_error("invsim_mach_number: out is null");
    return guarded([&] { *out = atmo::mach(speed_m_s, altitude_m); });
}

int invsim_airframe_load(const char* json_path, invsim_airframe** out) {
    if (!json_path || !out) return usage_error("invsim_airframe_load: null argument");
    return guarded([&] { *out = new invsim_airframe_s{load_airframe_json(json_path)}; });
}

int invsim_airframe_parse(const char* json_text, invsim_airframe** out) {
    if (!json_text || !out) return usage_error("invsim_airframe_parse: null argument");
    return guarded([&] { *out = new invsim_airframe_s{parse_airframe_json(json_text)}; });
}

void invsim_airframe_free(invsim_airframe* af) { delete af; }

int invsim_maneuver_builtin(const char* name, invsim_maneuver** out) {
    if (!name || !out) return usage_error("invsim_maneuver_builtin: null argument");
    return guarded([&] { *out = new invsim_maneuver_s{builtin_maneuver(name)}; });
}

int invsim_maneuver_load_csv(const char* path, invsim_maneuver** out) {
    if (!path || !out) return usage_error("invsim_maneuver_load_csv: null argument");
    return guarded([&] { *out = new invsim_maneuver_s{load_sampled(path)}; });
}

void invsim_maneuver_free(invsim_maneuver* m) { delete m; }

void invsim_options_init(invsim_options* opt) {
    if (!opt) return;
    opt->dt_s = 1e-3;
    opt->v_min_m_s = 1.0;
    opt->angle_guard_rad = 1e-3;
}

int invsim_run(const invsim_airframe* af, const invsim_maneuver* m, const invsim_options* opt,
               invsim_series** out) {
    if (!af || !m || !out) return usage_error("invsim_run: null argument");
    return guarded([&] {
        invsim_options defaults;
        invsim_options_init(&defaults);
        const invsim_options* o = opt ? opt : &defaults;
        const InverseSolver solver(af->params, to_solver_options(o, m->input));
        RunResult res = solver.run(m->input);
        *out = new invsim_series_s{std::move(res.series)};
    });
}

size_t invsim_series_rows(const invsim_series* s) { return s ? s->series.size() : 0; }

int invsim_series_column(const invsim_series* s, const char* name, double* out, size_t cap) {
    if (!s || !name || !out) return usage_error("invsim_series_column: null argument");
    const ControlSeries& cs = s->series;
    const std::vector<double>* col = nullptr;
    const std::string key = name;
    if (key == "t_s") col = &cs.t;
    else if (key == "thrust_N") col = &cs.thrust;
    else if (key == "delta_l_rad") col = &cs.delta_l;
    else if (key == "delta_m_rad") col = &cs.delta_m;
    else if (key == "delta_n_rad") col = &cs.delta_n;
    else if (key == "alpha_rad") col = &cs.alpha;
    else if (key == "beta_rad") col = &cs.beta;
    else if (key == "theta_rad") col = &cs.theta;
    else if (key == "psi_rad") col = &cs.psi;
    else if (key == "L_Nm") col = &cs.L;
    else if (key == "M_Nm") col = &cs.M;
    else if (key == "N_Nm") col = &cs.N;
    else if (key == "res_eq33") col = &cs.res33;
    else if (key == "res_eq34") col = &cs.res34;
    else if (key == "alpha_conv_rad") col = &cs.alpha_conv;
    else if (key == "cl") col = &cs.Cl;
    else if (key == "cm") col = &cs.Cm;
    else if (key == "cn") col = &cs.Cn;
    else if (key == "phi_rad") col = &cs.phi;
    else if (key == "phi_dot") col = &cs.phid;
    else if (key == "phi_ddot") col = &cs.phidd;
    else return usage_error("invsim_series_column: unknown column \"" + key + "\"");
    if (col->empty()) return usage_error("invsim_series_column: column \"" + key + "\" not populated");
    if (cap < col->size()) return usage_error("invsim_series_column: buffer too small");
    std::memcpy(out, col->data(), col->size() * sizeof(double));
    return INVSIM_OK;
}

int invsim_series_write_csv(const invsim_series* s, const char* path) {
    if (!s || !path) return usage_error("invsim_series_write_csv: null argument");
    return guarded([&] { write_controls_csv(s->series, path); });
}

int invsim_series_read_csv(const char* path, invsim_series** out) {
    if (!path || !out) return usage_error("invsim_series_read_csv: null argument");
    return guarded([&] { *out = new invsim_series_s{read_controls_csv(path)}; });
}

void invsim_series_free(invsim_series* s) { delete s; }

int invsim_series_write_plots(const invsim_series* s, const invsim_maneuver* m, const char* dir) {
    if (!s || !dir) return usage_error("invsim_series_write_plots: null argument");
    return guarded([&] {
        if (m) {
            // Rebuild the roll channels from the maneuver at the series times.
            ControlSeries copy = s->series;
            copy.phi.resize(copy.size());
            copy.phid.resize(copy.size());
            copy.phidd.resize(copy.size());
            if (m->input.analytic()) {
                const auto& am = std::get<AnalyticManeuver>(m->input.source);
                for (std::size_t i = 0; i < copy.size(); ++i) {
                    const auto pv = am.phi(copy.t[i]);
                    copy.phi[i] = pv[0];
                    copy.phid[i] = pv[1];
                    copy.phidd[i] = pv[2];
                }
            } else {
                const auto& sm = std::get<SampledManeuver>(m->input.source);
                const UniformSeries phi_series(m->input.dt, sm.phi);
                const auto d1 = derivative(phi_series, 1).values;
                const auto d2 = derivative(phi_series, 2).values;
                for (std::size_t i = 0; i < copy.size(); ++i) {
                    const std::size_t j = std::min(
                        static_cast<std::size_t>(std::llround(copy.t[i] / m->input.dt)),
                        sm.phi.size() - 1);
                    copy.phi[i] = sm.phi[j];
                    copy.phid[i] = d1[j];
                    copy.phidd[i] = d2[j];
                }
            }
            write_run_plots(copy, dir);
        } else {
            write_run_plots(s->series, dir);
        }
    });
}

int invsim_series_summary(const invsim_series* s, invsim_summary* out) {
    if (!s || !out) return usage_error("invsim_series_summary: null argument");
    return guarded([&] {
        const Summary sum = compute_summary(s->series);
        out->v_ini_m_s = sum.v_ini;
        out->psi_w_ini_rad = sum.psi_w_ini;
        out->theta_w_ini_rad = sum.theta_w_ini;
        out->h_ini_m = sum.h_ini;
        out->rho_ini_kg_m3 = sum.rho_ini;
        out->qbar_ini_pa = sum.qbar_ini;
        out->temperature_ini_K = sum.temperature_ini;
        out->pressure_ini_pa = sum.pressure_ini;
        out->speed_of_sound_ini_m_s = sum.speed_of_sound_ini;
        out->mach_ini = sum.mach_ini;
        out->alpha_equb_rad = sum.alpha_equb;
        out->stations = sum.stations;
        out->dt_s = sum.dt;
        out->thrust_initial_N = sum.thrust_initial;
        out->thrust_final_N = sum.thrust_final;
        out->thrust_mean_N = sum.thrust_mean;
        out->thrust_min_N = sum.thrust_min;
        out->thrust_min_time_s = sum.thrust_min_time;
        out->thrust_max_N = sum.thrust_max;
        out->thrust_max_time_s = sum.thrust_max_time;
        out->thrust_reversal = sum.thrust_reversal ? 1 : 0;
        out->max_abs_delta_l_rad = sum.max_abs_dl;
        out->max_abs_delta_l_time_s = sum.max_abs_dl_time;
        out->mean_delta_l_rad = sum.mean_dl;
        out->max_abs_delta_m_rad = sum.max_abs_dm;
        out->max_abs_delta_m_time_s = sum.max_abs_dm_time;
        out->mean_delta_m_rad = sum.mean_dm;
        out->max_abs_delta_n_rad = sum.max_abs_dn;
        out->max_abs_delta_n_time_s = sum.max_abs_dn_time;
        out->mean_delta_n_rad = sum.mean_dn;
        out->alpha_conv_min_rad = sum.alpha_conv_min;
        out->alpha_conv_max_rad = sum.alpha_conv_max;
        out->max_res_eq33 = sum.max_res33;
        out->max_res_eq34 = sum.max_res34;
    });
}

void invsim_verify_options_init(invsim_verify_options* opt) {
    if (!opt) return;
    opt->max_pos_dev_m = 5.0;
    opt->max_roll_dev_deg = 1.0;
    opt->zero_order_hold = 0;
}

int invsim_verify(const invsim_airframe* af, const invsim_maneuver* m, const invsim_series* s,
                  const invsim_verify_options* opt, invsim_verify_report* out) {
    if (!af || !m || !s || !out) return usage_error("invsim_verify: null argument");
    return guarded([&] {
        invsim_verify_options defaults;
        invsim_verify_options_init(&defaults);
        const invsim_verify_options* o = opt ? opt : &defaults;
        ForwardOptions fo;
        fo.zero_order_hold = o->zero_order_hold != 0;
        const double roll_tol = o->max_roll_dev_deg * M_PI / 180.0;
        const RoundTripReport rep =
            round_trip(m->input, s->series, af->params, o->max_pos_dev_m, roll_tol, fo);
        out->max_pos_dev_m = rep.max_pos_dev;
        out->rms_pos_dev_m = rep.rms_pos_dev;
        out->max_roll_dev_deg = rep.max_roll_dev * 180.0 / M_PI;
        out->max_speed_dev_m_s = rep.max_speed_dev;
        out->pass = rep.pass ? 1 : 0;
    });
}

}  // extern "C"
