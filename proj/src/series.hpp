#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace invsim {

// Per-station output of an inverse-simulation run: the four controls plus the
// diagnostic channels. All angles in radians; CSV emission converts nothing.
struct ControlSeries {
    double dt = 0.0;
    double alpha_equb = 0.0;  // frozen equilibrium AoA used by the run

    std::vector<double> t;
    std::vector<double> thrust;
    std::vector<double> delta_l, delta_m, delta_n;
    std::vector<double> alpha, beta, alpha_conv;
    std::vector<double> theta, psi;
    std::vector<double> L, M, N;
    std::vector<double> Cl, Cm, Cn;
    std::vector<double> res33, res34;
    // Roll input channels carried along for plotting.
    std::vector<double> phi, phid, phidd;

    std::size_t size() const { return t.size(); }
};

// Writes the canonical 14-column CSV (9 significant digits). Deterministic:
// identical series produce byte-identical files.
void write_controls_csv(const ControlSeries& series, const std::string& path);

// Reads a controls CSV back; only the canonical columns are populated.
ControlSeries read_controls_csv(const std::string& path);

// Flight condition at the first station plus global extrema of the run.
struct Summary {
    // Station-1 characteristics.
    double v_ini = 0.0, psi_w_ini = 0.0, theta_w_ini = 0.0, h_ini = 0.0;
    double rho_ini = 0.0, qbar_ini = 0.0, temperature_ini = 0.0, pressure_ini = 0.0;
    double speed_of_sound_ini = 0.0, mach_ini = 0.0, alpha_equb = 0.0;

    // Series statistics.
    std::size_t stations = 0;
    double dt = 0.0;
    double thrust_initial = 0.0, thrust_final = 0.0, thrust_mean = 0.0;
    double thrust_min = 0.0, thrust_min_time = 0.0;
    double thrust_max = 0.0, thrust_max_time = 0.0;
    bool thrust_reversal = false;
    double max_abs_dl = 0.0, max_abs_dl_time = 0.0, mean_dl = 0.0;
    double max_abs_dm = 0.0, max_abs_dm_time = 0.0, mean_dm = 0.0;
    double max_abs_dn = 0.0, max_abs_dn_time = 0.0, mean_dn = 0.0;
    double alpha_conv_min = 0.0, alpha_conv_max = 0.0;
    double max_res33 = 0.0, max_res34 = 0.0;
};

// Statistics part only; the station-1 characteristics are filled by the run.
Summary compute_summary(const ControlSeries& series);

// Interior local extrema of a channel, alternating and prominence-filtered.
struct Extremum {
    std::size_t index = 0;
    double t = 0.0;
    double value = 0.0;
    bool maximum = false;
};
std::vector<Extremum> local_extrema(const std::vector<double>& t, const std::vector<double>& v,
                                    double prominence);

}  // namespace invsim
