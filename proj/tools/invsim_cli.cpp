// Command-line front end for the invsim shared library. Talks to the engine
// exclusively through the C API in invsim.h.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "invsim.h"

namespace {

constexpr double kRadToDeg = 57.29577951308232;

struct AirframeDeleter {
    void operator()(invsim_airframe* p) const { invsim_airframe_free(p); }
};
struct ManeuverDeleter {
    void operator()(invsim_maneuver* p) const { invsim_maneuver_free(p); }
};
struct SeriesDeleter {
    void operator()(invsim_series* p) const { invsim_series_free(p); }
};
using AirframePtr = std::unique_ptr<invsim_airframe, AirframeDeleter>;
using ManeuverPtr = std::unique_ptr<invsim_maneuver, ManeuverDeleter>;
using SeriesPtr = std::unique_ptr<invsim_series, SeriesDeleter>;

int fail(int status) {
    std::fprintf(stderr, "error: %s\n", invsim_last_error());
    return status;
}

AirframePtr load_airframe(const std::string& path, int& status) {
    invsim_airframe* af = nullptr;
    status = invsim_airframe_load(path.c_str(), &af);
    return AirframePtr(af);
}

ManeuverPtr load_maneuver(const std::string& name, const std::string& file, int& status) {
    invsim_maneuver* m = nullptr;
    if (!file.empty())
        status = invsim_maneuver_load_csv(file.c_str(), &m);
    else
        status = invsim_maneuver_builtin(name.c_str(), &m);
    return ManeuverPtr(m);
}

void print_summary(const invsim_summary& s) {
    std::printf("flight condition at station 1:\n");
    std::printf("  speed                 %10.3f m/s\n", s.v_ini_m_s);
    std::printf("  azimuth path angle    %10.4f deg\n", s.psi_w_ini_rad * kRadToDeg);
    std::printf("  elevation path angle  %10.4f deg\n", s.theta_w_ini_rad * kRadToDeg);
    std::printf("  altitude              %10.3f m\n", s.h_ini_m);
    std::printf("  air density           %10.5f kg/m^3\n", s.rho_ini_kg_m3);
    std::printf("  dynamic pressure      %10.2f Pa\n", s.qbar_ini_pa);
    std::printf("  air temperature       %10.2f K\n", s.temperature_ini_K);
    std::printf("  air pressure          %10.0f Pa\n", s.pressure_ini_pa);
    std::printf("  speed of sound        %10.2f m/s\n", s.speed_of_sound_ini_m_s);
    std::printf("  Mach number           %10.4f\n", s.mach_ini);
    std::printf("  equilibrium AoA       %10.4f deg\n", s.alpha_equb_rad * kRadToDeg);
    std::printf("run over %zu stations at dt = %g s:\n", s.stations, s.dt_s);
    std::printf("  thrust initial/final  %10.1f / %.1f N\n", s.thrust_initial_N, s.thrust_final_N);
    std::printf("  thrust min            %10.1f N at %.3f s\n", s.thrust_min_N, s.thrust_min_time_s);
    std::printf("  thrust max            %10.1f N at %.3f s\n", s.thrust_max_N, s.thrust_max_time_s);
    std::printf("  thrust mean           %10.1f N   reversal: %s\n", s.thrust_mean_N,
                s.thrust_reversal ? "yes" : "no");
    std::printf("  |ailerons| max        %10.3f deg at %.3f s, mean %+.3f deg\n",
                s.max_abs_delta_l_rad * kRadToDeg, s.max_abs_delta_l_time_s,
                s.mean_delta_l_rad * kRadToDeg);
    std::printf("  |elevators| max       %10.3f deg at %.3f s, mean %+.3f deg\n",
                s.max_abs_delta_m_rad * kRadToDeg, s.max_abs_delta_m_time_s,
                s.mean_delta_m_rad * kRadToDeg);
    std::printf("  |rudder| max          %10.3f deg at %.3f s, mean %+.3f deg\n",
                s.max_abs_delta_n_rad * kRadToDeg, s.max_abs_delta_n_time_s,
                s.mean_delta_n_rad * kRadToDeg);
    std::printf("  conventional AoA      [%.4f, %.4f] deg\n", s.alpha_conv_min_rad * kRadToDeg,
                s.alpha_conv_max_rad * kRadToDeg);
    std::printf("  coupling residuals    max |eq33| %.3e, max |eq34| %.3e\n", s.max_res_eq33,
                s.max_res_eq34);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"invsim: inverse flight-mechanics simulation"};
    app.set_version_flag("--version", std::string(invsim_version()));
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "compute the control series for a maneuver");
    std::string airframe_path, maneuver_name = "mirage-double-roll", trajectory_path;
    std::string out_path = "controls.csv", plots_dir;
    double dt = 0.0, v_min = 1.0, angle_guard = 1e-3;
    run->add_option("--airframe", airframe_path, "airframe JSON file")->required();
    run->add_option("--maneuver", maneuver_name, "built-in maneuver name");
    run->add_option("--trajectory", trajectory_path, "sampled trajectory CSV");
    run->add_option("--dt", dt, "time step in seconds (default 0.001 or INVSIM_DT)");
    run->add_option("--out", out_path, "output controls CSV path");
    run->add_option("--plots", plots_dir, "emit SVG plots into this directory");
    run->add_option("--vmin", v_min, "minimum admissible speed (m/s)");
    run->add_option("--angle-guard", angle_guard, "wind-angle guard from +-pi/2 (rad)");

    // verify
    auto* verify = app.add_subcommand("verify", "forward-replay a control series");
    std::string v_airframe, v_maneuver = "mirage-double-roll", v_trajectory, controls_path;
    std::string report_path;
    double max_pos_dev = 5.0, max_roll_dev = 1.0;
    bool zoh = false;
    verify->add_option("--airframe", v_airframe, "airframe JSON file")->required();
    verify->add_option("--maneuver", v_maneuver, "built-in maneuver name");
    verify->add_option("--trajectory", v_trajectory, "sampled trajectory CSV");
    verify->add_option("--controls", controls_path, "controls CSV to replay")->required();
    verify->add_option("--report", report_path, "write the report as JSON");
    verify->add_option("--max-pos-dev", max_pos_dev, "pass threshold on position (m)");
    verify->add_option("--max-roll-dev", max_roll_dev, "pass threshold on roll (deg)");
    verify->add_flag("--zoh", zoh, "hold controls between stations instead of interpolating");

    // atmosphere
    auto* atmos = app.add_subcommand("atmosphere", "standard-atmosphere properties");
    double altitude = 0.0;
    std::vector<double> table;
    atmos->add_option("--altitude", altitude, "altitude in metres");
    atmos->add_option("--table", table, "emit a table: h0 h1 step")->expected(3);

    // plot
    auto* plot = app.add_subcommand("plot", "emit SVG plots for a controls CSV");
    std::string p_controls, p_maneuver = "mirage-double-roll", p_trajectory, p_dir = "plots";
    plot->add_option("--controls", p_controls, "controls CSV")->required();
    plot->add_option("--maneuver", p_maneuver, "built-in maneuver name");
    plot->add_option("--trajectory", p_trajectory, "sampled trajectory CSV");
    plot->add_option("--out", p_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 4;
    }

    if (run->parsed()) {
        int status = 0;
        const AirframePtr af = load_airframe(airframe_path, status);
        if (status) return fail(status);
        const ManeuverPtr m = load_maneuver(maneuver_name, trajectory_path, status);
        if (status) return fail(status);

        invsim_options opt;
        invsim_options_init(&opt);
        if (dt > 0.0) {
            opt.dt_s = dt;
        } else if (const char* env = std::getenv("INVSIM_DT")) {
            opt.dt_s = std::atof(env);
        } else if (!trajectory_path.empty()) {
            opt.dt_s = 0.0;  // use the file's own step
        }
        opt.v_min_m_s = v_min;
        opt.angle_guard_rad = angle_guard;
        if (opt.dt_s > 0.01)
            std::fprintf(stderr,
                         "warning: dt = %g s; steps above 0.01 s can show spurious oscillation "
                         "near sharp peaks\n",
                         opt.dt_s);

        invsim_series* raw = nullptr;
        status = invsim_run(af.get(), m.get(), &opt, &raw);
        if (status) return fail(status);
        const SeriesPtr series(raw);

        status = invsim_series_write_csv(series.get(), out_path.c_str());
        if (status) return fail(status);
        std::printf("wrote %zu stations to %s\n", invsim_series_rows(series.get()),
                    out_path.c_str());

        invsim_summary sum;
        status = invsim_series_summary(series.get(), &sum);
        if (status) return fail(status);
        print_summary(sum);

        if (!plots_dir.empty()) {
            status = invsim_series_write_plots(series.get(), nullptr, plots_dir.c_str());
            if (status) return fail(status);
            std::printf("wrote plots to %s\n", plots_dir.c_str());
        }
        return 0;
    }

    if (verify->parsed()) {
        int status = 0;
        const AirframePtr af = load_airframe(v_airframe, status);
        if (status) return fail(status);
        const ManeuverPtr m = load_maneuver(v_maneuver, v_trajectory, status);
        if (status) return fail(status);
        invsim_series* raw = nullptr;
        status = invsim_series_read_csv(controls_path.c_str(), &raw);
        if (status) return fail(status);
        const SeriesPtr series(raw);

        invsim_verify_options opt;
        invsim_verify_options_init(&opt);
        opt.max_pos_dev_m = max_pos_dev;
        opt.max_roll_dev_deg = max_roll_dev;
        opt.zero_order_hold = zoh ? 1 : 0;

        invsim_verify_report rep;
        status = invsim_verify(af.get(), m.get(), series.get(), &opt, &rep);
        if (status) return fail(status);

        std::printf("round trip: max position deviation %.4f m (rms %.4f m), max roll deviation "
                    "%.4f deg, max speed deviation %.4f m/s -> %s\n",
                    rep.max_pos_dev_m, rep.rms_pos_dev_m, rep.max_roll_dev_deg,
                    rep.max_speed_dev_m_s, rep.pass ? "pass" : "FAIL");
        if (!report_path.empty()) {
            std::ofstream out(report_path);
            if (!out) {
                std::fprintf(stderr, "error: cannot write report to %s\n", report_path.c_str());
                return 3;
            }
            out << "{\n"
                << "  \"max_pos_dev_m\": " << rep.max_pos_dev_m << ",\n"
                << "  \"rms_pos_dev_m\": " << rep.rms_pos_dev_m << ",\n"
                << "  \"max_roll_dev_deg\": " << rep.max_roll_dev_deg << ",\n"
                << "  \"pass\": " << (rep.pass ? "true" : "false") << "\n"
                << "}\n";
        }
        return 0;
    }

    if (atmos->parsed()) {
        std::printf("altitude_m,density_kg_m3,temperature_K,speed_of_sound_m_s\n");
        auto emit = [](double h) {
            invsim_atmo_sample s;
            const int status = invsim_atmosphere_sample(h, &s);
            if (status) return status;
            std::printf("%.6g,%.6g,%.6g,%.6g\n", s.altitude_m, s.density_kg_m3, s.temperature_K,
                        s.speed_of_sound_m_s);
            return 0;
        };
        if (!table.empty()) {
            const double h0 = table[0], h1 = table[1], step = table[2];
            if (step <= 0.0) {
                std::fprintf(stderr, "error: table step must be positive\n");
                return 4;
            }
            for (double h = h0; h <= h1 + 1e-9; h += step)
                if (const int status = emit(h)) return fail(status);
        } else {
            if (const int status = emit(altitude)) return fail(status);
        }
        return 0;
    }

    if (plot->parsed()) {
        int status = 0;
        invsim_series* raw = nullptr;
        status = invsim_series_read_csv(p_controls.c_str(), &raw);
        if (status) return fail(status);
        const SeriesPtr series(raw);
        const ManeuverPtr m = load_maneuver(p_maneuver, p_trajectory, status);
        if (status) return fail(status);
        status = invsim_series_write_plots(series.get(), m.get(), p_dir.c_str());
        if (status) return fail(status);
        std::printf("wrote plots to %s\n", p_dir.c_str());
        return 0;
    }
    return 4;
}
