#pragma once

#include <array>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "airframe.hpp"
#include "jet.hpp"

namespace invsim {

// Analytic maneuver description: inertial coordinates with derivatives to the
// third order and roll with derivatives to the second, all exact.
struct AnalyticManeuver {
    // Each callable returns {value, d1, d2, d3} at time t (d3 unused for phi).
    std::function<std::array<double, 4>(double)> x;
    std::function<std::array<double, 4>(double)> y;
    std::function<std::array<double, 4>(double)> z;
    std::function<std::array<double, 3>(double)> phi;
};

// Uniformly sampled maneuver columns (header t, x_g, y_g, z_g, phi_rad).
struct SampledManeuver {
    std::vector<double> x, y, z, phi;
};

struct ManeuverInput {
    double duration_s = 0.0;
    double dt = 0.0;  // sampling step for sampled sources; 0 for analytic
    std::variant<AnalyticManeuver, SampledManeuver> source;

    bool analytic() const { return std::holds_alternative<AnalyticManeuver>(source); }
};

// The built-in benchmark maneuver: level northbound flight at 150 m/s and
// 5 km altitude with a 720 degree two-harmonic roll over 30 s.
ManeuverInput mirage_double_roll();

// Builds a maneuver by name ("mirage-double-roll"). Throws ConfigError for an
// unknown name.
ManeuverInput builtin_maneuver(const std::string& name);

// Loads a sampled maneuver from CSV (columns t, x_g, y_g, z_g, phi_rad; header
// mandatory; strictly uniform time). Throws ConfigError naming the first bad row.
ManeuverInput load_sampled(const std::string& path);

// Writes a maneuver sampled at dt to CSV with full double precision.
void export_sampled(const ManeuverInput& input, double dt, const std::string& path);

// Derivative computation route for pre-processing.
enum class DerivativePath {
    kAuto,   // exact for analytic sources, stencils for sampled ones
    kExact,  // analytic derivatives (requires an analytic source)
    kFdm,    // Table-style finite differences on the materialized columns
};

// The 27 per-station vectors produced by pre-processing (plus the optional air
// property channels).
struct KinematicTables {
    double dt = 0.0;
    std::size_t n_max = 0;

    std::vector<double> x, y, z, phi;
    std::vector<double> xd, yd, zd, phid;
    std::vector<double> xdd, ydd, zdd, phidd;
    std::vector<double> xddd, yddd, zddd;
    std::vector<double> V, Vd, Vdd;
    std::vector<double> h, rho, qbar;
    std::vector<double> theta_w, theta_wd, theta_wdd;
    std::vector<double> psi_w, psi_wd, psi_wdd;

    // Optional channels.
    std::vector<double> temperature, speed_of_sound, mach, alpha_equb;

    double t_at(std::size_t i) const { return static_cast<double>(i) * dt; }
};

// Everything the time loop needs at one (stage) time.
struct StageData {
    Jet2 phi;      // roll and its two derivatives
    Jet2 V;        // speed, accel, second derivative
    Jet2 theta_w;  // elevation flight-path angle jets
    Jet2 psi_w;    // azimuth flight-path angle jets
    Jet2 qbar;     // dynamic pressure jets
    double h = 0.0;
    double rho = 0.0;
};

// Pre-processed maneuver: the station tables plus a stage-time query (exact for
// analytic sources, linear interpolation of the tables otherwise).
class PreprocessedManeuver {
  public:
    PreprocessedManeuver(ManeuverInput input, const AirframeParams& params, DerivativePath path);

    const KinematicTables& tables() const { return tables_; }
    double dt() const { return tables_.dt; }
    std::size_t n_max() const { return tables_.n_max; }
    double duration() const { return input_.duration_s; }
    double alpha_equb() const { return alpha_equb_; }  // frozen at station 1

    StageData at(double t) const;

  private:
    StageData analytic_at(double t) const;
    StageData interpolated_at(double t) const;

    ManeuverInput input_;
    KinematicTables tables_;
    bool exact_ = false;  // stage queries follow the route that built the tables
    double h_ini_ = 0.0;
    double alpha_equb_ = 0.0;
};

// Runs the pre-processing stage: materializes the per-station vectors and
// validates the guards (altitude range, vertical flight, minimum speed).
PreprocessedManeuver preprocess(ManeuverInput input, const AirframeParams& params,
                                double dt, DerivativePath path = DerivativePath::kAuto,
                                double v_min = 1.0);

// Removes 2*pi jumps so a wrapped angle series becomes continuous.
void unwrap_angles(std::vector<double>& series);

}  // namespace invsim
