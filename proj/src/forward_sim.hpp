#pragma once

#include <array>
#include <functional>

#include "airframe.hpp"
#include "series.hpp"
#include "trajectory.hpp"

namespace invsim {

// Independent forward 6-DOF state: wind state, attitude, body rates and
// inertial position. This formulation inverts the Euler-rate map directly, so
// it needs pitch bounded away from vertical.
struct ForwardState {
    double t = 0.0;
    double V = 0.0;
    double alpha = 0.0, beta = 0.0;
    double phi = 0.0, theta = 0.0, psi = 0.0;
    double p = 0.0, q = 0.0, r = 0.0;
    double x = 0.0, y = 0.0, z = 0.0;
};

struct ControlSample {
    double thrust = 0.0;
    double delta_l = 0.0, delta_m = 0.0, delta_n = 0.0;
};
using ControlSource = std::function<ControlSample(double)>;

// Linear interpolation of a control series over time; zero-order hold as an
// alternative for sensitivity studies.
ControlSource interpolate_controls(const ControlSeries& series, bool zero_order_hold = false);

struct ForwardOptions {
    double v_min = 1.0;
    double angle_guard = 1e-3;                 // alpha/beta guard from +-pi/2
    double pitch_guard = 85.0 * 0.017453292519943295;  // |theta| limit, rad
    bool zero_order_hold = false;
};

struct RoundTripReport {
    double max_pos_dev = 0.0;   // m, euclidean per station
    double rms_pos_dev = 0.0;   // m
    double max_roll_dev = 0.0;  // rad
    double max_speed_dev = 0.0;  // m/s, diagnostic
    bool pass = false;
};

class ForwardSimulator {
  public:
    ForwardSimulator(const AirframeParams& params, const ForwardOptions& options,
                     double alpha_equb);

    // One RK4 step of the 12-state system under the given control schedule.
    ForwardState step(const ForwardState& state, double dt, const ControlSource& controls) const;

    std::array<double, 12> derivatives(double t, const std::array<double, 12>& y,
                                       const ControlSample& u) const;

  private:
    AirframeParams params_;
    InertiaDerived inertia_;
    ForwardOptions options_;
    double alpha_equb_ = 0.0;
};

// Forward replay of a computed control series against the original maneuver,
// starting from the inverse solver's initial state. pos_tol in metres,
// roll_tol in radians.
RoundTripReport round_trip(const ManeuverInput& input, const ControlSeries& controls,
                           const AirframeParams& params, double pos_tol = 5.0,
                           double roll_tol = 0.017453292519943295,
                           const ForwardOptions& options = {});

}  // namespace invsim
