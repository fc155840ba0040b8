#pragma once

#include <array>
#include <cstddef>

#include "airframe.hpp"
#include "dynamics.hpp"
#include "series.hpp"
#include "trajectory.hpp"

namespace invsim {

// The eight RK4-integrated variables plus the carried first derivatives.
struct SimState {
    double t = 0.0;
    double thrust = 0.0;          // N
    double alpha = 0.0, beta = 0.0;   // rad
    double psi = 0.0, theta = 0.0;    // rad
    double p = 0.0, q = 0.0, r = 0.0;  // rad/s
    double alpha_dot = 0.0, beta_dot = 0.0;
    double theta_dot = 0.0, psi_dot = 0.0;
};

struct SolverOptions {
    double dt = 1e-3;          // s
    double v_min = 1.0;        // m/s
    double angle_guard = 1e-3;  // rad from +-pi/2 for alpha/beta
    DerivativePath path = DerivativePath::kAuto;
};

// Everything derived algebraically from one state against the stage tables:
// the rates of all eight variables plus the acceleration-level quantities the
// control extraction needs.
struct StateRates {
    double thrust_dot = 0.0;
    double alpha_dot = 0.0, beta_dot = 0.0;
    double theta_dot = 0.0, psi_dot = 0.0;
    double alpha_dd = 0.0, beta_dd = 0.0;
    double theta_dd = 0.0, psi_dd = 0.0;
    dyn::Vec3 body_accels;       // (pdot, qdot, rdot)
    // Stabilizing pull of the integrated body rates toward their kinematic
    // values; identically zero along the consistent solution.
    dyn::Vec3 body_rate_sync;
    double thrust_algebraic = 0.0;  // value channel of the explicit thrust form
};

// Per-station extraction record (time-loop actions 6-10).
struct StationRecord {
    double delta_l = 0.0, delta_m = 0.0, delta_n = 0.0;
    dyn::Vec3 moments;  // (L, M, N)
    MomentCoefficients coeffs;
    double res33 = 0.0, res34 = 0.0;
    StateRates rates;
};

struct RunResult {
    ControlSeries series;
    Summary summary;
};

class InverseSolver {
  public:
    InverseSolver(const AirframeParams& params, const SolverOptions& options);

    const SolverOptions& options() const { return options_; }

    // Equilibrium-aligned initial state at station 1.
    SimState initialize(const PreprocessedManeuver& pre) const;

    // The algebraic pipeline at one instant: rates from the momentum equations
    // and the differentiated flight-path couplings, thrust rate by jet
    // propagation, accelerations from the linear closure.
    StateRates evaluate(const PreprocessedManeuver& pre, double t,
                        const std::array<double, 8>& y) const;

    // One classical RK4 step from state_n to state_{n+1}.
    SimState step(const PreprocessedManeuver& pre, const SimState& state) const;

    // Control extraction at an accepted station.
    StationRecord extract(const PreprocessedManeuver& pre, const SimState& state) const;

    // Full run: pre-processing already done by the caller.
    RunResult run(const PreprocessedManeuver& pre) const;
    RunResult run(const ManeuverInput& input) const;

  private:
    std::array<double, 8> pack(const SimState& s) const;

    AirframeParams params_;
    InertiaDerived inertia_;
    SolverOptions options_;
};

}  // namespace invsim
