#include "solver.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"
#include "rk4.hpp"

namespace invsim {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kControlDetGuard = 1e-9;

// Ridge parameter for the acceleration closure. The closure matrix
// degenerates quartically in the roll angle around wings-level equilibrium
// while the right-hand side vanishes with it; the ridge pulls the solution to
// zero there (where the true accelerations are equally tiny) and leaves the
// solve exact once the maneuver is active. Dimensionless: the matrix entries
// are pure coupling gains.
constexpr double kClosureRidge = 1e-5;

// Feedback gain (1/s) gluing the integrated body rates to the kinematic map.
// The raw shadow states carry a slowly unstable off-manifold mode; the pull
// term damps it without touching the on-manifold solution, where it vanishes.
constexpr double kBodyRateSyncGain = 10.0;

struct Mat2 {
    double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;
};

// Ridge-regularized least squares: x = (M^T M + ridge^2 I)^-1 M^T b.
std::array<double, 2> solve2_ridge(const Mat2& m, const std::array<double, 2>& b, double ridge) {
    const double g11 = m.a11 * m.a11 + m.a21 * m.a21 + ridge * ridge;
    const double g12 = m.a11 * m.a12 + m.a21 * m.a22;
    const double g22 = m.a12 * m.a12 + m.a22 * m.a22 + ridge * ridge;
    const double r1 = m.a11 * b[0] + m.a21 * b[1];
    const double r2 = m.a12 * b[0] + m.a22 * b[1];
    const double det = g11 * g22 - g12 * g12;
    return {(r1 * g22 - r2 * g12) / det, (g11 * r2 - g12 * r1) / det};
}

}  // namespace

InverseSolver::InverseSolver(const AirframeParams& params, const SolverOptions& options)
    : params_(params), inertia_(inertia_derived(params)), options_(options) {
    if (!(options_.dt > 0.0)) throw ConfigError("solver: dt must be positive");
    if (!(options_.v_min >= 0.1)) throw ConfigError("solver: v_min must be at least 0.1 m/s");
    if (!(options_.angle_guard > 0.0 && options_.angle_guard < 0.5))
        throw ConfigError("solver: angle guard must lie in (0, 0.5) rad");
}

std::array<double, 8> InverseSolver::pack(const SimState& s) const {
    return {s.thrust, s.alpha, s.beta, s.psi, s.theta, s.p, s.q, s.r};
}

StateRates InverseSolver::evaluate(const PreprocessedManeuver& pre, double t,
                                   const std::array<double, 8>& y) const {
    const double thrust = y[0], alpha = y[1], beta = y[2];
    const double psi = y[3], theta = y[4];
    const double p = y[5], q = y[6], r = y[7];

    const double guard = kHalfPi - options_.angle_guard;
    if (!(std::abs(alpha) < guard))
        throw NumericError("angle of attack " + std::to_string(alpha) + " rad inside the +-pi/2 guard");
    if (!(std::abs(beta) < guard))
        throw NumericError("sideslip " + std::to_string(beta) + " rad inside the +-pi/2 guard");

    const StageData sd = pre.at(t);
    if (sd.V.v < options_.v_min)
        throw NumericError("speed " + std::to_string(sd.V.v) + " m/s below V_min");

    const double alpha_equb = pre.alpha_equb();
    StateRates out;

    // Momentum-equation rates from the state values.
    {
        const auto cf = force_coefficients<double>(params_, alpha, beta, alpha_equb);
        out.alpha_dot = dyn::alpha_dot_expr<double>(params_, cf, alpha, beta, theta, sd.phi.v, p,
                                                    q, r, thrust, sd.V.v, sd.qbar.v);
        out.beta_dot = dyn::beta_dot_expr<double>(params_, cf, alpha, beta, theta, sd.phi.v, p, r,
                                                  thrust, sd.V.v, sd.qbar.v);
    }

    // Euler rates from the once-differentiated flight-path couplings.
    dyn::CouplingState cs;
    cs.phi = sd.phi;
    cs.alpha = Jet2{alpha, out.alpha_dot, 0.0};
    cs.beta = Jet2{beta, out.beta_dot, 0.0};
    cs.theta_w = sd.theta_w;
    cs.psi_w = sd.psi_w;
    cs.theta = theta;
    cs.psi = psi;
    {
        const auto rates = dyn::euler_rates_from_flightpath(cs);
        out.theta_dot = rates.x1;
        out.psi_dot = rates.x2;
    }
    cs.thetad = out.theta_dot;
    cs.psid = out.psi_dot;

    // Thrust rate: the explicit thrust expression propagated as a jet.
    const Jet2 alpha_j{alpha, out.alpha_dot, 0.0};
    const Jet2 beta_j{beta, out.beta_dot, 0.0};
    const Jet2 theta_j{theta, out.theta_dot, 0.0};
    const auto cf_j = force_coefficients<Jet2>(params_, alpha_j, beta_j, alpha_equb);
    {
        const Jet2 vdot_j{sd.V.d1, sd.V.d2, 0.0};
        const Jet2 texpr = dyn::thrust_explicit<Jet2>(params_, cf_j, alpha_j, beta_j, theta_j,
                                                      sd.phi, vdot_j, sd.qbar);
        out.thrust_algebraic = texpr.v;
        out.thrust_dot = texpr.d1;
    }

    // Acceleration closure. The twice-differentiated couplings are linear in
    // the candidate (thetadd, psidd); the wind-angle second derivatives feed
    // back through the body-rate derivatives inside the momentum expressions,
    // so the affine map is probed and solved as a 2x2 system.
    const Jet2 thrust_j{thrust, out.thrust_dot, 0.0};
    auto accel_residual = [&](double u1, double u2, StateRates& scratch) {
        scratch.body_accels = dyn::body_accels_from_euler(sd.phi.v, theta, sd.phi.d1,
                                                          out.theta_dot, out.psi_dot, sd.phi.d2,
                                                          u1, u2);
        const Jet2 p_j{p, scratch.body_accels.x, 0.0};
        const Jet2 q_j{q, scratch.body_accels.y, 0.0};
        const Jet2 r_j{r, scratch.body_accels.z, 0.0};
        scratch.alpha_dd = dyn::alpha_dot_expr<Jet2>(params_, cf_j, alpha_j, beta_j, theta_j,
                                                     sd.phi, p_j, q_j, r_j, thrust_j, sd.V,
                                                     sd.qbar)
                               .d1;
        scratch.beta_dd = dyn::beta_dot_expr<Jet2>(params_, cf_j, alpha_j, beta_j, theta_j,
                                                   sd.phi, p_j, r_j, thrust_j, sd.V, sd.qbar)
                              .d1;
        const Jet2 theta_j2{theta, out.theta_dot, u1};
        const Jet2 psi_j2{psi, out.psi_dot, u2};
        const Jet2 alpha_j2{alpha, out.alpha_dot, scratch.alpha_dd};
        const Jet2 beta_j2{beta, out.beta_dot, scratch.beta_dd};
        const auto [e1, e2] = dyn::flightpath_residuals<Jet2>(sd.phi, theta_j2, psi_j2, alpha_j2,
                                                              beta_j2, sd.theta_w, sd.psi_w);
        return std::array<double, 2>{e1.d2, e2.d2};
    };

    StateRates scratch = out;
    const auto r0 = accel_residual(0.0, 0.0, scratch);
    const auto r1 = accel_residual(1.0, 0.0, scratch);
    const auto r2 = accel_residual(0.0, 1.0, scratch);
    Mat2 m;
    m.a11 = r1[0] - r0[0];
    m.a12 = r2[0] - r0[0];
    m.a21 = r1[1] - r0[1];
    m.a22 = r2[1] - r0[1];
    const auto sol = solve2_ridge(m, {-r0[0], -r0[1]}, kClosureRidge);
    out.theta_dd = sol[0];
    out.psi_dd = sol[1];
    accel_residual(out.theta_dd, out.psi_dd, out);

    const auto pqr_kin = dyn::body_rates_from_euler<double>(sd.phi.v, theta, sd.phi.d1,
                                                            out.theta_dot, out.psi_dot);
    out.body_rate_sync = {kBodyRateSyncGain * (pqr_kin[0] - p),
                          kBodyRateSyncGain * (pqr_kin[1] - q),
                          kBodyRateSyncGain * (pqr_kin[2] - r)};
    return out;
}

SimState InverseSolver::initialize(const PreprocessedManeuver& pre) const {
    const StageData sd = pre.at(0.0);
    SimState s;
    s.t = 0.0;
    s.alpha = 0.0;
    s.beta = 0.0;
    s.psi = sd.psi_w.v;
    s.theta = sd.theta_w.v;

    const auto cf = force_coefficients<double>(params_, 0.0, 0.0, pre.alpha_equb());
    s.thrust = dyn::thrust_explicit<double>(params_, cf, 0.0, 0.0, s.theta, sd.phi.v, sd.V.d1,
                                            sd.qbar.v);

    // Body rates from the Euler-rate map with the actual initial roll rate and
    // zero pitch/yaw rates; all zero for an equilibrium start.
    const auto pqr = dyn::body_rates_from_euler<double>(sd.phi.v, s.theta, sd.phi.d1, 0.0, 0.0);
    s.p = pqr[0];
    s.q = pqr[1];
    s.r = pqr[2];

    s.alpha_dot = 0.0;
    s.beta_dot = 0.0;
    s.theta_dot = 0.0;
    s.psi_dot = 0.0;
    return s;
}

SimState InverseSolver::step(const PreprocessedManeuver& pre, const SimState& state) const {
    const double dt = pre.dt();
    int stage = 0;
    auto f = [&](double t, const std::array<double, 8>& y) {
        ++stage;
        try {
            const StateRates rr = evaluate(pre, t, y);
            return std::array<double, 8>{rr.thrust_dot,
                                         rr.alpha_dot,
                                         rr.beta_dot,
                                         rr.psi_dot,
                                         rr.theta_dot,
                                         rr.body_accels.x + rr.body_rate_sync.x,
                                         rr.body_accels.y + rr.body_rate_sync.y,
                                         rr.body_accels.z + rr.body_rate_sync.z};
        } catch (const NumericError& e) {
            throw NumericError("integration failure at t = " + std::to_string(t) + " s (stage " +
                               std::to_string(stage) + "): " + e.what());
        }
    };
    const auto y1 = rk4_advance<8>(f, state.t, dt, pack(state));

    SimState next;
    next.t = state.t + dt;
    next.thrust = y1[0];
    next.alpha = y1[1];
    next.beta = y1[2];
    next.psi = y1[3];
    next.theta = y1[4];
    next.p = y1[5];
    next.q = y1[6];
    next.r = y1[7];
    // Carried rates are refreshed from the algebraic pipeline by extract().
    next.alpha_dot = state.alpha_dot;
    next.beta_dot = state.beta_dot;
    next.theta_dot = state.theta_dot;
    next.psi_dot = state.psi_dot;
    return next;
}

StationRecord InverseSolver::extract(const PreprocessedManeuver& pre, const SimState& state) const {
    StationRecord rec;
    rec.rates = evaluate(pre, state.t, pack(state));

    const StageData sd = pre.at(state.t);
    const dyn::Vec3 aux = dyn::auxiliary_moments_from_accels(inertia_, rec.rates.body_accels);
    rec.moments = dyn::moments_from_auxiliary(inertia_, state.p, state.q, state.r, aux);

    const double qSb = sd.qbar.v * params_.S * params_.b;
    const double qSc = sd.qbar.v * params_.S * params_.c;
    rec.coeffs.Cl = rec.moments.x / qSb;
    rec.coeffs.Cm = rec.moments.y / qSc;
    rec.coeffs.Cn = rec.moments.z / qSb;

    const double bV = params_.b / sd.V.v;
    const double cV = params_.c / sd.V.v;
    rec.delta_m = (rec.coeffs.Cm - params_.Cm0 - params_.Cma * state.alpha -
                   params_.Cmq * state.q * cV) /
                  params_.Cmdm;

    const double det = params_.control_determinant();
    if (std::abs(det) < kControlDetGuard)
        throw NumericError("uncontrollable configuration: aileron/rudder determinant " +
                           std::to_string(det) + " below guard");
    const double cl_rhs = rec.coeffs.Cl - params_.Clb * state.beta - params_.Clp * state.p * bV -
                          params_.Clr * state.r * bV;
    const double cn_rhs = rec.coeffs.Cn - params_.Cnb * state.beta - params_.Cnp * state.p * bV -
                          params_.Cnr * state.r * bV;
    rec.delta_l = (params_.Cndn * cl_rhs - params_.Cldn * cn_rhs) / det;
    rec.delta_n = (params_.Cldl * cn_rhs - params_.Cndl * cl_rhs) / det;

    const auto [e1, e2] = dyn::flightpath_residuals<double>(sd.phi.v, state.theta, state.psi,
                                                            state.alpha, state.beta,
                                                            sd.theta_w.v, sd.psi_w.v);
    rec.res33 = e1;
    rec.res34 = e2;
    return rec;
}

RunResult InverseSolver::run(const PreprocessedManeuver& pre) const {
    const std::size_t n = pre.n_max();
    ControlSeries series;
    series.dt = pre.dt();
    series.alpha_equb = pre.alpha_equb();
    auto reserve_all = [n](auto&... cols) { (cols.reserve(n), ...); };
    reserve_all(series.t, series.thrust, series.delta_l, series.delta_m, series.delta_n,
                series.alpha, series.beta, series.alpha_conv, series.theta, series.psi, series.L,
                series.M, series.N, series.Cl, series.Cm, series.Cn, series.res33, series.res34,
                series.phi, series.phid, series.phidd);

    SimState state = initialize(pre);
    auto record = [&](const SimState& s) {
        const StationRecord rec = extract(pre, s);
        const StageData sd = pre.at(s.t);
        series.t.push_back(s.t);
        series.thrust.push_back(s.thrust);
        series.delta_l.push_back(rec.delta_l);
        series.delta_m.push_back(rec.delta_m);
        series.delta_n.push_back(rec.delta_n);
        series.alpha.push_back(s.alpha);
        series.beta.push_back(s.beta);
        series.alpha_conv.push_back(s.alpha + pre.alpha_equb());
        series.theta.push_back(s.theta);
        series.psi.push_back(s.psi);
        series.L.push_back(rec.moments.x);
        series.M.push_back(rec.moments.y);
        series.N.push_back(rec.moments.z);
        series.Cl.push_back(rec.coeffs.Cl);
        series.Cm.push_back(rec.coeffs.Cm);
        series.Cn.push_back(rec.coeffs.Cn);
        series.res33.push_back(rec.res33);
        series.res34.push_back(rec.res34);
        series.phi.push_back(sd.phi.v);
        series.phid.push_back(sd.phi.d1);
        series.phidd.push_back(sd.phi.d2);
        return rec;
    };

    {
        const StationRecord rec0 = record(state);
        state.alpha_dot = rec0.rates.alpha_dot;
        state.beta_dot = rec0.rates.beta_dot;
        state.theta_dot = rec0.rates.theta_dot;
        state.psi_dot = rec0.rates.psi_dot;
    }
    for (std::size_t i = 1; i < n; ++i) {
        state = step(pre, state);
        state.t = pre.tables().t_at(i);
        const StationRecord rec = record(state);
        state.alpha_dot = rec.rates.alpha_dot;
        state.beta_dot = rec.rates.beta_dot;
        state.theta_dot = rec.rates.theta_dot;
        state.psi_dot = rec.rates.psi_dot;
    }

    RunResult out;
    out.summary = compute_summary(series);
    const StageData sd0 = pre.at(0.0);
    out.summary.v_ini = sd0.V.v;
    out.summary.psi_w_ini = sd0.psi_w.v;
    out.summary.theta_w_ini = sd0.theta_w.v;
    out.summary.h_ini = sd0.h;
    out.summary.rho_ini = sd0.rho;
    out.summary.qbar_ini = sd0.qbar.v;
    out.summary.temperature_ini = atmo::temperature(sd0.h);
    out.summary.pressure_ini = sd0.rho * atmo::kGasConstant * out.summary.temperature_ini;
    out.summary.speed_of_sound_ini = atmo::speed_of_sound(sd0.h);
    out.summary.mach_ini = sd0.V.v / out.summary.speed_of_sound_ini;
    out.summary.alpha_equb = pre.alpha_equb();
    out.series = std::move(series);
    return out;
}

RunResult InverseSolver::run(const ManeuverInput& input) const {
    const PreprocessedManeuver pre =
        preprocess(input, params_, options_.dt, options_.path, options_.v_min);
    return run(pre);
}

}  // namespace invsim
