#include "forward_sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dynamics.hpp"
#include "errors.hpp"
#include "rk4.hpp"

namespace invsim {

namespace {

constexpr double kHalfPi = 1.5707963267948966;

double clamp_unit(double v, const char* what) {
    if (std::abs(v) > 1.0 + 1e-9)
        throw NumericError(std::string(what) + " sine argument " + std::to_string(v) +
                           " outside [-1, 1]");
    return std::clamp(v, -1.0, 1.0);
}

}  // namespace

ControlSource interpolate_controls(const ControlSeries& series, bool zero_order_hold) {
    if (series.size() < 2) throw ConfigError("control interpolation needs at least 2 stations");
    const double dt = series.dt;
    const double t_end = series.t.back();
    return [&series, dt, t_end, zero_order_hold](double t) {
        if (t < -1e-9 || t > t_end + 1e-9)
            throw ConfigError("control lookup at t = " + std::to_string(t) +
                              " outside the series span [0, " + std::to_string(t_end) + "]");
        const double pos = std::clamp(t, 0.0, t_end) / dt;
        const std::size_t i0 =
            std::min(static_cast<std::size_t>(std::floor(pos)), series.size() - 2);
        const double w = zero_order_hold ? 0.0 : std::clamp(pos - static_cast<double>(i0), 0.0, 1.0);
        auto lerp = [&](const std::vector<double>& col) {
            return col[i0] + w * (col[i0 + 1] - col[i0]);
        };
        return ControlSample{lerp(series.thrust), lerp(series.delta_l), lerp(series.delta_m),
                             lerp(series.delta_n)};
    };
}

ForwardSimulator::ForwardSimulator(const AirframeParams& params, const ForwardOptions& options,
                                   double alpha_equb)
    : params_(params), inertia_(inertia_derived(params)), options_(options),
      alpha_equb_(alpha_equb) {}

std::array<double, 12> ForwardSimulator::derivatives(double t, const std::array<double, 12>& y,
                                                     const ControlSample& u) const {
    const double V = y[0], alpha = y[1], beta = y[2];
    const double phi = y[3], theta = y[4];
    const double p = y[6], q = y[7], r = y[8];
    const double z = y[11];

    if (V < options_.v_min)
        throw NumericError("forward: speed " + std::to_string(V) + " m/s below V_min at t = " +
                           std::to_string(t));
    const double guard = kHalfPi - options_.angle_guard;
    if (!(std::abs(alpha) < guard && std::abs(beta) < guard))
        throw NumericError("forward: wind angle inside the +-pi/2 guard at t = " +
                           std::to_string(t));
    if (!(std::abs(theta) < options_.pitch_guard))
        throw NumericError("forward: pitch " + std::to_string(theta) +
                           " rad beyond the formulation limit at t = " + std::to_string(t));

    const double h = params_.h_ini - z;
    const double rho = atmo::density(h);
    const double qbar = 0.5 * rho * V * V;

    const auto cf = force_coefficients<double>(params_, alpha, beta, alpha_equb_);
    const double sa = std::sin(alpha), ca = std::cos(alpha);
    const double sb = std::sin(beta), cb = std::cos(beta);
    const double sp = std::sin(phi), cp = std::cos(phi);
    const double st = std::sin(theta), ct = std::cos(theta);

    std::array<double, 12> d{};

    // x-wind momentum for the speed rate.
    d[0] = (qbar * params_.S * (cf.Cx * ca * cb + cf.Cy * sb + cf.Cz * sa * cb) +
            params_.m * atmo::kGravity * (ct * sp * sb - st * ca * cb + ct * cp * sa * cb) +
            u.thrust * ca * cb) /
           params_.m;
    d[1] = dyn::alpha_dot_expr<double>(params_, cf, alpha, beta, theta, phi, p, q, r, u.thrust, V,
                                       qbar);
    d[2] = dyn::beta_dot_expr<double>(params_, cf, alpha, beta, theta, phi, p, r, u.thrust, V,
                                      qbar);

    // Attitude rates by inverting the body-rate map.
    const double tt = std::tan(theta);
    d[3] = p + tt * (q * sp + r * cp);
    d[4] = q * cp - r * sp;
    d[5] = (q * sp + r * cp) / ct;

    // Rotational dynamics driven by the control moments.
    const auto mc = moment_coefficients_forward(params_, alpha, beta, p, q, r, V, u.delta_l,
                                                u.delta_m, u.delta_n);
    const double L = qbar * params_.S * params_.b * mc.Cl;
    const double M = qbar * params_.S * params_.c * mc.Cm;
    const double N = qbar * params_.S * params_.b * mc.Cn;
    const auto acc = dyn::rotational_accels_from_moments(inertia_, p, q, r, L, M, N);
    d[6] = acc.x;
    d[7] = acc.y;
    d[8] = acc.z;

    // Flight-path angles from the attitude/wind couplings, then position rates.
    const double s_thw =
        clamp_unit(st * ca * cb - ct * sp * sb - ct * cp * sa * cb, "forward theta_w");
    const double theta_w = std::asin(s_thw);
    const double c_thw = std::cos(theta_w);
    if (c_thw < 1e-6)
        throw NumericError("forward: vertical flight path at t = " + std::to_string(t));
    const double s_dpsi = clamp_unit((cp * sb - sp * sa * cb) / c_thw, "forward psi_w");
    const double psi_w = y[5] + std::asin(s_dpsi);
    d[9] = V * c_thw * std::cos(psi_w);
    d[10] = V * c_thw * std::sin(psi_w);
    d[11] = -V * s_thw;
    return d;
}

ForwardState ForwardSimulator::step(const ForwardState& s, double dt,
                                    const ControlSource& controls) const {
    const std::array<double, 12> y0 = {s.V, s.alpha, s.beta, s.phi, s.theta, s.psi,
                                       s.p, s.q,     s.r,    s.x,   s.y,     s.z};
    auto f = [&](double t, const std::array<double, 12>& y) {
        return derivatives(t, y, controls(t));
    };
    const auto y1 = rk4_advance<12>(f, s.t, dt, y0);
    ForwardState out;
    out.t = s.t + dt;
    out.V = y1[0];
    out.alpha = y1[1];
    out.beta = y1[2];
    out.phi = y1[3];
    out.theta = y1[4];
    out.psi = y1[5];
    out.p = y1[6];
    out.q = y1[7];
    out.r = y1[8];
    out.x = y1[9];
    out.y = y1[10];
    out.z = y1[11];
    return out;
}

RoundTripReport round_trip(const ManeuverInput& input, const ControlSeries& controls,
                           const AirframeParams& params, double pos_tol, double roll_tol,
                           const ForwardOptions& options) {
    if (controls.size() < 2) throw ConfigError("round_trip: control series too short");
    const double dt = controls.dt;
    if (controls.t.back() + dt * 0.5 < input.duration_s)
        throw ConfigError("round_trip: controls cover " + std::to_string(controls.t.back()) +
                          " s of a " + std::to_string(input.duration_s) + " s maneuver");

    const PreprocessedManeuver pre = preprocess(input, params, dt);
    const auto& tb = pre.tables();
    ForwardSimulator sim(params, options, pre.alpha_equb());
    const ControlSource u = interpolate_controls(controls, options.zero_order_hold);

    ForwardState s;
    s.t = 0.0;
    s.V = tb.V[0];
    s.alpha = 0.0;
    s.beta = 0.0;
    s.phi = tb.phi[0];
    s.theta = tb.theta_w[0];
    s.psi = tb.psi_w[0];
    const auto pqr = dyn::body_rates_from_euler<double>(tb.phi[0], s.theta, tb.phid[0], 0.0, 0.0);
    s.p = pqr[0];
    s.q = pqr[1];
    s.r = pqr[2];
    s.x = tb.x[0];
    s.y = tb.y[0];
    s.z = tb.z[0];

    RoundTripReport rep;
    double sum_sq = 0.0;
    const std::size_t n = pre.n_max();
    for (std::size_t i = 0;; ++i) {
        const double dx = s.x - tb.x[i], dy = s.y - tb.y[i], dz = s.z - tb.z[i];
        const double dev = std::sqrt(dx * dx + dy * dy + dz * dz);
        rep.max_pos_dev = std::max(rep.max_pos_dev, dev);
        sum_sq += dev * dev;
        rep.max_roll_dev = std::max(rep.max_roll_dev, std::abs(s.phi - tb.phi[i]));
        rep.max_speed_dev = std::max(rep.max_speed_dev, std::abs(s.V - tb.V[i]));
        if (i + 1 >= n) break;
        s = sim.step(s, dt, u);
        s.t = tb.t_at(i + 1);
    }
    rep.rms_pos_dev = std::sqrt(sum_sq / static_cast<double>(n));
    rep.pass = rep.max_pos_dev <= pos_tol && rep.max_roll_dev <= roll_tol;
    return rep;
}

}  // namespace invsim
