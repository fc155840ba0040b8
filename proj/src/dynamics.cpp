#include "dynamics.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"

namespace invsim::dyn {

Vec3 body_accels_from_euler(double phi, double theta, double phid, double thetad, double psid,
                            double phidd, double thetadd, double psidd) {
    const double sp = std::sin(phi), cp = std::cos(phi);
    const double st = std::sin(theta), ct = std::cos(theta);
    Vec3 a;
    a.x = phidd - ct * psid * thetad - st * psidd;
    a.y = -sp * thetad * phid + cp * thetadd - st * sp * psid * thetad + ct * cp * psid * phid +
          ct * sp * psidd;
    a.z = -st * cp * psid * thetad - ct * sp * psid * phid + ct * cp * psidd - cp * thetad * phid -
          sp * thetadd;
    return a;
}

Vec3 auxiliary_moments_from_accels(const InertiaDerived& in, const Vec3& a) {
    return {in.A * a.x - in.F * a.y - in.E * a.z,
            -in.F * a.x + in.B * a.y - in.D * a.z,
            -in.E * a.x - in.D * a.y + in.C * a.z};
}

double auxiliary_moment3_printed(const InertiaDerived& in, const Vec3& a) {
    // The denominator is exactly -T0 expanded term by term.
    const double denom = in.A * in.D * in.D + 2.0 * in.D * in.E * in.F - in.A * in.C * in.B +
                         in.F * in.F * in.C + in.E * in.E * in.B;
    return in.T0 * (a.y * in.D - a.z * in.C + a.x * in.E) / denom;
}

Vec3 auxiliary_moments(const InertiaDerived& in, double p, double q, double r, double L, double M,
                       double N) {
    return {(in.B - in.C) * q * r + (in.E * q - in.F * r) * p + (q * q - r * r) * in.D + L,
            (in.C - in.A) * r * p + (in.F * r - in.D * p) * q + (r * r - p * p) * in.E + M,
            (in.A - in.B) * p * q + (in.D * p - in.E * q) * r + (p * p - q * q) * in.F + N};
}

Vec3 rotational_accels_from_moments(const InertiaDerived& in, double p, double q, double r,
                                    double L, double M, double N) {
    if (!(in.T0 > 0.0)) throw ConfigError("rotational accels: inertia determinant not positive");
    const Vec3 T = auxiliary_moments(in, p, q, r, L, M, N);
    return {(in.BC_D2 * T.x + in.FC_ED * T.y + in.FD_EB * T.z) / in.T0,
            (in.AC_E2 * T.y + in.AD_EF * T.z + in.FC_ED * T.x) / in.T0,
            (in.AB_F2 * T.z + in.FD_EB * T.x + in.AD_EF * T.y) / in.T0};
}

Vec3 rotational_accels_symmetric(const InertiaDerived& in, double p, double q, double r, double L,
                                 double M, double N) {
    const double A = in.A, B = in.B, C = in.C, E = in.E;
    const double AC_E2 = A * C - E * E;
    if (!(AC_E2 > 0.0)) throw ConfigError("symmetric accels: AC - E^2 not positive");
    Vec3 a;
    a.x = ((B * C - E * E - C * C) * q * r + (A - B + C) * E * p * q + C * L + E * N) / AC_E2;
    a.y = (E * r * r - E * p * p + (C - A) * p * r + M) / B;
    a.z = ((A * A + E * E - A * B) * p * q + (B - A - C) * E * q * r + A * N + E * L) / AC_E2;
    return a;
}

Vec3 moments_from_auxiliary(const InertiaDerived& in, double p, double q, double r, const Vec3& T) {
    return {T.x - (in.B - in.C) * q * r - (in.E * q - in.F * r) * p - (q * q - r * r) * in.D,
            T.y - (in.C - in.A) * r * p - (in.F * r - in.D * p) * q - (r * r - p * p) * in.E,
            T.z - (in.A - in.B) * p * q - (in.D * p - in.E * q) * r - (p * p - q * q) * in.F};
}

namespace {

constexpr double kHorizontalSpeedGuard = 1e-3;  // m/s

void check_horizontal_speed(double xd, double yd) {
    if (std::sqrt(xd * xd + yd * yd) < kHorizontalSpeedGuard)
        throw NumericError(
            "vertical flight: horizontal speed below guard, flight-path azimuth undefined");
}

}  // namespace

FlightPath flight_path_from_inertial_rates(double xd, double yd, double zd) {
    check_horizontal_speed(xd, yd);
    FlightPath fp;
    fp.V = std::sqrt(xd * xd + yd * yd + zd * zd);
    fp.psi_w = std::atan2(yd, xd);
    fp.theta_w = std::atan2(-zd, std::sqrt(xd * xd + yd * yd));
    return fp;
}

FlightPathJets flight_path_jets(const Jet2& xd, const Jet2& yd, const Jet2& zd) {
    check_horizontal_speed(xd.v, yd.v);
    FlightPathJets out;
    const Jet2 horiz = hypot(xd, yd);
    out.V = sqrt(xd * xd + yd * yd + zd * zd);
    out.psi_w = atan2(yd, xd);
    out.theta_w = atan2(-zd, horiz);
    return out;
}

double vdot_explicit(double xd, double yd, double zd, double xdd, double ydd, double zdd) {
    const double V = std::sqrt(xd * xd + yd * yd + zd * zd);
    if (V == 0.0) throw NumericError("vdot_explicit: zero speed");
    return (xd * xdd + yd * ydd + zd * zdd) / V;
}

double psiw_dot_explicit(double xd, double yd, double xdd, double ydd) {
    check_horizontal_speed(xd, yd);
    return (ydd * xd - xdd * yd) / (xd * xd + yd * yd);
}

double thetaw_dot_explicit(double zdd, double vdot, double theta_w, double V) {
    if (V == 0.0) throw NumericError("thetaw_dot_explicit: zero speed");
    return -(zdd + vdot * std::sin(theta_w)) / (V * std::cos(theta_w));
}

namespace {

constexpr double kRateDeterminantGuard = 1e-8;

// Residual derivatives as an affine map of the two candidate derivatives of
// (theta, psi). d2_probe selects the d2 channel (second differentiation) over
// the d1 channel. Propagation through the jets is linear in the probed
// channel, so three evaluations recover the exact 2x2 system.
template <bool d2_probe>
Solve2Result solve_coupling(const CouplingState& cs) {
    auto residual = [&cs](double u1, double u2) {
        Jet2 theta, psi;
        if constexpr (d2_probe) {
            theta = Jet2{cs.theta, cs.thetad, u1};
            psi = Jet2{cs.psi, cs.psid, u2};
        } else {
            theta = Jet2{cs.theta, u1, 0.0};
            psi = Jet2{cs.psi, u2, 0.0};
        }
        auto [e1, e2] = flightpath_residuals<Jet2>(cs.phi, theta, psi, cs.alpha, cs.beta,
                                                   cs.theta_w, cs.psi_w);
        if constexpr (d2_probe)
            return std::pair<double, double>{e1.d2, e2.d2};
        else
            return std::pair<double, double>{e1.d1, e2.d1};
    };

    const auto r0 = residual(0.0, 0.0);
    const auto r1 = residual(1.0, 0.0);
    const auto r2 = residual(0.0, 1.0);
    const double a11 = r1.first - r0.first, a12 = r2.first - r0.first;
    const double a21 = r1.second - r0.second, a22 = r2.second - r0.second;
    const double det = a11 * a22 - a12 * a21;
    if (std::abs(det) < kRateDeterminantGuard)
        throw NumericError("attitude singularity: flight-path coupling determinant " +
                           std::to_string(det) + " below guard");
    Solve2Result res;
    res.det = det;
    res.x1 = (-r0.first * a22 + r0.second * a12) / det;
    res.x2 = (-a11 * r0.second + a21 * r0.first) / det;
    return res;
}

}  // namespace

Solve2Result euler_rates_from_flightpath(const CouplingState& cs) {
    return solve_coupling<false>(cs);
}

Solve2Result euler_accels_from_flightpath(const CouplingState& cs) {
    return solve_coupling<true>(cs);
}

}  // namespace invsim::dyn
