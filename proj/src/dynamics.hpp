#pragma once

#include <array>
#include <cmath>
#include <utility>

#include "airframe.hpp"
#include "atmosphere.hpp"
#include "jet.hpp"

namespace invsim::dyn {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

// ----- Euler-rate / body-rate maps -------------------------------------------

// Body angular velocity from Euler angles and rates:
//   p = phid - sin(theta) psid
//   q = cos(phi) thetad + cos(theta) sin(phi) psid
//   r = cos(theta) cos(phi) psid - sin(phi) thetad
template <class S>
std::array<S, 3> body_rates_from_euler(const S& phi, const S& theta, const S& phid,
                                       const S& thetad, const S& psid) {
    using std::cos, std::sin;
    using invsim::cos, invsim::sin;
    const S sp = sin(phi), cp = cos(phi);
    const S st = sin(theta), ct = cos(theta);
    return {phid - st * psid,
            cp * thetad + ct * sp * psid,
            ct * cp * psid - sp * thetad};
}

// Exact time derivatives of the body-rate map.
Vec3 body_accels_from_euler(double phi, double theta, double phid, double thetad, double psid,
                            double phidd, double thetadd, double psidd);

// ----- Rotational equations ---------------------------------------------------

// Auxiliary moments as the inertia-tensor product (T1,T2,T3) = I * (pdot,qdot,rdot).
Vec3 auxiliary_moments_from_accels(const InertiaDerived& in, const Vec3& accels);

// The published rearranged closed form for T3; equivalent to the product row.
double auxiliary_moment3_printed(const InertiaDerived& in, const Vec3& accels);

// Auxiliary moments from rates and total moments (general form).
Vec3 auxiliary_moments(const InertiaDerived& in, double p, double q, double r, double L, double M,
                       double N);

// Angular accelerations from moments via the adjugate rows (forward direction).
Vec3 rotational_accels_from_moments(const InertiaDerived& in, double p, double q, double r,
                                    double L, double M, double N);

// Symmetric-airplane special form (D = F = 0); equivalence cross-check.
Vec3 rotational_accels_symmetric(const InertiaDerived& in, double p, double q, double r, double L,
                                 double M, double N);

// Total moments from auxiliary moments and rates (rearranged definitions).
Vec3 moments_from_auxiliary(const InertiaDerived& in, double p, double q, double r, const Vec3& T);

// ----- Wind-axes momentum explicit forms -------------------------------------

// Thrust that balances the x-wind momentum equation. Singular at
// cos(alpha) cos(beta) -> 0; callers guard the angles.
template <class S>
S thrust_explicit(const AirframeParams& af, const AeroCoefficients<S>& cf, const S& alpha,
                  const S& beta, const S& theta, const S& phi, const S& Vdot, const S& qbar) {
    using std::cos, std::sin;
    using invsim::cos, invsim::sin;
    const S ca = cos(alpha), sa = sin(alpha);
    const S cb = cos(beta), sb = sin(beta);
    const S ct = cos(theta), st = sin(theta);
    const S cp = cos(phi), sp = sin(phi);
    const S aero = qbar * S(af.S) * (cf.Cx * ca * cb + cf.Cy * sb + cf.Cz * sa * cb);
    const S grav = S(af.m * atmo::kGravity) * (ct * sp * sb - st * ca * cb + ct * cp * sa * cb);
    return (S(af.m) * Vdot - aero - grav) / (ca * cb);
}

// Angle-of-attack rate from the z-wind momentum component.
template <class S>
S alpha_dot_expr(const AirframeParams& af, const AeroCoefficients<S>& cf, const S& alpha,
                 const S& beta, const S& theta, const S& phi, const S& p, const S& q, const S& r,
                 const S& thrust, const S& V, const S& qbar) {
    using std::cos, std::sin;
    using invsim::cos, invsim::sin;
    const S ca = cos(alpha), sa = sin(alpha);
    const S cb = cos(beta), sb = sin(beta);
    const S ct = cos(theta), st = sin(theta);
    const S cp = cos(phi);
    const S mV = S(af.m) * V;
    return (qbar * S(af.S) * (cf.Cz * ca - cf.Cx * sa) +
            S(af.m * atmo::kGravity) * (st * sa + ct * cp * ca) - thrust * sa +
            mV * (q * cb - r * sa * sb - p * ca * sb)) /
           (mV * cb);
}

// Sideslip rate from the y-wind momentum component.
template <class S>
S beta_dot_expr(const AirframeParams& af, const AeroCoefficients<S>& cf, const S& alpha,
                const S& beta, const S& theta, const S& phi, const S& p, const S& r,
                const S& thrust, const S& V, const S& qbar) {
    using std::cos, std::sin;
    using invsim::cos, invsim::sin;
    const S ca = cos(alpha), sa = sin(alpha);
    const S cb = cos(beta), sb = sin(beta);
    const S ct = cos(theta), st = sin(theta);
    const S cp = cos(phi), sp = sin(phi);
    const S mV = S(af.m) * V;
    return (qbar * S(af.S) * (cf.Cy * cb - cf.Cx * ca * sb - cf.Cz * sa * sb) +
            S(af.m * atmo::kGravity) * (ct * sp * cb + st * ca * sb - ct * cp * sa * sb) +
            thrust * ca * sb + mV * (-r * ca + p * sa)) /
           mV;
}

// ----- Flight-path angle relations --------------------------------------------

// Residuals of the two algebraic couplings between flight-path angles, Euler
// angles and wind angles; zero along any consistent state.
template <class S>
std::pair<S, S> flightpath_residuals(const S& phi, const S& theta, const S& psi, const S& alpha,
                                     const S& beta, const S& theta_w, const S& psi_w) {
    using std::cos, std::sin;
    using invsim::cos, invsim::sin;
    const S sa = sin(alpha), ca = cos(alpha);
    const S sb = sin(beta), cb = cos(beta);
    const S sp = sin(phi), cp = cos(phi);
    const S st = sin(theta), ct = cos(theta);
    const S e1 = cos(theta_w) * sin(psi_w - psi) - (cp * sb - sp * sa * cb);
    const S e2 = sin(theta_w) - (st * ca * cb - ct * sp * sb - ct * cp * sa * cb);
    return {e1, e2};
}

// Spherical flight-path coordinates from the inertial velocity components.
// Singular when the horizontal speed vanishes (vertical flight).
struct FlightPath {
    double V = 0.0;
    double psi_w = 0.0;
    double theta_w = 0.0;
};
FlightPath flight_path_from_inertial_rates(double xd, double yd, double zd);

struct FlightPathJets {
    Jet2 V, psi_w, theta_w;
};
// Jet version: feeds on velocity jets (value, accel, jerk) and yields the path
// coordinates with their first and second time derivatives.
FlightPathJets flight_path_jets(const Jet2& xd, const Jet2& yd, const Jet2& zd);

// Explicit first-derivative forms (repaired numerators); equivalent to the d1
// channels of flight_path_jets and used as cross-checks.
double vdot_explicit(double xd, double yd, double zd, double xdd, double ydd, double zdd);
double psiw_dot_explicit(double xd, double yd, double xdd, double ydd);
double thetaw_dot_explicit(double zdd, double vdot, double theta_w, double V);

// ----- Euler rates / accelerations from the differentiated couplings ----------

// Everything the differentiated flight-path couplings need at one instant.
// Angles as order-2 jets; theta/psi jets carry the unknowns' already-known
// lower-order derivatives.
struct CouplingState {
    Jet2 phi;      // roll with its table rates
    Jet2 alpha;    // (alpha, alphad, alphadd) as known so far
    Jet2 beta;
    Jet2 theta_w;  // table jets
    Jet2 psi_w;
    double theta = 0.0, psi = 0.0;
    double thetad = 0.0, psid = 0.0;  // used by the second-derivative solve
};

struct Solve2Result {
    double x1 = 0.0, x2 = 0.0;  // (thetad, psid) or (thetadd, psidd)
    double det = 0.0;
};

// First differentiation of the couplings: linear in (thetad, psid); solved as a
// 2x2 system. Throws NumericError (attitude singularity, reports determinant)
// when the system degenerates.
Solve2Result euler_rates_from_flightpath(const CouplingState& cs);

// Second differentiation with all lower-order rates and the wind-angle second
// derivatives known: linear in (thetadd, psidd).
Solve2Result euler_accels_from_flightpath(const CouplingState& cs);

}  // namespace invsim::dyn
