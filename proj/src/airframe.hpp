#pragma once

#include <string>
#include <variant>
#include <vector>

#include "atmosphere.hpp"
#include "jet.hpp"

namespace invsim {

// The 30 constant parameters describing the airplane and the trajectory start.
// Symbols follow the usual body-axes, stability-derivative conventions; every
// derivative multiplying an angle or deflection is per radian.
struct AirframeParams {
    double m = 0.0;   // mass, kg
    double S = 0.0;   // wing planform area, m^2
    double c = 0.0;   // mean aerodynamic chord, m
    double b = 0.0;   // wing span, m

    // Inertia tensor about body axes, kg m^2 (A,B,C moments; D,E,F products).
    double A = 0.0, B = 0.0, C = 0.0;
    double D = 0.0, E = 0.0, F = 0.0;

    // Force constants.
    double CL0 = 0.0, CLa = 0.0, CD0 = 0.0, KCD = 0.0, CCb = 0.0;
    // Longitudinal derivatives.
    double Cm0 = 0.0, Cma = 0.0, Cmq = 0.0, Cmdm = 0.0;
    // Lateral derivatives.
    double Clb = 0.0, Clp = 0.0, Clr = 0.0, Cldl = 0.0, Cldn = 0.0;
    // Directional derivatives.
    double Cnb = 0.0, Cnp = 0.0, Cnr = 0.0, Cndl = 0.0, Cndn = 0.0;

    double h_ini = 0.0;  // initial altitude above MSL, m

    // Control inversion determinant of the aileron/rudder pair.
    double control_determinant() const { return Cldl * Cndn - Cldn * Cndl; }
};

// Throws ConfigError when a parameter set violates the physical invariants
// (positive mass/geometry, positive definite inertia, invertible controls).
void validate(const AirframeParams& p);

// Load/save the 30 constants from a UTF-8 JSON document keyed by the lowercase
// symbol names ("m", "s", "c", "b", "a_xx".."f_xy", "cl0", ..., "h_ini").
AirframeParams load_airframe_json(const std::string& path);
AirframeParams parse_airframe_json(const std::string& json_text);

// Determinant of the inertia tensor and the adjugate products appearing in the
// rotational equations, computed once per airframe.
struct InertiaDerived {
    double A = 0.0, B = 0.0, C = 0.0, D = 0.0, E = 0.0, F = 0.0;
    double T0 = 0.0;  // det of [[A,-F,-E],[-F,B,-D],[-E,-D,C]], kg^3 m^6
    // Adjugate rows (symmetric): (p,q,r)dot = adj/T0 * (T1,T2,T3).
    double BC_D2 = 0.0;  // BC - D^2
    double FC_ED = 0.0;  // FC + ED
    double FD_EB = 0.0;  // FD + EB
    double AC_E2 = 0.0;  // AC - E^2
    double AD_EF = 0.0;  // AD + EF
    double AB_F2 = 0.0;  // AB - F^2
};

InertiaDerived inertia_derived(const AirframeParams& p);

// Wind- and body-axes force coefficients at one flight condition.
template <class S>
struct AeroCoefficients {
    S CL, CD, CC;  // lift, drag, side force (wind axes)
    S Cx, Cy, Cz;  // body-axes projections
};

// Conventional equilibrium angle of attack (rad) for level flight at dynamic
// pressure qbar: the lift offset that balances weight.
double equilibrium_aoa(const AirframeParams& p, double qbar);

// Lift law with the frozen equilibrium offset, drag polar, side force, and the
// trigonometric body-axes projections. alpha/beta are the simulation angles.
template <class S>
AeroCoefficients<S> force_coefficients(const AirframeParams& p, const S& alpha, const S& beta,
                                       double alpha_equb) {
    using std::cos, std::sin;
    using invsim::cos, invsim::sin;
    AeroCoefficients<S> out;
    out.CL = S(p.CL0) + S(p.CLa) * (alpha + S(alpha_equb));
    out.CD = S(p.CD0) + S(p.KCD) * out.CL * out.CL;
    out.CC = S(p.CCb) * beta;
    const S ca = cos(alpha), sa = sin(alpha);
    const S cb = cos(beta), sb = sin(beta);
    out.Cx = -out.CD * ca * cb - out.CC * ca * sb + out.CL * sa;
    out.Cy = -out.CD * sb + out.CC * cb;
    out.Cz = -out.CD * sa * cb - out.CC * sa * sb - out.CL * ca;
    return out;
}

// Body-axes moment coefficients from the stability-derivative expansions; the
// forward counterpart of the control extraction.
struct MomentCoefficients {
    double Cl = 0.0, Cm = 0.0, Cn = 0.0;
};

MomentCoefficients moment_coefficients_forward(const AirframeParams& p, double alpha, double beta,
                                               double roll_rate, double pitch_rate,
                                               double yaw_rate, double speed, double dl, double dm,
                                               double dn);

// Wing planform descriptions for the chord/aspect-ratio helpers.
struct RectangularWing {
    double chord = 0.0;
    double span = 0.0;
};
struct DeltaWing {
    double root_chord = 0.0;
    double span = 0.0;
};
struct SampledWing {
    // Local chord chi(zeta) sampled from the wing root (zeta = 0) to the tip
    // (zeta = span/2); integrated with the trapezoid rule.
    std::vector<double> zeta;
    std::vector<double> chord;
};
using ChordProfile = std::variant<RectangularWing, DeltaWing, SampledWing>;

struct WingGeometry {
    double area = 0.0;          // m^2
    double mac = 0.0;           // mean aerodynamic chord, m
    double smc = 0.0;           // standard mean chord, m
    double aspect_ratio = 0.0;  // b^2 / S
};

WingGeometry wing_geometry(const ChordProfile& profile);

}  // namespace invsim
