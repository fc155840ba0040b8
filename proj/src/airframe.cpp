#include "airframe.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "errors.hpp"

namespace invsim {

void validate(const AirframeParams& p) {
    auto fail = [](const std::string& msg) { throw ConfigError("airframe: " + msg); };
    if (!(p.m > 0.0)) fail("mass must be positive");
    if (!(p.S > 0.0)) fail("wing area must be positive");
    if (!(p.c > 0.0)) fail("mean aerodynamic chord must be positive");
    if (!(p.b > 0.0)) fail("wing span must be positive");
    if (!(p.A > 0.0 && p.B > 0.0 && p.C > 0.0)) fail("moments of inertia must be positive");
    // Positive definiteness via leading principal minors of the inertia tensor.
    const double m2 = p.A * p.B - p.F * p.F;
    const double m3 = p.A * p.B * p.C - p.A * p.D * p.D - p.B * p.E * p.E - p.C * p.F * p.F -
                      2.0 * p.D * p.E * p.F;
    if (!(m2 > 0.0 && m3 > 0.0)) fail("inertia tensor is not positive definite");
    if (p.CLa == 0.0) fail("lift slope CLa must be non-zero");
    if (p.Cmdm == 0.0) fail("elevator effectiveness Cmdm must be non-zero");
    if (p.control_determinant() == 0.0)
        fail("aileron/rudder inversion determinant Cldl*Cndn - Cldn*Cndl is zero");
    if (!(p.h_ini >= 0.0 && p.h_ini <= atmo::kMaxAltitude))
        fail("initial altitude outside [0, 20000] m");
}

namespace {

const std::map<std::string, double AirframeParams::*>& key_map() {
    static const std::map<std::string, double AirframeParams::*> keys = {
        {"m", &AirframeParams::m},       {"s", &AirframeParams::S},
        {"c", &AirframeParams::c},       {"b", &AirframeParams::b},
        {"a_xx", &AirframeParams::A},    {"b_yy", &AirframeParams::B},
        {"c_zz", &AirframeParams::C},    {"d_yz", &AirframeParams::D},
        {"e_xz", &AirframeParams::E},    {"f_xy", &AirframeParams::F},
        {"cl0", &AirframeParams::CL0},   {"cla", &AirframeParams::CLa},
        {"cd0", &AirframeParams::CD0},   {"kcd", &AirframeParams::KCD},
        {"ccb", &AirframeParams::CCb},   {"cm0", &AirframeParams::Cm0},
        {"cma", &AirframeParams::Cma},   {"cmq", &AirframeParams::Cmq},
        {"cmdm", &AirframeParams::Cmdm}, {"clb", &AirframeParams::Clb},
        {"clp", &AirframeParams::Clp},   {"clr", &AirframeParams::Clr},
        {"cldl", &AirframeParams::Cldl}, {"cldn", &AirframeParams::Cldn},
        {"cnb", &AirframeParams::Cnb},   {"cnp", &AirframeParams::Cnp},
        {"cnr", &AirframeParams::Cnr},   {"cndl", &AirframeParams::Cndl},
        {"cndn", &AirframeParams::Cndn}, {"h_ini", &AirframeParams::h_ini},
    };
    return keys;
}

}  // namespace

AirframeParams parse_airframe_json(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("airframe JSON parse failure: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("airframe JSON must be an object");

    AirframeParams p;
    const auto& keys = key_map();
    for (const auto& [key, member] : keys) {
        auto it = doc.find(key);
        if (it == doc.end()) throw ConfigError("airframe JSON missing key \"" + key + "\"");
        if (!it->is_number())
            throw ConfigError("airframe JSON key \"" + key + "\" must be a number");
        p.*member = it->get<double>();
    }
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (keys.find(it.key()) == keys.end())
            throw ConfigError("airframe JSON has unknown key \"" + it.key() + "\"");

    validate(p);
    return p;
}

AirframeParams load_airframe_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open airframe file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_airframe_json(buf.str());
}

InertiaDerived inertia_derived(const AirframeParams& p) {
    validate(p);
    InertiaDerived d;
    d.A = p.A;
    d.B = p.B;
    d.C = p.C;
    d.D = p.D;
    d.E = p.E;
    d.F = p.F;
    d.T0 = p.A * p.B * p.C - p.A * p.D * p.D - p.B * p.E * p.E - p.C * p.F * p.F -
           2.0 * p.D * p.E * p.F;
    d.BC_D2 = p.B * p.C - p.D * p.D;
    d.FC_ED = p.F * p.C + p.E * p.D;
    d.FD_EB = p.F * p.D + p.E * p.B;
    d.AC_E2 = p.A * p.C - p.E * p.E;
    d.AD_EF = p.A * p.D + p.E * p.F;
    d.AB_F2 = p.A * p.B - p.F * p.F;
    return d;
}

double equilibrium_aoa(const AirframeParams& p, double qbar) {
    if (!(qbar > 0.0)) throw NumericError("equilibrium_aoa: dynamic pressure must be positive");
    if (p.CLa == 0.0) throw ConfigError("equilibrium_aoa: CLa is zero");
    return (p.m * atmo::kGravity / (qbar * p.S) - p.CL0) / p.CLa;
}

MomentCoefficients moment_coefficients_forward(const AirframeParams& p, double alpha, double beta,
                                               double roll_rate, double pitch_rate,
                                               double yaw_rate, double speed, double dl, double dm,
                                               double dn) {
    if (!(speed > 0.0)) throw NumericError("moment coefficients: speed must be positive");
    const double bV = p.b / speed;
    const double cV = p.c / speed;
    MomentCoefficients out;
    out.Cl = p.Clb * beta + p.Clp * roll_rate * bV + p.Clr * yaw_rate * bV + p.Cldl * dl +
             p.Cldn * dn;
    out.Cm = p.Cm0 + p.Cma * alpha + p.Cmq * pitch_rate * cV + p.Cmdm * dm;
    out.Cn = p.Cnb * beta + p.Cnp * roll_rate * bV + p.Cnr * yaw_rate * bV + p.Cndl * dl +
             p.Cndn * dn;
    return out;
}

namespace {

WingGeometry from_integrals(double span, double chord_integral, double chord_sq_integral) {
    // Integrals over the half span; the planform is symmetric.
    const double area = 2.0 * chord_integral;
    if (!(area > 0.0)) throw std::domain_error("wing_geometry: zero planform area");
    WingGeometry g;
    g.area = area;
    g.mac = 2.0 * chord_sq_integral / area;
    g.smc = area / span;
    g.aspect_ratio = span * span / area;
    return g;
}

}  // namespace

WingGeometry wing_geometry(const ChordProfile& profile) {
    return std::visit(
        [](const auto& w) -> WingGeometry {
            using T = std::decay_t<decltype(w)>;
            if constexpr (std::is_same_v<T, RectangularWing>) {
                if (!(w.chord > 0.0 && w.span > 0.0))
                    throw std::domain_error("wing_geometry: rectangular wing needs positive size");
                const double half = w.span / 2.0;
                return from_integrals(w.span, w.chord * half, w.chord * w.chord * half);
            } else if constexpr (std::is_same_v<T, DeltaWing>) {
                if (!(w.root_chord > 0.0 && w.span > 0.0))
                    throw std::domain_error("wing_geometry: delta wing needs positive size");
                const double half = w.span / 2.0;
                // chi(zeta) = c_root (1 - zeta/half): integrals c_root*half/2, c_root^2*half/3.
                return from_integrals(w.span, w.root_chord * half / 2.0,
                                      w.root_chord * w.root_chord * half / 3.0);
            } else {
                if (w.zeta.size() != w.chord.size() || w.zeta.size() < 2)
                    throw std::domain_error("wing_geometry: sampled wing needs matched samples");
                if (w.zeta.front() != 0.0)
                    throw std::domain_error("wing_geometry: samples must start at the root");
                double ic = 0.0, ic2 = 0.0;
                for (std::size_t i = 1; i < w.zeta.size(); ++i) {
                    const double h = w.zeta[i] - w.zeta[i - 1];
                    if (!(h > 0.0))
                        throw std::domain_error("wing_geometry: zeta samples must increase");
                    ic += 0.5 * h * (w.chord[i] + w.chord[i - 1]);
                    ic2 += 0.5 * h *
                           (w.chord[i] * w.chord[i] + w.chord[i - 1] * w.chord[i - 1]);
                }
                return from_integrals(2.0 * w.zeta.back(), ic, ic2);
            }
        },
        profile);
}

}  // namespace invsim
