#include "trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "dynamics.hpp"
#include "errors.hpp"
#include "finite_diff.hpp"

namespace invsim {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t station_count(double duration, double dt) {
    if (!(dt > 0.0)) throw ConfigError("preprocess: dt must be positive");
    if (!(duration > 0.0)) throw ConfigError("preprocess: duration must be positive");
    const double n_real = duration / dt + 1.0;
    const double n_round = std::round(n_real);
    if (std::abs(n_real - n_round) > 1e-6)
        throw ConfigError("preprocess: duration must be an integer number of steps (t_max/dt + 1 = " +
                          std::to_string(n_real) + ")");
    return static_cast<std::size_t>(n_round);
}

}  // namespace

ManeuverInput mirage_double_roll() {
    ManeuverInput input;
    input.duration_s = 30.0;
    AnalyticManeuver m;
    m.x = [](double t) { return std::array<double, 4>{150.0 * t, 150.0, 0.0, 0.0}; };
    m.y = [](double) { return std::array<double, 4>{0.0, 0.0, 0.0, 0.0}; };
    m.z = [](double) { return std::array<double, 4>{-5000.0, 0.0, 0.0, 0.0}; };
    m.phi = [](double t) {
        const double w1 = kPi / 10.0, w2 = kPi / 30.0;
        const double phi = kPi / 4.0 * (8.0 + std::cos(w1 * t) - 9.0 * std::cos(w2 * t));
        const double phid = kPi * kPi / 40.0 * (-std::sin(w1 * t) + 3.0 * std::sin(w2 * t));
        const double phidd = kPi * kPi * kPi / 400.0 * (-std::cos(w1 * t) + std::cos(w2 * t));
        return std::array<double, 3>{phi, phid, phidd};
    };
    input.source = std::move(m);
    return input;
}

ManeuverInput builtin_maneuver(const std::string& name) {
    if (name == "mirage-double-roll") return mirage_double_roll();
    throw ConfigError("unknown maneuver \"" + name + "\" (available: mirage-double-roll)");
}

ManeuverInput load_sampled(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open trajectory file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw ConfigError("trajectory file is empty: " + path);
    {
        std::istringstream hs(line);
        std::string col;
        const std::array<std::string, 5> expected = {"t", "x_g", "y_g", "z_g", "phi_rad"};
        for (const auto& want : expected) {
            if (!std::getline(hs, col, ','))
                throw ConfigError("trajectory header must be t,x_g,y_g,z_g,phi_rad");
            col.erase(std::remove_if(col.begin(), col.end(), ::isspace), col.end());
            if (col != want)
                throw ConfigError("trajectory header column \"" + col + "\" (expected \"" + want +
                                  "\")");
        }
    }

    std::vector<double> t;
    SampledManeuver s;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::array<double, 5> vals{};
        std::string cell;
        for (std::size_t c = 0; c < 5; ++c) {
            if (!std::getline(ls, cell, ','))
                throw ConfigError("trajectory row " + std::to_string(row) + ": expected 5 columns");
            try {
                std::size_t pos = 0;
                vals[c] = std::stod(cell, &pos);
            } catch (const std::exception&) {
                throw ConfigError("trajectory row " + std::to_string(row) + ": bad number \"" +
                                  cell + "\"");
            }
            if (!std::isfinite(vals[c]))
                throw ConfigError("trajectory row " + std::to_string(row) + ": non-finite value");
        }
        t.push_back(vals[0]);
        s.x.push_back(vals[1]);
        s.y.push_back(vals[2]);
        s.z.push_back(vals[3]);
        s.phi.push_back(vals[4]);
    }
    if (t.size() < 5) throw ConfigError("trajectory needs at least 5 rows, got " +
                                        std::to_string(t.size()));
    if (t.front() != 0.0) throw ConfigError("trajectory must start at t = 0");

    const double dt = t[1] - t[0];
    if (!(dt > 0.0)) throw ConfigError("trajectory row 2: time must increase");
    for (std::size_t i = 1; i < t.size(); ++i) {
        const double step = t[i] - t[i - 1];
        if (!(step > 0.0))
            throw ConfigError("trajectory row " + std::to_string(i + 1) + ": time not increasing");
        if (std::abs(step - dt) > 1e-9)
            throw ConfigError("trajectory row " + std::to_string(i + 1) +
                              ": non-uniform time step (" + std::to_string(step) + " vs " +
                              std::to_string(dt) + ")");
    }

    ManeuverInput input;
    input.duration_s = t.back();
    input.dt = dt;
    input.source = std::move(s);
    return input;
}

void export_sampled(const ManeuverInput& input, double dt, const std::string& path) {
    const std::size_t n = station_count(input.duration_s, dt);
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw ConfigError("cannot write trajectory file: " + path);
    std::fprintf(f, "t,x_g,y_g,z_g,phi_rad\n");
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * dt;
        double x, y, z, phi;
        if (input.analytic()) {
            const auto& m = std::get<AnalyticManeuver>(input.source);
            x = m.x(t)[0];
            y = m.y(t)[0];
            z = m.z(t)[0];
            phi = m.phi(t)[0];
        } else {
            const auto& s = std::get<SampledManeuver>(input.source);
            if (std::abs(input.dt - dt) > 1e-12) {
                std::fclose(f);
                throw ConfigError("export_sampled: cannot resample a sampled maneuver");
            }
            x = s.x[i];
            y = s.y[i];
            z = s.z[i];
            phi = s.phi[i];
        }
        std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g\n", t, x, y, z, phi);
    }
    std::fclose(f);
}

void unwrap_angles(std::vector<double>& series) {
    double offset = 0.0;
    for (std::size_t i = 1; i < series.size(); ++i) {
        const double raw = series[i] + offset;
        double jump = raw - series[i - 1];
        while (jump > kPi) {
            offset -= 2.0 * kPi;
            jump -= 2.0 * kPi;
        }
        while (jump < -kPi) {
            offset += 2.0 * kPi;
            jump += 2.0 * kPi;
        }
        series[i] += offset;
    }
}

PreprocessedManeuver::PreprocessedManeuver(ManeuverInput input, const AirframeParams& params,
                                           DerivativePath path)
    : input_(std::move(input)), h_ini_(params.h_ini) {
    if (path == DerivativePath::kExact && !input_.analytic())
        throw ConfigError("preprocess: exact derivatives need an analytic source");

    KinematicTables& tb = tables_;
    const double dt = input_.dt;
    const std::size_t n = station_count(input_.duration_s, dt);
    tb.dt = dt;
    tb.n_max = n;

    auto resize_all = [n](auto&... cols) { (cols.resize(n), ...); };
    resize_all(tb.x, tb.y, tb.z, tb.phi, tb.xd, tb.yd, tb.zd, tb.phid, tb.xdd, tb.ydd, tb.zdd,
               tb.phidd, tb.xddd, tb.yddd, tb.zddd, tb.V, tb.Vd, tb.Vdd, tb.h, tb.rho, tb.qbar,
               tb.theta_w, tb.theta_wd, tb.theta_wdd, tb.psi_w, tb.psi_wd, tb.psi_wdd,
               tb.temperature, tb.speed_of_sound, tb.mach, tb.alpha_equb);

    exact_ = input_.analytic() && path != DerivativePath::kFdm;
    const bool exact = exact_;

    // Inputs and their derivatives (steps 3, 6, 7).
    if (input_.analytic()) {
        const auto& m = std::get<AnalyticManeuver>(input_.source);
        for (std::size_t i = 0; i < n; ++i) {
            const double t = tb.t_at(i);
            const auto xv = m.x(t), yv = m.y(t), zv = m.z(t);
            const auto pv = m.phi(t);
            tb.x[i] = xv[0];
            tb.y[i] = yv[0];
            tb.z[i] = zv[0];
            tb.phi[i] = pv[0];
            if (exact) {
                tb.xd[i] = xv[1];
                tb.yd[i] = yv[1];
                tb.zd[i] = zv[1];
                tb.xdd[i] = xv[2];
                tb.ydd[i] = yv[2];
                tb.zdd[i] = zv[2];
                tb.xddd[i] = xv[3];
                tb.yddd[i] = yv[3];
                tb.zddd[i] = zv[3];
                tb.phid[i] = pv[1];
                tb.phidd[i] = pv[2];
            }
        }
    } else {
        const auto& s = std::get<SampledManeuver>(input_.source);
        if (s.x.size() != n)
            throw ConfigError("preprocess: sampled series length " + std::to_string(s.x.size()) +
                              " does not match station count " + std::to_string(n));
        tb.x = s.x;
        tb.y = s.y;
        tb.z = s.z;
        tb.phi = s.phi;
    }

    if (!exact) {
        auto fdm = [dt](const std::vector<double>& col, int order) {
            return derivative(UniformSeries(dt, col), order).values;
        };
        tb.xd = fdm(tb.x, 1);
        tb.yd = fdm(tb.y, 1);
        tb.zd = fdm(tb.z, 1);
        tb.xdd = fdm(tb.x, 2);
        tb.ydd = fdm(tb.y, 2);
        tb.zdd = fdm(tb.z, 2);
        tb.xddd = fdm(tb.x, 3);
        tb.yddd = fdm(tb.y, 3);
        tb.zddd = fdm(tb.z, 3);
        tb.phid = fdm(tb.phi, 1);
        tb.phidd = fdm(tb.phi, 2);
    }

    // Steps 4-5 and 8-11: altitude, air properties, speed, path angles.
    for (std::size_t i = 0; i < n; ++i) {
        const double h = h_ini_ - tb.z[i];
        if (!(h >= 0.0 && h <= atmo::kMaxAltitude))
            throw NumericError("preprocess: altitude " + std::to_string(h) + " m at t = " +
                               std::to_string(tb.t_at(i)) + " s outside [0, 20000] m");
        tb.h[i] = h;
        tb.rho[i] = atmo::density(h);
        tb.temperature[i] = atmo::temperature(h);
        tb.speed_of_sound[i] = atmo::speed_of_sound(h);

        dyn::FlightPath fp;
        try {
            fp = dyn::flight_path_from_inertial_rates(tb.xd[i], tb.yd[i], tb.zd[i]);
        } catch (const NumericError& e) {
            throw NumericError(std::string(e.what()) + " at t = " + std::to_string(tb.t_at(i)) +
                               " s");
        }
        tb.V[i] = fp.V;
        tb.psi_w[i] = fp.psi_w;
        tb.theta_w[i] = fp.theta_w;
        tb.qbar[i] = 0.5 * tb.rho[i] * fp.V * fp.V;
        tb.mach[i] = fp.V / tb.speed_of_sound[i];
        tb.alpha_equb[i] = equilibrium_aoa(params, tb.qbar[i]);
    }
    unwrap_angles(tb.psi_w);

    // Steps 12-17: first and second derivatives of (V, psi_w, theta_w).
    if (exact) {
        const auto& m = std::get<AnalyticManeuver>(input_.source);
        for (std::size_t i = 0; i < n; ++i) {
            const double t = tb.t_at(i);
            const auto xv = m.x(t), yv = m.y(t), zv = m.z(t);
            const auto fp = dyn::flight_path_jets(Jet2{xv[1], xv[2], xv[3]},
                                                  Jet2{yv[1], yv[2], yv[3]},
                                                  Jet2{zv[1], zv[2], zv[3]});
            tb.Vd[i] = fp.V.d1;
            tb.Vdd[i] = fp.V.d2;
            tb.psi_wd[i] = fp.psi_w.d1;
            tb.psi_wdd[i] = fp.psi_w.d2;
            tb.theta_wd[i] = fp.theta_w.d1;
            tb.theta_wdd[i] = fp.theta_w.d2;
        }
    } else {
        auto fdm = [dt](const std::vector<double>& col, int order) {
            return derivative(UniformSeries(dt, col), order).values;
        };
        tb.Vd = fdm(tb.V, 1);
        tb.Vdd = fdm(tb.V, 2);
        tb.psi_wd = fdm(tb.psi_w, 1);
        tb.psi_wdd = fdm(tb.psi_w, 2);
        tb.theta_wd = fdm(tb.theta_w, 1);
        tb.theta_wdd = fdm(tb.theta_w, 2);
    }

    alpha_equb_ = tb.alpha_equb.front();
}

StageData PreprocessedManeuver::analytic_at(double t) const {
    const auto& m = std::get<AnalyticManeuver>(input_.source);
    const auto xv = m.x(t), yv = m.y(t), zv = m.z(t);
    const auto pv = m.phi(t);
    StageData sd;
    sd.phi = Jet2{pv[0], pv[1], pv[2]};
    const auto fp = dyn::flight_path_jets(Jet2{xv[1], xv[2], xv[3]}, Jet2{yv[1], yv[2], yv[3]},
                                          Jet2{zv[1], zv[2], zv[3]});
    sd.V = fp.V;
    sd.theta_w = fp.theta_w;
    sd.psi_w = fp.psi_w;
    const Jet2 h{h_ini_ - zv[0], -zv[1], -zv[2]};
    sd.h = h.v;
    const Jet2 rho = atmo::density(h);
    sd.rho = rho.v;
    sd.qbar = Jet2{0.5} * rho * sd.V * sd.V;
    return sd;
}

StageData PreprocessedManeuver::interpolated_at(double t) const {
    const KinematicTables& tb = tables_;
    const double pos = t / tb.dt;
    const std::size_t i0 = std::min(static_cast<std::size_t>(std::max(0.0, std::floor(pos))),
                                    tb.n_max - 2);
    const double w = std::clamp(pos - static_cast<double>(i0), 0.0, 1.0);
    auto lerp = [&](const std::vector<double>& col) {
        return col[i0] + w * (col[i0 + 1] - col[i0]);
    };

    StageData sd;
    sd.phi = Jet2{lerp(tb.phi), lerp(tb.phid), lerp(tb.phidd)};
    sd.V = Jet2{lerp(tb.V), lerp(tb.Vd), lerp(tb.Vdd)};
    sd.theta_w = Jet2{lerp(tb.theta_w), lerp(tb.theta_wd), lerp(tb.theta_wdd)};
    sd.psi_w = Jet2{lerp(tb.psi_w), lerp(tb.psi_wd), lerp(tb.psi_wdd)};
    const Jet2 h{lerp(tb.h), -lerp(tb.zd), -lerp(tb.zdd)};
    sd.h = h.v;
    const Jet2 rho = atmo::density(h);
    sd.rho = rho.v;
    sd.qbar = Jet2{0.5} * rho * sd.V * sd.V;
    return sd;
}

StageData PreprocessedManeuver::at(double t) const {
    const double tc = std::clamp(t, 0.0, input_.duration_s);
    return exact_ ? analytic_at(tc) : interpolated_at(tc);
}

PreprocessedManeuver preprocess(ManeuverInput input, const AirframeParams& params, double dt,
                                DerivativePath path, double v_min) {
    validate(params);
    if (input.analytic()) {
        if (!(dt > 0.0)) throw ConfigError("preprocess: dt must be positive");
        input.dt = dt;
    } else {
        if (dt > 0.0 && std::abs(dt - input.dt) > 1e-12)
            throw ConfigError("preprocess: requested dt " + std::to_string(dt) +
                              " does not match the sampled maneuver step " +
                              std::to_string(input.dt));
    }

    PreprocessedManeuver pre(std::move(input), params, path);
    const auto& V = pre.tables().V;
    for (std::size_t i = 0; i < V.size(); ++i)
        if (V[i] < v_min)
            throw NumericError("preprocess: speed " + std::to_string(V[i]) + " m/s at t = " +
                               std::to_string(pre.tables().t_at(i)) + " s below V_min " +
                               std::to_string(v_min));
    return pre;
}

}  // namespace invsim
