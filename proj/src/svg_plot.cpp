#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>

#include "errors.hpp"

namespace invsim {

namespace {

constexpr int kWidth = 720, kHeight = 480;
constexpr int kMarginLeft = 72, kMarginRight = 24, kMarginTop = 40, kMarginBottom = 56;
constexpr std::size_t kMaxPoints = 2500;

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void grow(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (!(hi > lo)) {
            lo -= 1.0;
            hi += 1.0;
        } else {
            const double m = 0.04 * (hi - lo);
            lo -= m;
            hi += m;
        }
    }
};

double nice_step(double span) {
    const double raw = span / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    if (frac < 1.5) return mag;
    if (frac < 3.5) return 2.0 * mag;
    if (frac < 7.5) return 5.0 * mag;
    return 10.0 * mag;
}

}  // namespace

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<PlotSeries>& series) {
    if (series.empty()) throw ConfigError("svg plot needs at least one series");
    Range rx, ry;
    for (const auto& s : series) {
        if (!s.x || !s.y || s.x->size() != s.y->size() || s.x->empty())
            throw ConfigError("svg plot series \"" + s.label + "\" is empty or mismatched");
        for (double v : *s.x) rx.grow(v);
        for (double v : *s.y) ry.grow(v);
    }
    rx.pad();
    ry.pad();

    const double px0 = kMarginLeft, px1 = kWidth - kMarginRight;
    const double py0 = kHeight - kMarginBottom, py1 = kMarginTop;
    auto sx = [&](double v) { return px0 + (v - rx.lo) / (rx.hi - rx.lo) * (px1 - px0); };
    auto sy = [&](double v) { return py0 + (v - ry.lo) / (ry.hi - ry.lo) * (py1 - py0); };

    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw ConfigError("cannot write plot file: " + path);
    std::fprintf(f,
                 "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
                 "viewBox=\"0 0 %d %d\">\n",
                 kWidth, kHeight, kWidth, kHeight);
    std::fprintf(f, "<rect width=\"%d\" height=\"%d\" fill=\"white\"/>\n", kWidth, kHeight);
    std::fprintf(f,
                 "<text x=\"%d\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                 "font-size=\"15\">%s</text>\n",
                 kWidth / 2, title.c_str());

    // Grid and ticks.
    const double xstep = nice_step(rx.hi - rx.lo);
    const double ystep = nice_step(ry.hi - ry.lo);
    for (double v = std::ceil(rx.lo / xstep) * xstep; v <= rx.hi + 1e-12; v += xstep) {
        std::fprintf(f,
                     "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#ddd\"/>\n",
                     sx(v), py0, sx(v), py1);
        std::fprintf(f,
                     "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\" "
                     "font-family=\"sans-serif\" font-size=\"11\">%g</text>\n",
                     sx(v), py0 + 18.0, v);
    }
    for (double v = std::ceil(ry.lo / ystep) * ystep; v <= ry.hi + 1e-12; v += ystep) {
        std::fprintf(f,
                     "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#ddd\"/>\n",
                     px0, sy(v), px1, sy(v));
        std::fprintf(f,
                     "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\" "
                     "font-family=\"sans-serif\" font-size=\"11\">%g</text>\n",
                     px0 - 6.0, sy(v) + 4.0, v);
    }
    std::fprintf(f,
                 "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" "
                 "stroke=\"black\"/>\n",
                 px0, py1, px1 - px0, py0 - py1);
    std::fprintf(f,
                 "<text x=\"%d\" y=\"%d\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                 "font-size=\"13\">%s</text>\n",
                 kWidth / 2, kHeight - 12, x_label.c_str());
    std::fprintf(f,
                 "<text x=\"18\" y=\"%d\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                 "font-size=\"13\" transform=\"rotate(-90 18 %d)\">%s</text>\n",
                 kHeight / 2, kHeight / 2, y_label.c_str());

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const std::size_t n = s.x->size();
        const std::size_t stride = std::max<std::size_t>(1, n / kMaxPoints);
        std::fprintf(f, "<polyline fill=\"none\" stroke=\"%s\" stroke-width=\"1.4\" points=\"",
                     s.color.c_str());
        for (std::size_t i = 0; i < n; i += stride)
            std::fprintf(f, "%.2f,%.2f ", sx((*s.x)[i]), sy((*s.y)[i]));
        if ((n - 1) % stride != 0)
            std::fprintf(f, "%.2f,%.2f", sx(s.x->back()), sy(s.y->back()));
        std::fprintf(f, "\"/>\n");
        if (series.size() > 1) {
            const double ly = py1 + 16.0 + 16.0 * static_cast<double>(k);
            std::fprintf(f,
                         "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"%s\" "
                         "stroke-width=\"2\"/>\n",
                         px0 + 8.0, ly, px0 + 30.0, ly, s.color.c_str());
            std::fprintf(f,
                         "<text x=\"%.1f\" y=\"%.1f\" font-family=\"sans-serif\" "
                         "font-size=\"12\">%s</text>\n",
                         px0 + 36.0, ly + 4.0, s.label.c_str());
        }
    }
    std::fprintf(f, "</svg>\n");
    std::fclose(f);
}

int write_run_plots(const ControlSeries& s, const std::string& dir) {
    if (s.size() == 0) throw ConfigError("plot emission needs a non-empty series");
    if (s.phi.size() != s.size())
        throw ConfigError("plot emission needs the roll channels (attach a maneuver)");
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create plot directory: " + dir);

    const double deg = 180.0 / M_PI;
    auto scaled = [&](const std::vector<double>& v, double k) {
        std::vector<double> out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * k;
        return out;
    };
    const auto phi_deg = scaled(s.phi, deg);
    const auto phid_deg = scaled(s.phid, deg);
    const auto phidd_deg = scaled(s.phidd, deg);
    const auto dn_deg = scaled(s.delta_n, deg);
    const auto dm_deg = scaled(s.delta_m, deg);
    const auto dl_deg = scaled(s.delta_l, deg);
    const auto alpha_deg = scaled(s.alpha, deg);
    const auto alpha_conv_deg =
        s.alpha_conv.empty() ? std::vector<double>{} : scaled(s.alpha_conv, deg);
    const auto beta_deg = scaled(s.beta, deg);
    const auto theta_deg = scaled(s.theta, deg);
    const auto psi_deg = scaled(s.psi, deg);

    int count = 0;
    auto emit = [&](const std::string& name, const std::string& title, const std::string& ylab,
                    std::vector<PlotSeries> ps) {
        write_svg_plot(dir + "/" + name, title, "time (s)", ylab, ps);
        ++count;
    };

    emit("roll_angle.svg", "Roll angle", "roll (deg)", {{"", "#d62728", &s.t, &phi_deg}});
    emit("roll_rates.svg", "Roll rate and acceleration", "deg/s, deg/s^2",
         {{"d(phi)/dt", "#1f77b4", &s.t, &phid_deg},
          {"d2(phi)/dt2", "#ff7f0e", &s.t, &phidd_deg}});
    emit("thrust.svg", "Thrust", "thrust (N)", {{"", "#2ca02c", &s.t, &s.thrust}});
    emit("rudder.svg", "Rudder deflection", "delta_n (deg)", {{"", "#9467bd", &s.t, &dn_deg}});
    emit("elevator_aileron.svg", "Elevator and aileron deflections", "deflection (deg)",
         {{"elevators", "#1f77b4", &s.t, &dm_deg}, {"ailerons", "#d62728", &s.t, &dl_deg}});
    {
        std::vector<PlotSeries> ps = {{"alpha", "#1f77b4", &s.t, &alpha_deg},
                                      {"beta", "#2ca02c", &s.t, &beta_deg}};
        if (!alpha_conv_deg.empty())
            ps.push_back({"conventional alpha", "#ff7f0e", &s.t, &alpha_conv_deg});
        emit("alpha_beta.svg", "Angle of attack and sideslip", "angle (deg)", ps);
    }
    emit("pitch_yaw.svg", "Pitch and yaw angles", "angle (deg)",
         {{"pitch", "#1f77b4", &s.t, &theta_deg}, {"yaw", "#d62728", &s.t, &psi_deg}});
    write_svg_plot(dir + "/orbit.svg", "Pitch vs yaw orbit", "yaw (deg)", "pitch (deg)",
                   {{"", "#17becf", &psi_deg, &theta_deg}});
    ++count;
    return count;
}

}  // namespace invsim
