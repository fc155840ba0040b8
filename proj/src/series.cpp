#include "series.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "errors.hpp"

namespace invsim {

namespace {

constexpr std::array<const char*, 14> kColumns = {
    "t_s",       "thrust_N",  "delta_l_rad", "delta_m_rad", "delta_n_rad",
    "alpha_rad", "beta_rad",  "theta_rad",   "psi_rad",     "L_Nm",
    "M_Nm",      "N_Nm",      "res_eq33",    "res_eq34"};

}  // namespace

void write_controls_csv(const ControlSeries& s, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw ConfigError("cannot write controls file: " + path);
    for (std::size_t c = 0; c < kColumns.size(); ++c)
        std::fprintf(f, "%s%s", kColumns[c], c + 1 < kColumns.size() ? "," : "\n");
    for (std::size_t i = 0; i < s.size(); ++i) {
        std::fprintf(f, "%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n",
                     s.t[i], s.thrust[i], s.delta_l[i], s.delta_m[i], s.delta_n[i], s.alpha[i],
                     s.beta[i], s.theta[i], s.psi[i], s.L[i], s.M[i], s.N[i], s.res33[i],
                     s.res34[i]);
    }
    std::fclose(f);
}

ControlSeries read_controls_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open controls file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw ConfigError("controls file is empty: " + path);
    {
        std::istringstream hs(line);
        std::string col;
        for (const char* want : kColumns) {
            if (!std::getline(hs, col, ','))
                throw ConfigError("controls header is missing column " + std::string(want));
            col.erase(std::remove_if(col.begin(), col.end(), ::isspace), col.end());
            if (col != want)
                throw ConfigError("controls header column \"" + col + "\" (expected \"" +
                                  std::string(want) + "\")");
        }
    }

    ControlSeries s;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::array<double, 14> vals{};
        std::string cell;
        for (std::size_t c = 0; c < vals.size(); ++c) {
            if (!std::getline(ls, cell, ','))
                throw ConfigError("controls row " + std::to_string(row) + ": expected 14 columns");
            try {
                vals[c] = std::stod(cell);
            } catch (const std::exception&) {
                throw ConfigError("controls row " + std::to_string(row) + ": bad number \"" + cell +
                                  "\"");
            }
        }
        s.t.push_back(vals[0]);
        s.thrust.push_back(vals[1]);
        s.delta_l.push_back(vals[2]);
        s.delta_m.push_back(vals[3]);
        s.delta_n.push_back(vals[4]);
        s.alpha.push_back(vals[5]);
        s.beta.push_back(vals[6]);
        s.theta.push_back(vals[7]);
        s.psi.push_back(vals[8]);
        s.L.push_back(vals[9]);
        s.M.push_back(vals[10]);
        s.N.push_back(vals[11]);
        s.res33.push_back(vals[12]);
        s.res34.push_back(vals[13]);
    }
    if (s.size() < 2) throw ConfigError("controls file has fewer than 2 rows");
    s.dt = s.t[1] - s.t[0];
    if (!(s.dt > 0.0)) throw ConfigError("controls file time must increase");
    return s;
}

namespace {

double mean(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

void abs_peak(const std::vector<double>& t, const std::vector<double>& v, double& peak,
              double& peak_time) {
    peak = 0.0;
    peak_time = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > peak) {
            peak = std::abs(v[i]);
            peak_time = t[i];
        }
    }
}

}  // namespace

Summary compute_summary(const ControlSeries& s) {
    if (s.size() == 0) throw ConfigError("compute_summary: empty series");
    Summary out;
    out.stations = s.size();
    out.dt = s.dt;
    out.alpha_equb = s.alpha_equb;

    out.thrust_initial = s.thrust.front();
    out.thrust_final = s.thrust.back();
    out.thrust_mean = mean(s.thrust);
    const auto [mn, mx] = std::minmax_element(s.thrust.begin(), s.thrust.end());
    out.thrust_min = *mn;
    out.thrust_min_time = s.t[static_cast<std::size_t>(mn - s.thrust.begin())];
    out.thrust_max = *mx;
    out.thrust_max_time = s.t[static_cast<std::size_t>(mx - s.thrust.begin())];
    out.thrust_reversal = out.thrust_min < 0.0;

    abs_peak(s.t, s.delta_l, out.max_abs_dl, out.max_abs_dl_time);
    abs_peak(s.t, s.delta_m, out.max_abs_dm, out.max_abs_dm_time);
    abs_peak(s.t, s.delta_n, out.max_abs_dn, out.max_abs_dn_time);
    out.mean_dl = mean(s.delta_l);
    out.mean_dm = mean(s.delta_m);
    out.mean_dn = mean(s.delta_n);

    const std::vector<double>& conv = s.alpha_conv.empty() ? s.alpha : s.alpha_conv;
    const auto [amn, amx] = std::minmax_element(conv.begin(), conv.end());
    const double shift = s.alpha_conv.empty() ? s.alpha_equb : 0.0;
    out.alpha_conv_min = *amn + shift;
    out.alpha_conv_max = *amx + shift;

    for (double r : s.res33) out.max_res33 = std::max(out.max_res33, std::abs(r));
    for (double r : s.res34) out.max_res34 = std::max(out.max_res34, std::abs(r));
    return out;
}

std::vector<Extremum> local_extrema(const std::vector<double>& t, const std::vector<double>& v,
                                    double prominence) {
    std::vector<Extremum> out;
    if (v.size() < 3) return out;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        const bool is_max = v[i] > v[i - 1] && v[i] >= v[i + 1];
        const bool is_min = v[i] < v[i - 1] && v[i] <= v[i + 1];
        if (!is_max && !is_min) continue;
        // Prominence against the closer of the two neighbouring candidates.
        double left = v[i], right = v[i];
        for (std::size_t j = i; j-- > 0;) {
            if (is_max) left = std::min(left, v[j]);
            else left = std::max(left, v[j]);
            if (std::abs(v[i] - left) >= prominence) break;
        }
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            if (is_max) right = std::min(right, v[j]);
            else right = std::max(right, v[j]);
            if (std::abs(v[i] - right) >= prominence) break;
        }
        if (std::abs(v[i] - left) >= prominence && std::abs(v[i] - right) >= prominence)
            out.push_back({i, t[i], v[i], is_max});
    }
    return out;
}

}  // namespace invsim
