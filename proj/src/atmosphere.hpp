#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "jet.hpp"

namespace invsim::atmo {

// Universal constants of the ISA model as used throughout.
inline constexpr double kGravity = 9.81;              // m/s^2
inline constexpr double kLapseRate = 0.0065;          // K/m
inline constexpr double kGasConstant = 287.0;         // J/(kg K)
inline constexpr double kSeaLevelDensity = 1.225;     // kg/m^3
inline constexpr double kSeaLevelTemperature = 288.15;  // K
inline constexpr double kTropopauseAltitude = 11000.0;  // m
inline constexpr double kTropopauseDensity = 0.3636309;  // kg/m^3, at 11 km
inline constexpr double kTropopauseTemperature = 216.65;  // K
inline constexpr double kMaxAltitude = 20000.0;       // m, top of modelled tropopause
inline constexpr double kGamma = 1.4;
inline constexpr double kEarthRadius = 6371000.0;     // m

// g/(R*lambda) - 1, kept at full precision rather than the rounded 4.2586.
inline constexpr double troposphere_exponent() {
    return kGravity / (kGasConstant * kLapseRate) - 1.0;
}

// g/(Theta_tropopause * R): decay rate of the isothermal layer.
inline constexpr double tropopause_decay_rate() {
    return kGravity / (kTropopauseTemperature * kGasConstant);
}

inline void check_altitude(double h_m) {
    if (!(h_m >= 0.0 && h_m <= kMaxAltitude))
        throw std::domain_error("altitude " + std::to_string(h_m) +
                                " m outside the modelled layers [0, 20000] m");
}

// Troposphere density law evaluated without a layer check; valid h < 11 km.
template <class S>
S troposphere_density(const S& h_m) {
    using invsim::pow;
    using std::pow;
    return S(kSeaLevelDensity) *
           pow(S(1.0) - S(kLapseRate / kSeaLevelTemperature) * h_m, troposphere_exponent());
}

// Tropopause (isothermal layer) density law; the paper's benchmark extrapolates
// it to h = 0, so no layer check here either.
template <class S>
S tropopause_density(const S& h_m) {
    using invsim::exp;
    using std::exp;
    return S(kTropopauseDensity) *
           exp(S(-tropopause_decay_rate()) * (h_m - S(kTropopauseAltitude)));
}

namespace detail {
inline double value_of(double x) { return x; }
inline double value_of(const Jet2& x) { return x.v; }
}  // namespace detail

// Air density (kg/m^3) for geometric altitude in [0, 20000] m. h = 11000 m
// belongs to the tropopause branch; both branches agree there.
template <class S>
S density(const S& h_m) {
    check_altitude(detail::value_of(h_m));
    if (detail::value_of(h_m) < kTropopauseAltitude) return troposphere_density(h_m);
    return tropopause_density(h_m);
}

template <class S>
S temperature(const S& h_m) {
    check_altitude(detail::value_of(h_m));
    if (detail::value_of(h_m) < kTropopauseAltitude)
        return S(kSeaLevelTemperature) - S(kLapseRate) * h_m;
    return S(kTropopauseTemperature);
}

template <class S>
S speed_of_sound(const S& h_m) {
    using invsim::sqrt;
    using std::sqrt;
    return sqrt(S(kGamma * kGasConstant) * temperature(h_m));
}

double mach(double speed_m_s, double altitude_m);

// Geopotential altitude H for geometric altitude h, and its inverse.
double geopotential_of_geometric(double h_m);
double geometric_of_geopotential(double H_m);

// Percentage deviation between the two altitude kinds (symmetric relative form).
double altitude_percent_deviation(double h_m, double H_m);

}  // namespace invsim::atmo
