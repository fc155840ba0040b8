#include "atmosphere.hpp"

namespace invsim::atmo {

double mach(double speed_m_s, double altitude_m) {
    if (speed_m_s < 0.0) throw std::domain_error("mach: speed must be non-negative");
    return speed_m_s / speed_of_sound(altitude_m);
}

double geopotential_of_geometric(double h_m) {
    check_altitude(h_m);
    return kEarthRadius * h_m / (kEarthRadius + h_m);
}

double geometric_of_geopotential(double H_m) {
    if (!(H_m >= 0.0 && H_m <= kMaxAltitude))
        throw std::domain_error("geopotential altitude " + std::to_string(H_m) +
                                " m outside [0, 20000] m");
    return kEarthRadius * H_m / (kEarthRadius - H_m);
}

double altitude_percent_deviation(double h_m, double H_m) {
    return 2.0 * std::abs(h_m - H_m) / (h_m + H_m) * 100.0;
}

}  // namespace invsim::atmo
