#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "atmosphere.hpp"
#include "jet.hpp"

namespace atmo = invsim::atmo;
using invsim::Jet2;

TEST_CASE("density golden values") {
    CHECK(atmo::density(0.0) == doctest::Approx(1.225).epsilon(1e-12));
    CHECK(atmo::density(5000.0) == doctest::Approx(0.735872).epsilon(1e-4));
    CHECK(atmo::density(10000.0) == doctest::Approx(0.412415).epsilon(1e-4));
    // Evaluated the isothermal-layer law by hand before the build.
    CHECK(atmo::density(15000.0) == doctest::Approx(0.1934567).epsilon(1e-4));
}

TEST_CASE("temperature golden values") {
    CHECK(atmo::temperature(0.0) == doctest::Approx(288.15));
    CHECK(atmo::temperature(5000.0) == doctest::Approx(255.65));
    CHECK(atmo::temperature(15000.0) == doctest::Approx(216.65));
    // Continuity at the layer boundary: 288.15 - 0.0065*11000 = 216.65.
    CHECK(atmo::temperature(11000.0 - 1e-9) == doctest::Approx(216.65).epsilon(1e-9));
}

TEST_CASE("speed of sound and Mach") {
    CHECK(atmo::speed_of_sound(5000.0) == doctest::Approx(320.50).epsilon(0.05 / 320.5));
    CHECK(atmo::speed_of_sound(0.0) == doctest::Approx(std::sqrt(1.4 * 287.0 * 288.15)).epsilon(1e-12));
    // Isothermal layer: sqrt(1.4*287*216.65) = 295.0423.
    for (double h : {11000.0, 14000.0, 20000.0})
        CHECK(atmo::speed_of_sound(h) == doctest::Approx(295.0423).epsilon(1e-4));
    CHECK(atmo::mach(150.0, 5000.0) == doctest::Approx(0.4680).epsilon(0.0005 / 0.468));
    CHECK(atmo::mach(0.0, 8000.0) == 0.0);
    CHECK(atmo::mach(320.50, 5000.0) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("density continuity at the tropopause") {
    const double below = atmo::density(11000.0 - 1e-6);
    const double above = atmo::density(11000.0 + 1e-6);
    CHECK(std::abs(below - above) < 1e-6);
    CHECK(atmo::density(11000.0) == doctest::Approx(0.3636309).epsilon(1e-6));
}

TEST_CASE("monotonicity over random altitude pairs") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> alt(0.0, 20000.0);
    for (int i = 0; i < 500; ++i) {
        double h1 = alt(rng), h2 = alt(rng);
        if (h1 > h2) std::swap(h1, h2);
        if (h2 - h1 < 1e-9) continue;
        CHECK(atmo::density(h1) > atmo::density(h2));
        CHECK(atmo::temperature(h1) >= atmo::temperature(h2));
    }
}

TEST_CASE("tropopause law extrapolated to sea level") {
    CHECK(atmo::tropopause_density(0.0) == doctest::Approx(2.0624).epsilon(0.001 / 2.0624));
}

TEST_CASE("isothermal decay rate matches the published constant") {
    CHECK(atmo::tropopause_decay_rate() ==
          doctest::Approx(1.5777145e-4).epsilon(1e-7));
}

TEST_CASE("geopotential conversions") {
    CHECK(atmo::geopotential_of_geometric(5000.0) == doctest::Approx(4996.079).epsilon(0.01 / 4996.0));
    CHECK(atmo::geopotential_of_geometric(10000.0) == doctest::Approx(9984.328).epsilon(0.01 / 9984.0));
    CHECK(atmo::geopotential_of_geometric(0.0) == 0.0);
    CHECK(atmo::altitude_percent_deviation(5000.0, 4996.079) == doctest::Approx(0.0785).epsilon(1e-2));

    std::mt19937 rng(17);
    std::uniform_real_distribution<double> alt(0.0, 20000.0);
    for (int i = 0; i < 200; ++i) {
        const double h = alt(rng);
        const double back = atmo::geometric_of_geopotential(atmo::geopotential_of_geometric(h));
        CHECK(std::abs(back - h) < 1e-9);
    }
}

TEST_CASE("out-of-range altitudes are rejected with the layer span") {
    CHECK_THROWS_WITH_AS((void)atmo::density(-1.0), doctest::Contains("[0, 20000]"),
                         std::domain_error);
    CHECK_THROWS_AS((void)atmo::density(20000.1), std::domain_error);
    CHECK_THROWS_AS((void)atmo::temperature(-0.5), std::domain_error);
    CHECK_THROWS_AS((void)atmo::speed_of_sound(25000.0), std::domain_error);
}

TEST_CASE("density propagates jets consistently with finite differences") {
    for (double h : {300.0, 5000.0, 10500.0, 13000.0, 19000.0}) {
        const Jet2 hj{h, -3.0, 0.5};  // descending with a slight pull-up
        const Jet2 rho = atmo::density(hj);
        const double eps = 1e-3;
        auto rho_at = [&](double dt) {
            return atmo::density(h - 3.0 * dt + 0.25 * dt * dt);
        };
        const double d1 = (rho_at(eps) - rho_at(-eps)) / (2.0 * eps);
        const double d2 = (rho_at(eps) - 2.0 * rho_at(0.0) + rho_at(-eps)) / (eps * eps);
        CHECK(rho.d1 == doctest::Approx(d1).epsilon(1e-6));
        CHECK(rho.d2 == doctest::Approx(d2).epsilon(1e-4));
    }
}
