#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "invsim.h"

namespace {

const std::string kAirframe = std::string(INVSIM_SOURCE_DIR) + "/data/mirage3.json";

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("atmosphere sampling through the C surface") {
    invsim_atmo_sample s;
    REQUIRE(invsim_atmosphere_sample(5000.0, &s) == INVSIM_OK);
    CHECK(s.density_kg_m3 == doctest::Approx(0.735872).epsilon(1e-4));
    CHECK(s.temperature_K == doctest::Approx(255.65));
    CHECK(s.speed_of_sound_m_s == doctest::Approx(320.50).epsilon(2e-4));

    double mach = 0.0;
    REQUIRE(invsim_mach_number(150.0, 5000.0, &mach) == INVSIM_OK);
    CHECK(mach == doctest::Approx(0.4680).epsilon(1e-3));

    CHECK(invsim_atmosphere_sample(-10.0, &s) == INVSIM_ERR_NUMERIC);
    CHECK(std::string(invsim_last_error()).find("20000") != std::string::npos);
    CHECK(invsim_atmosphere_sample(1000.0, nullptr) == INVSIM_ERR_USAGE);
}

TEST_CASE("airframe and maneuver lifecycle") {
    invsim_airframe* af = nullptr;
    REQUIRE(invsim_airframe_load(kAirframe.c_str(), &af) == INVSIM_OK);
    REQUIRE(af != nullptr);

    invsim_airframe* bad = nullptr;
    CHECK(invsim_airframe_load("/nonexistent.json", &bad) == INVSIM_ERR_IO);
    CHECK(std::string(invsim_last_error()).find("/nonexistent.json") != std::string::npos);
    CHECK(invsim_airframe_parse("{\"m\": -1}", &bad) == INVSIM_ERR_IO);

    invsim_maneuver* m = nullptr;
    REQUIRE(invsim_maneuver_builtin("mirage-double-roll", &m) == INVSIM_OK);
    invsim_maneuver* unknown = nullptr;
    CHECK(invsim_maneuver_builtin("loop-the-loop", &unknown) == INVSIM_ERR_IO);

    invsim_maneuver_free(m);
    invsim_airframe_free(af);
}

TEST_CASE("run, columns, summary, CSV, plots and verification") {
    invsim_airframe* af = nullptr;
    REQUIRE(invsim_airframe_load(kAirframe.c_str(), &af) == INVSIM_OK);
    invsim_maneuver* m = nullptr;
    REQUIRE(invsim_maneuver_builtin("mirage-double-roll", &m) == INVSIM_OK);

    invsim_options opt;
    invsim_options_init(&opt);
    CHECK(opt.dt_s == 1e-3);
    opt.dt_s = 0.02;

    invsim_series* series = nullptr;
    REQUIRE(invsim_run(af, m, &opt, &series) == INVSIM_OK);
    const size_t rows = invsim_series_rows(series);
    CHECK(rows == 1501);

    std::vector<double> thrust(rows), t(rows);
    REQUIRE(invsim_series_column(series, "thrust_N", thrust.data(), rows) == INVSIM_OK);
    REQUIRE(invsim_series_column(series, "t_s", t.data(), rows) == INVSIM_OK);
    CHECK(thrust.front() == doctest::Approx(11543.0).epsilon(1e-3));
    CHECK(t.back() == doctest::Approx(30.0));
    CHECK(invsim_series_column(series, "bogus", thrust.data(), rows) == INVSIM_ERR_USAGE);
    CHECK(invsim_series_column(series, "thrust_N", thrust.data(), 3) == INVSIM_ERR_USAGE);

    invsim_summary sum;
    REQUIRE(invsim_series_summary(series, &sum) == INVSIM_OK);
    CHECK(sum.stations == rows);
    CHECK(sum.qbar_ini_pa == doctest::Approx(8278.56).epsilon(1e-3));
    CHECK(sum.alpha_equb_rad == doctest::Approx(0.110518).epsilon(1e-3));
    CHECK(sum.thrust_reversal == 0);

    const std::string csv = temp_path("invsim_capi_controls.csv");
    REQUIRE(invsim_series_write_csv(series, csv.c_str()) == INVSIM_OK);
    invsim_series* loaded = nullptr;
    REQUIRE(invsim_series_read_csv(csv.c_str(), &loaded) == INVSIM_OK);
    CHECK(invsim_series_rows(loaded) == rows);

    const std::string plots = temp_path("invsim_capi_plots");
    REQUIRE(invsim_series_write_plots(series, nullptr, plots.c_str()) == INVSIM_OK);
    int svg_count = 0;
    for (const auto& e : std::filesystem::directory_iterator(plots))
        if (e.path().extension() == ".svg") ++svg_count;
    CHECK(svg_count == 8);
    // A loaded series has no roll channels; plotting requires the maneuver.
    CHECK(invsim_series_write_plots(loaded, nullptr, plots.c_str()) == INVSIM_ERR_IO);
    CHECK(invsim_series_write_plots(loaded, m, plots.c_str()) == INVSIM_OK);

    invsim_verify_options vopt;
    invsim_verify_options_init(&vopt);
    vopt.max_pos_dev_m = 30.0;  // coarse dt needs slack
    vopt.max_roll_dev_deg = 2.0;
    invsim_verify_report rep;
    REQUIRE(invsim_verify(af, m, loaded, &vopt, &rep) == INVSIM_OK);
    CHECK(rep.max_pos_dev_m < 30.0);
    CHECK(rep.pass == 1);

    invsim_series_free(loaded);
    invsim_series_free(series);
    invsim_maneuver_free(m);
    invsim_airframe_free(af);
}

TEST_CASE("version string") {
    CHECK(std::strlen(invsim_version()) > 0);
}
