#pragma once

#include <cstddef>
#include <vector>

namespace invsim {

// Uniformly sampled time series f(t_n), n = 1..n_max (1-based in the math,
// 0-based in storage). Carrier for the second-order finite-difference stencils.
struct UniformSeries {
    double dt = 0.0;
    std::vector<double> values;

    UniformSeries() = default;
    UniformSeries(double step, std::vector<double> v);

    std::size_t size() const { return values.size(); }
};

// Differentiate a uniform series with second-order stencils: forward at the
// leading station(s), backward at the trailing ones, central elsewhere.
// order must be 1, 2 or 3. Throws ConfigError when the series is too short
// for the requested order (minimum lengths 3 / 4 / 6).
UniformSeries derivative(const UniformSeries& series, int order);

}  // namespace invsim
