#include "finite_diff.hpp"

#include <string>

#include "errors.hpp"

namespace invsim {

UniformSeries::UniformSeries(double step, std::vector<double> v) : dt(step), values(std::move(v)) {
    if (dt <= 0.0) throw ConfigError("UniformSeries: dt must be positive");
    if (values.size() < 5)
        throw ConfigError("UniformSeries: need at least 5 samples, got " +
                          std::to_string(values.size()));
}

namespace {

std::size_t min_length(int order) {
    switch (order) {
        case 1: return 3;   // three-point end stencils
        case 2: return 4;   // four-point end stencils
        default: return 6;  // five-point end stencils at stations 1-2 and n-1..n
    }
}

}  // namespace

UniformSeries derivative(const UniformSeries& series, int order) {
    if (order < 1 || order > 3)
        throw ConfigError("derivative: order must be 1, 2 or 3, got " + std::to_string(order));
    const std::size_t n = series.size();
    if (n < min_length(order))
        throw ConfigError("derivative: order " + std::to_string(order) + " needs at least " +
                          std::to_string(min_length(order)) + " samples, got " + std::to_string(n));

    const double dt = series.dt;
    const std::vector<double>& f = series.values;
    UniformSeries out;
    out.dt = dt;
    out.values.assign(n, 0.0);

    switch (order) {
        case 1: {
            const double s = 1.0 / (2.0 * dt);
            out.values[0] = s * (-3.0 * f[0] + 4.0 * f[1] - f[2]);
            for (std::size_t i = 1; i + 1 < n; ++i) out.values[i] = s * (f[i + 1] - f[i - 1]);
            out.values[n - 1] = s * (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]);
            break;
        }
        case 2: {
            const double s = 1.0 / (dt * dt);
            out.values[0] = s * (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]);
            for (std::size_t i = 1; i + 1 < n; ++i)
                out.values[i] = s * (f[i + 1] - 2.0 * f[i] + f[i - 1]);
            out.values[n - 1] = s * (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]);
            break;
        }
        default: {
            const double s = 1.0 / (2.0 * dt * dt * dt);
            for (std::size_t i = 0; i < 2; ++i)
                out.values[i] = s * (-5.0 * f[i] + 18.0 * f[i + 1] - 24.0 * f[i + 2] +
                                     14.0 * f[i + 3] - 3.0 * f[i + 4]);
            for (std::size_t i = 2; i + 2 < n; ++i)
                out.values[i] = s * (f[i + 2] - 2.0 * f[i + 1] + 2.0 * f[i - 1] - f[i - 2]);
            for (std::size_t i = n - 2; i < n; ++i)
                out.values[i] = s * (5.0 * f[i] - 18.0 * f[i - 1] + 24.0 * f[i - 2] -
                                     14.0 * f[i - 3] + 3.0 * f[i - 4]);
            break;
        }
    }
    return out;
}

}  // namespace invsim
