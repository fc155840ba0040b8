#pragma once

#include <array>
#include <cstddef>

namespace invsim {

// Classical fixed-step fourth-order Runge-Kutta advance for a state vector of
// static size. f(t, y) returns dy/dt.
template <std::size_t N, class F>
std::array<double, N> rk4_advance(F&& f, double t, double dt, const std::array<double, N>& y) {
    using State = std::array<double, N>;
    const auto axpy = [](const State& base, double scale, const State& dir) {
        State out;
        for (std::size_t i = 0; i < N; ++i) out[i] = base[i] + scale * dir[i];
        return out;
    };
    const State k1 = f(t, y);
    const State k2 = f(t + dt / 2.0, axpy(y, dt / 2.0, k1));
    const State k3 = f(t + dt / 2.0, axpy(y, dt / 2.0, k2));
    const State k4 = f(t + dt, axpy(y, dt, k3));
    State out;
    for (std::size_t i = 0; i < N; ++i)
        out[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

}  // namespace invsim
