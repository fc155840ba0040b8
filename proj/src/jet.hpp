#pragma once

#include <cmath>
#include <stdexcept>

namespace invsim {

// Order-2 truncated Taylor scalar: carries a value together with its first and
// second total time derivatives. Arithmetic propagates both derivatives through
// the chain and Leibniz rules, so evaluating a closed-form expression on Jet2
// inputs yields the expression's exact first and second time derivatives in the
// d1/d2 channels.
struct Jet2 {
    double v = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;

    Jet2() = default;
    Jet2(double value) : v(value) {}  // constant: zero derivatives
    Jet2(double value, double dot, double ddot) : v(value), d1(dot), d2(ddot) {}
};

inline Jet2 operator-(const Jet2& a) { return {-a.v, -a.d1, -a.d2}; }
inline Jet2 operator+(const Jet2& a, const Jet2& b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2}; }
inline Jet2 operator-(const Jet2& a, const Jet2& b) { return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2}; }

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
    return {a.v * b.v,
            a.d1 * b.v + a.v * b.d1,
            a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) {
    if (b.v == 0.0) throw std::domain_error("Jet2: division by a jet with zero value");
    const double v = a.v / b.v;
    const double d1 = (a.d1 - v * b.d1) / b.v;
    const double d2 = (a.d2 - 2.0 * d1 * b.d1 - v * b.d2) / b.v;
    return {v, d1, d2};
}

inline Jet2& operator+=(Jet2& a, const Jet2& b) { a = a + b; return a; }
inline Jet2& operator-=(Jet2& a, const Jet2& b) { a = a - b; return a; }
inline Jet2& operator*=(Jet2& a, const Jet2& b) { a = a * b; return a; }
inline Jet2& operator/=(Jet2& a, const Jet2& b) { a = a / b; return a; }

// Unary u(f): d1 = u'·f', d2 = u''·f'^2 + u'·f''.
inline Jet2 chain(double u, double du, double ddu, const Jet2& f) {
    return {u, du * f.d1, ddu * f.d1 * f.d1 + du * f.d2};
}

inline Jet2 sin(const Jet2& f) { return chain(std::sin(f.v), std::cos(f.v), -std::sin(f.v), f); }
inline Jet2 cos(const Jet2& f) { return chain(std::cos(f.v), -std::sin(f.v), -std::cos(f.v), f); }

inline Jet2 tan(const Jet2& f) {
    const double t = std::tan(f.v);
    const double s = 1.0 + t * t;
    return chain(t, s, 2.0 * t * s, f);
}

inline Jet2 exp(const Jet2& f) {
    const double e = std::exp(f.v);
    return chain(e, e, e, f);
}

inline Jet2 log(const Jet2& f) {
    if (f.v <= 0.0) throw std::domain_error("Jet2: log of non-positive value");
    return chain(std::log(f.v), 1.0 / f.v, -1.0 / (f.v * f.v), f);
}

inline Jet2 sqrt(const Jet2& f) {
    if (f.v < 0.0) throw std::domain_error("Jet2: sqrt of negative value");
    if (f.v == 0.0) throw std::domain_error("Jet2: sqrt derivative singular at zero");
    const double r = std::sqrt(f.v);
    return chain(r, 0.5 / r, -0.25 / (r * f.v), f);
}

inline Jet2 pow(const Jet2& f, double c) {
    if (f.v <= 0.0) throw std::domain_error("Jet2: pow requires positive base");
    const double p = std::pow(f.v, c);
    return chain(p, c * p / f.v, c * (c - 1.0) * p / (f.v * f.v), f);
}

inline Jet2 asin(const Jet2& f) {
    const double w = 1.0 - f.v * f.v;
    if (w <= 0.0) throw std::domain_error("Jet2: asin derivative singular at |value| >= 1");
    const double r = std::sqrt(w);
    return chain(std::asin(f.v), 1.0 / r, f.v / (w * r), f);
}

inline Jet2 atan(const Jet2& f) {
    const double w = 1.0 + f.v * f.v;
    return chain(std::atan(f.v), 1.0 / w, -2.0 * f.v / (w * w), f);
}

// Four-quadrant arctangent. theta' = (x y' - y x')/(x^2+y^2); the second
// derivative follows from differentiating the quotient (the x'y' cross terms
// cancel in the numerator's derivative).
inline Jet2 atan2(const Jet2& y, const Jet2& x) {
    const double D = x.v * x.v + y.v * y.v;
    if (D == 0.0) throw std::domain_error("Jet2: atan2 undefined at (0, 0)");
    const double N = x.v * y.d1 - y.v * x.d1;
    const double d1 = N / D;
    const double Ndot = x.v * y.d2 - y.v * x.d2;
    const double Ddot = 2.0 * (x.v * x.d1 + y.v * y.d1);
    const double d2 = (Ndot - d1 * Ddot) / D;
    return {std::atan2(y.v, x.v), d1, d2};
}

inline Jet2 hypot(const Jet2& a, const Jet2& b) { return sqrt(a * a + b * b); }

}  // namespace invsim
