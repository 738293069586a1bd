#pragma once

#include <cmath>
#include <complex>

#include "waveop/core.hpp"

namespace waveop {

// Dawson integral F(x) = exp(-x^2) * int_0^x exp(t^2) dt, Rybicki's
// sampling-theorem expansion for large |x|, Maclaurin series near zero.
inline double dawson(double x) {
    const double ax = std::abs(x);
    if (ax < 0.2) {
        // F(x) = x - 2x^3/3 + 4x^5/15 - ...
        double x2 = x * x;
        return x * (1.0 + x2 * (-2.0 / 3.0 + x2 * (4.0 / 15.0 + x2 * (-8.0 / 105.0 + x2 * 16.0 / 945.0))));
    }
    constexpr int nmax = 14;
    constexpr double h = 0.25;
    static const struct Coef {
        double c[nmax];
        Coef() {
            for (int i = 0; i < nmax; ++i) {
                double t = (2.0 * i + 1.0) * h;
                c[i] = std::exp(-t * t);
            }
        }
    } coef;
    int n0 = 2 * int(0.5 * ax / h + 0.5);
    double xp = ax - n0 * h;
    double e1 = std::exp(2.0 * xp * h), e2 = e1 * e1;
    double d1 = n0 + 1, d2 = d1 - 2.0;
    double sum = 0.0;
    for (int i = 0; i < nmax; ++i, d1 += 2.0, d2 -= 2.0, e1 *= e2)
        sum += coef.c[i] * (e1 / d1 + 1.0 / (d2 * e1));
    double r = 0.5641895835477563 * std::exp(-xp * xp) * sum;  // 1/sqrt(pi)
    return x >= 0 ? r : -r;
}

// Faddeeva function w(x) = exp(-x^2) + 2i/sqrt(pi) * dawson(x) for real x.
inline cplx faddeeva_w(double x) {
    return {std::exp(-x * x), 1.1283791670955126 * dawson(x)};
}

// sqrt with the branch Im >= 0 (free resolvent decay branch).
inline cplx sqrt_upper(cplx z) {
    cplx r = std::sqrt(z);
    if (r.imag() < 0 || (r.imag() == 0 && r.real() < 0)) r = -r;
    return r;
}

}  // namespace waveop
