#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "waveop/core.hpp"

namespace waveop {

struct Rule1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre nodes/weights on [-1,1], Newton iteration on P_n.
inline Rule1D gauss_legendre(int n) {
    Rule1D rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double p0 = 0, p1 = 0;
        for (int it = 0; it < 100; ++it) {
            p0 = 1.0;
            p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

inline Rule1D gauss_legendre_on(int n, double a, double b) {
    Rule1D r = gauss_legendre(n);
    for (int i = 0; i < n; ++i) {
        r.nodes[i] = 0.5 * (a + b) + 0.5 * (b - a) * r.nodes[i];
        r.weights[i] *= 0.5 * (b - a);
    }
    return r;
}

// Adaptive Simpson on [a,b]; works for real or complex integrands.
template <class T, class Fn>
T adaptive_simpson_impl(Fn& f, double a, double b, T fa, T fm, T fb, T whole,
                        double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    T flm = f(lm), frm = f(rm);
    T left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    T right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    T delta = left + right - whole;
    if (depth <= 0) throw AccuracyError("adaptive quadrature: refinement depth exhausted");
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson_impl<T>(f, a, m, fa, flm, fm, left, tol * 0.5, depth - 1) +
           adaptive_simpson_impl<T>(f, m, b, fm, frm, fb, right, tol * 0.5, depth - 1);
}

template <class Fn>
auto adaptive_simpson(Fn&& f, double a, double b, double tol = 1e-10, int depth = 40) {
    using T = decltype(f(a));
    T fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    T whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson_impl<T>(f, a, b, fa, fm, fb, whole, tol, depth);
}

// Composite trapezoid weight for node i of n (uniform grid).
inline double trapezoid_weight(std::size_t i, std::size_t n) {
    return (i == 0 || i + 1 == n) ? 0.5 : 1.0;
}

template <class T>
T trapezoid_sum(const std::vector<T>& f, double h) {
    T s{};
    for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * trapezoid_weight(i, f.size());
    return s * h;
}

// Gregory end corrections of order 4: the plain Riemann sum h*sum f_k gets
// the boundary weights adjusted to (3/8, 7/6, 23/24) at both ends.
inline const double gregory4_delta[3] = {3.0 / 8.0 - 1.0, 7.0 / 6.0 - 1.0, 23.0 / 24.0 - 1.0};

}  // namespace waveop
