#pragma once

#include <cmath>
#include <vector>

#include "waveop/core.hpp"
#include "waveop/quadrature.hpp"

namespace waveop {

// Spherical quadrature rule: unit directions with weights summing to 4*pi.
struct DirectionSet {
    std::vector<Vec3> dirs;
    std::vector<double> weights;
    int order = 0;  // spherical harmonics integrated exactly up to this degree

    std::size_t size() const { return dirs.size(); }

    double weight_sum() const {
        double s = 0;
        for (double w : weights) s += w;
        return s;
    }

    template <class Fn>
    auto integrate(Fn&& f) const {
        decltype(f(dirs[0])) s{};
        for (std::size_t j = 0; j < dirs.size(); ++j) s += weights[j] * f(dirs[j]);
        return s;
    }
};

// Product rule: Gauss-Legendre in cos(theta) x uniform phi.
inline DirectionSet make_product_directions(int n_theta, int n_phi) {
    if (n_theta < 1 || n_phi < 1) throw DomainError("direction rule orders must be positive");
    Rule1D gl = gauss_legendre(n_theta);
    DirectionSet ds;
    ds.order = std::min(2 * n_theta - 1, n_phi - 1);
    double wphi = 2 * pi / n_phi;
    for (int i = 0; i < n_theta; ++i) {
        double c = gl.nodes[i], s = std::sqrt(1.0 - c * c);
        for (int j = 0; j < n_phi; ++j) {
            double phi = (j + 0.5) * wphi;  // half-step offset avoids axis-aligned nodes
            ds.dirs.push_back({s * std::cos(phi), s * std::sin(phi), c});
            ds.weights.push_back(gl.weights[i] * wphi);
        }
    }
    return ds;
}

// Small Lebedev rules (6/14/26 points) for norm computations.
inline DirectionSet make_lebedev_directions(int n_points) {
    DirectionSet ds;
    auto add = [&](Vec3 v, double w) {
        ds.dirs.push_back(v.normalized());
        ds.weights.push_back(w * 4 * pi);
    };
    auto octa = [&](double w) {
        add({1, 0, 0}, w); add({-1, 0, 0}, w);
        add({0, 1, 0}, w); add({0, -1, 0}, w);
        add({0, 0, 1}, w); add({0, 0, -1}, w);
    };
    auto corners = [&](double w) {
        for (int sx : {-1, 1})
            for (int sy : {-1, 1})
                for (int sz : {-1, 1}) add({double(sx), double(sy), double(sz)}, w);
    };
    auto edges = [&](double w) {
        const int s[2] = {-1, 1};
        for (int a : s) for (int b : s) {
            add({double(a), double(b), 0}, w);
            add({double(a), 0, double(b)}, w);
            add({0, double(a), double(b)}, w);
        }
    };
    switch (n_points) {
        case 6: octa(1.0 / 6.0); ds.order = 3; break;
        case 14: octa(1.0 / 15.0); corners(3.0 / 40.0); ds.order = 5; break;
        case 26: octa(1.0 / 21.0); edges(4.0 / 105.0); corners(27.0 / 840.0); ds.order = 7; break;
        default: throw DomainError("lebedev rule available for 6, 14 or 26 points");
    }
    return ds;
}

}  // namespace waveop
