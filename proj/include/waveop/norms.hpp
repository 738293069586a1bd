#pragma once

#include <algorithm>
#include <climits>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "waveop/core.hpp"
#include "waveop/directions.hpp"
#include "waveop/grids.hpp"
#include "waveop/lfun.hpp"
#include "waveop/potentials.hpp"
#include "waveop/quadrature.hpp"

namespace waveop {

// ---------------------------------------------------------------------------
// B norm: sup over planes Pi of int |||delta_{Pi(s)} v||| ds, the sup
// approximated by a max over sampled unit normals. For radial potentials all
// normals agree and the per-normal spread is a consistency diagnostic.
// ---------------------------------------------------------------------------

struct BNormParams {
    int n_normals = 6;      // sampled plane normals (ignored for radial kinds)
    int n_s = 97;           // core offsets per normal
    SliceParams slice;
};

struct BNormResult {
    double value = 0;            // max over sampled normals
    double spread = 0;           // (max-min)/max across normals
    std::vector<double> per_normal;
};

namespace detail {

// Integral over s of a nonnegative decaying profile f(s): Simpson core of
// width set by probing the half-decay point, log-space Simpson geometric
// tail, and a fitted power-law remainder. Scale-covariant by construction.
template <class F>
double integrate_slice_profile(F&& f, int n_core, bool symmetric, double* tail_report = nullptr) {
    double f0 = f(0.0);
    if (f0 == 0.0) {
        for (double s : {0.5, 1.0, 2.0, 4.0}) f0 = std::max(f0, f(s));
        if (f0 == 0.0) return 0.0;
    }
    auto one_side = [&](double sign) {
        // locate the 0.3 decay point
        double s = 0.25;
        while (f(sign * s) > 0.3 * f0 && s < 1e5) s *= 1.5;
        while (f(sign * s) < 0.3 * f0 && s > 1e-5) s /= 1.5;
        double core = 8.0 * s;
        int n = n_core | 1;  // odd for Simpson
        double hds = core / (n - 1);
        std::vector<double> vals(n);
        parallel_for(std::size_t(n), [&](std::size_t i) { vals[i] = f(sign * double(i) * hds); });
        double acc = 0;
        for (int i = 0; i + 2 < n; i += 2) acc += hds / 3.0 * (vals[i] + 4 * vals[i + 1] + vals[i + 2]);
        // geometric tail, Simpson in u = log s
        const int tail_nodes = 17;
        double q = 1.35, du = std::log(q);
        std::vector<double> tv(tail_nodes);
        std::vector<double> ts(tail_nodes);
        for (int i = 0; i < tail_nodes; ++i) ts[i] = core * std::pow(q, i);
        parallel_for(std::size_t(tail_nodes), [&](std::size_t i) { tv[i] = f(sign * ts[i]) * ts[i]; });
        double tail = 0;
        for (int i = 0; i + 2 < tail_nodes; i += 2)
            tail += du / 3.0 * (tv[i] + 4 * tv[i + 1] + tv[i + 2]);
        // power-law remainder f ~ C s^{-p}
        double rem = 0;
        double fa = tv[tail_nodes - 3] / ts[tail_nodes - 3], fb = tv[tail_nodes - 1] / ts[tail_nodes - 1];
        if (fb > 0 && fa > fb) {
            double p = std::log(fa / fb) / (2 * du);
            if (p > 1.1) rem = fb * ts[tail_nodes - 1] / (p - 1.0);
        }
        if (tail_report) *tail_report += rem;
        return acc + tail + rem;
    };
    double total = one_side(+1.0);
    total += symmetric ? total : one_side(-1.0);
    return total;
}

// Radius where |v| drops to half its center value; scale-covariant and
// insensitive to tail decay rate (unlike support_radius).
inline double characteristic_radius(const Potential& v) {
    auto probe = [&](double r) {
        double m = 0;
        for (const Vec3& d : {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}})
            m = std::max(m, std::abs(v.eval(d * r)));
        return m;
    };
    double f0 = std::abs(v.eval({0, 0, 0}));
    if (f0 == 0) {
        double r_best = 1.0, m_best = 0;
        for (double r = 0.05; r < 1e4; r *= 1.3)
            if (probe(r) > m_best) { m_best = probe(r); r_best = r; }
        if (m_best == 0) return 1.0;
        return r_best;
    }
    double r = 0.05;
    while (probe(r) > 0.5 * f0 && r < 1e6) r *= 1.2;
    return r;
}

inline std::vector<Vec3> sample_normals(int n) {
    // golden-spiral hemisphere sample
    std::vector<Vec3> out;
    double golden = pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < n; ++i) {
        double z = (i + 0.5) / n;  // upper hemisphere suffices (antipodal planes equal)
        double r = std::sqrt(1.0 - z * z);
        double phi = golden * i;
        out.push_back({r * std::cos(phi), r * std::sin(phi), z});
    }
    return out;
}

}  // namespace detail

inline BNormResult b_norm(const Potential& v, BNormParams par = {}) {
    std::vector<Vec3> normals =
        v.is_radial() ? std::vector<Vec3>{{0, 0, 1}} : detail::sample_normals(par.n_normals);

    BNormResult res;
    res.per_normal.resize(normals.size(), 0.0);
    for (std::size_t jn = 0; jn < normals.size(); ++jn) {
        auto f = [&](double s) { return sliced_L(v, normals[jn], s, par.slice).norm; };
        res.per_normal[jn] = detail::integrate_slice_profile(f, par.n_s, v.is_radial());
    }
    res.value = *std::max_element(res.per_normal.begin(), res.per_normal.end());
    double mn = *std::min_element(res.per_normal.begin(), res.per_normal.end());
    res.spread = res.value > 0 ? (res.value - mn) / res.value : 0.0;
    return res;
}

// ---------------------------------------------------------------------------
// B* norm (the explicit Sobolev-type dominating norm):
//   sup_omega int sum_k 2^{k/2} || psi(2^{-k} x') v(x' + s omega) ||_{H^{1/2}} ds
// with a quintic-polynomial Littlewood-Paley bump psi supported in
// 1/2 <= |x'| <= 2.
// ---------------------------------------------------------------------------

// smooth step: 1 for t<=0, 0 for t>=1, quintic in between
inline double smooth_step_down(double t) {
    if (t <= 0) return 1.0;
    if (t >= 1) return 0.0;
    return 1.0 - t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
}

// chi(r) = 1 on r<=1, 0 on r>=2; psi(x) = chi(|x|) - chi(2|x|)
inline double lp_chi(double r) { return smooth_step_down(r - 1.0); }
inline double lp_psi(double r) { return lp_chi(r) - lp_chi(2.0 * r); }

struct BStarParams {
    int n_normals = 4;
    int n_s = 49;                // core offsets
    int k_min = -8, k_max = 7;   // dyadic window, shifted to the data scale
    bool auto_center = true;     // recenters the window on log2 of the data scale
    int grid_n = 64;             // per-scale 2D grid
    double grid_span = 6.0;      // box = grid_span * 2^k
};

struct BStarResult {
    double value = 0;
    double spread = 0;
    std::vector<double> per_normal;
    double tail_k = 0;  // contribution of the two boundary scales
};

inline BStarResult b_star_norm(const Potential& v, BStarParams par = {}) {
    int k_shift = 0;
    if (par.auto_center)
        k_shift = int(std::lround(std::log2(std::max(1e-9, detail::characteristic_radius(v)))));
    int k_lo = par.k_min + k_shift, k_hi = par.k_max + k_shift;
    std::vector<Vec3> normals =
        v.is_radial() ? std::vector<Vec3>{{0, 0, 1}} : detail::sample_normals(par.n_normals);

    BStarResult res;
    res.per_normal.resize(normals.size(), 0.0);
    for (std::size_t jn = 0; jn < normals.size(); ++jn) {
        Vec3 e1, e2;
        orthonormal_frame(normals[jn], e1, e2);
        auto term_at = [&](double s, int k) {
            Vec3 base = normals[jn] * s;
            double scale = std::pow(2.0, k);
            Field2D w(par.grid_n, 2 * par.grid_span * scale);
            w.fill([&](double a, double b) -> cplx {
                double rho = std::hypot(a, b);
                double psi = lp_psi(rho / scale);
                if (psi == 0.0) return 0.0;
                return psi * v.eval(base + e1 * a + e2 * b);
            });
            return std::pow(2.0, 0.5 * k) * w.h_half_norm();
        };
        auto profile = [&](double s) {
            double acc = 0, t_lo = 0, t_lo1 = 0, t_hi = 0, t_hi1 = 0;
            for (int k = k_lo; k <= k_hi; ++k) {
                double t = term_at(s, k);
                acc += t;
                if (k == k_lo) t_lo = t;
                if (k == k_lo + 1) t_lo1 = t;
                if (k == k_hi - 1) t_hi1 = t;
                if (k == k_hi) t_hi = t;
            }
            // geometric completion of the truncated dyadic sums
            if (t_lo1 > 0 && t_lo / t_lo1 < 0.95) acc += t_lo * (t_lo / t_lo1) / (1.0 - t_lo / t_lo1);
            if (t_hi1 > 0 && t_hi / t_hi1 < 0.95) acc += t_hi * (t_hi / t_hi1) / (1.0 - t_hi / t_hi1);
            return acc;
        };
        res.per_normal[jn] = detail::integrate_slice_profile(profile, par.n_s, v.is_radial());
        res.tail_k = std::max(res.tail_k, term_at(0.0, k_lo) + term_at(0.0, k_hi));
    }
    res.value = *std::max_element(res.per_normal.begin(), res.per_normal.end());
    double mn = *std::min_element(res.per_normal.begin(), res.per_normal.end());
    res.spread = res.value > 0 ? (res.value - mn) / res.value : 0.0;
    return res;
}

// ---------------------------------------------------------------------------
// Dyadic shell norms on R^3
//   homogeneous:  sum_{j in Z} 2^{j beta} || 1_{[2^j,2^{j+1}]} v ||_2
//   inhomogeneous: ||1_{|x|<=1} v||_2 + sum_{j>=0} ...
// ---------------------------------------------------------------------------

struct DyadicNormParams {
    int j_min = -24, j_max = 26;
    double tail_tol = 1e-10;
};

struct DyadicNormResult {
    double value = 0;
    std::vector<std::pair<int, double>> shells;
    double window_tail = 0;  // first/last shell contribution (window check)
};

namespace detail {

inline double shell_l2(const Potential& v, double a, double b) {
    if (v.is_radial()) {
        auto f = [&](double r) {
            double val = v.radial_value(r);
            return val * val * r * r;
        };
        int nseg = 8;
        double acc = 0;
        for (int s = 0; s < nseg; ++s)
            acc += adaptive_simpson(f, a + (b - a) * s / nseg, a + (b - a) * (s + 1) / nseg,
                                    1e-14 * std::max(1.0, std::abs(v.radial_value(a)) * a * a));
        return std::sqrt(4 * pi * acc);
    }
    const Field3D& f = v.grid_field();
    double acc = 0;
    for (int i = 0; i < f.n(); ++i)
        for (int j = 0; j < f.n(); ++j)
            for (int k = 0; k < f.n(); ++k) {
                double r = f.point(i, j, k).norm();
                if (r >= a && r < b) acc += std::norm(f.at(i, j, k));
            }
    double h = f.dx();
    return std::sqrt(acc * h * h * h);
}

}  // namespace detail

inline DyadicNormResult dyadic_norm(const Potential& v, double beta, bool homogeneous = true,
                                    DyadicNormParams par = {}) {
    DyadicNormResult res;
    if (!homogeneous) {
        double unit = detail::shell_l2(v, 0.0, 1.0);
        res.value += unit;
        res.shells.emplace_back(INT_MIN, unit);
    }
    int j_lo = homogeneous ? par.j_min : 0;
    double prev_peak = 0;
    for (int j = j_lo; j <= par.j_max; ++j) {
        double a = std::pow(2.0, j);
        double shell = detail::shell_l2(v, a, 2 * a);
        double term = std::pow(2.0, beta * j) * shell;
        res.shells.emplace_back(j, shell);
        res.value += term;
        prev_peak = std::max(prev_peak, term);
        if (j > 4 && term < par.tail_tol * prev_peak) break;  // decayed
    }
    if (res.shells.size() >= 2) {
        res.window_tail = std::pow(2.0, beta * res.shells.front().first) * res.shells.front().second +
                          std::pow(2.0, beta * res.shells.back().first) * res.shells.back().second;
        if (!homogeneous) res.window_tail = 0;
    }
    return res;
}

// ---------------------------------------------------------------------------
// Lorentz L^{3/2,1} norm of a radial potential via the decreasing
// rearrangement:  ||v|| = int_0^inf t^{2/3} v*(t) dt/t.
// ---------------------------------------------------------------------------

struct LorentzParams {
    int n_samples = 200000;
    double r_max = 0;  // 0 = auto
};

inline double lorentz_321_norm(const Potential& v, LorentzParams par = {}) {
    if (!v.is_radial()) throw DomainError("lorentz norm needs a radial potential");
    double r_max = par.r_max > 0 ? par.r_max : 4.0 * v.support_radius(1e-13);
    int n = par.n_samples;
    // geometric radial cells resolve the rearrangement near t = 0 where the
    // t^{-1/3} weight concentrates
    double r_min = r_max * 1e-7;
    double q = std::pow(r_max / r_min, 1.0 / n);
    std::vector<std::pair<double, double>> samp;  // (|v|, cell volume)
    samp.reserve(n + 1);
    double vol_prev = 4.0 / 3.0 * pi * r_min * r_min * r_min;
    samp.push_back({std::abs(v.radial_value(0.5 * r_min)), vol_prev});  // innermost ball
    double r = r_min;
    for (int i = 0; i < n; ++i) {
        double r_next = r * q;
        double vol_next = 4.0 / 3.0 * pi * r_next * r_next * r_next;
        samp.push_back({std::abs(v.radial_value(std::sqrt(r * r_next))), vol_next - vol_prev});
        r = r_next;
        vol_prev = vol_next;
    }
    std::sort(samp.begin(), samp.end(), [](auto& a, auto& b) { return a.first > b.first; });
    // int t^{-1/3} v*(t) dt with v* piecewise constant on volume cells
    double acc = 0, t0 = 0;
    for (auto& [val, w] : samp) {
        double t1 = t0 + w;
        acc += val * 1.5 * (std::pow(t1, 2.0 / 3.0) - std::pow(t0, 2.0 / 3.0));
        t0 = t1;
        if (val == 0) break;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Angular multiplier check in 2D: || xhat_i f ||_{H^{1/2}} / || f ||_{H^{1/2}}
// ---------------------------------------------------------------------------

struct AngularMultiplierResult {
    double ratio = 0;                 // || e^{i theta} f || / || f ||, the phase multiplier
    double ratio_x = 0, ratio_y = 0;  // componentwise cos/sin variants
    bool skipped = false;             // zero input
};

inline AngularMultiplierResult angular_multiplier_check(const Field2D& f) {
    double base = f.h_half_norm();
    AngularMultiplierResult res;
    if (base == 0) {
        res.skipped = true;
        return res;
    }
    Field2D g(f.n(), f.box_len()), gx(f.n(), f.box_len()), gy(f.n(), f.box_len());
    double h = f.dx();
    for (int i = 0; i < f.n(); ++i)
        for (int j = 0; j < f.n(); ++j) {
            double x = f.origin() + i * h, y = f.origin() + j * h;
            double r = std::hypot(x, y);
            double cx = r > 0 ? x / r : 0.0, cy = r > 0 ? y / r : 0.0;
            g.at(i, j) = cplx(cx, cy) * f.at(i, j);
            gx.at(i, j) = cx * f.at(i, j);
            gy.at(i, j) = cy * f.at(i, j);
        }
    res.ratio = g.h_half_norm() / base;
    res.ratio_x = gx.h_half_norm() / base;
    res.ratio_y = gy.h_half_norm() / base;
    return res;
}

// ---------------------------------------------------------------------------
// Norm report and the smallness gate
// ---------------------------------------------------------------------------

struct NormReport {
    double triple = 0;
    double triple_error = 0;
    double b = 0;
    double b_spread = 0;
    double b_star = 0;
    double dyadic_half = 0;
    std::optional<double> lorentz_321;
    double b_total = 0;  // ||.||_B + ||.||_{dyadic 1/2}, the gate quantity
};

struct NormReportParams {
    DirectionSet dirs = make_product_directions(8, 16);
    LParams lfun;
    BNormParams bnorm;
    BStarParams bstar;
    DyadicNormParams dyadic;
    bool with_bstar = true;
    bool with_lorentz = true;
};

inline NormReport compute_norm_report(const Potential& v, const NormReportParams& par = {}) {
    NormReport rep;
    LProfile L = compute_L(v, par.dirs, par.lfun);
    TripleNormResult tn = triple_norm(L);
    rep.triple = tn.value;
    rep.triple_error = tn.error_bar;
    BNormResult bn = b_norm(v, par.bnorm);
    rep.b = bn.value;
    rep.b_spread = bn.spread;
    if (par.with_bstar) rep.b_star = b_star_norm(v, par.bstar).value;
    rep.dyadic_half = dyadic_norm(v, 0.5, true, par.dyadic).value;
    if (par.with_lorentz && v.is_radial()) rep.lorentz_321 = lorentz_321_norm(v);
    rep.b_total = rep.b + rep.dyadic_half;
    return rep;
}

struct GateResult {
    bool pass = false;
    double margin = 0;        // b_total / c0
    double born_ratio = -1;   // filled when a contraction estimate is supplied
};

// Gate: ||V||_B + ||V||_{dyadic 1/2} <= c0, plus (when available) an
// empirical Born contraction ratio < 1.
inline GateResult smallness_gate(const NormReport& rep, double c0, double born_ratio = -1) {
    GateResult g;
    g.margin = c0 > 0 ? rep.b_total / c0 : std::numeric_limits<double>::infinity();
    g.born_ratio = born_ratio;
    g.pass = g.margin <= 1.0 && (born_ratio < 0 || born_ratio < 1.0);
    return g;
}

}  // namespace waveop
