#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "waveop/core.hpp"
#include "waveop/directions.hpp"
#include "waveop/fft.hpp"
#include "waveop/grids.hpp"
#include "waveop/potentials.hpp"
#include "waveop/quadrature.hpp"

namespace waveop {

// ---------------------------------------------------------------------------
// Half-line oscillatory integral  I(r) = int_0^inf h(tau) e^{i r tau / 2} dtau
// realized as a zero-padded FFT of the tau samples with Gregory (order 4)
// endpoint correction. Output grid: r_i = i * dr for i in [-N/2, N/2),
// dr = 4 pi / (N dtau).
// ---------------------------------------------------------------------------

struct HalfLineResult {
    RGrid rgrid;               // r_0 = -N/2 * dr
    std::vector<cplx> values;  // values[i] = I(rgrid.r(i))
};

inline HalfLineResult half_line_fourier(const std::vector<cplx>& h, double dtau, int n_fft) {
    int m = int(h.size());
    if (n_fft < m) throw DomainError("half_line_fourier: FFT size below sample count");
    std::vector<cplx> work(n_fft, cplx(0));
    for (int k = 0; k < m; ++k) work[k] = h[k];
    fft_1d(work, +1);

    HalfLineResult out;
    double dr = 4 * pi / (n_fft * dtau);
    out.rgrid = {-0.5 * n_fft * dr, dr, n_fft};
    out.values.resize(n_fft);
    for (int i = 0; i < n_fft; ++i) {
        int src = (i + n_fft / 2) % n_fft;  // reorder so r increases
        out.values[i] = work[src] * dtau;
    }
    // Gregory corrections at both ends (right end is usually decayed).
    for (int i = 0; i < n_fft; ++i) {
        double r = out.rgrid.r(i);
        cplx corr = 0;
        for (int q = 0; q < 3; ++q) {
            double tau_l = q * dtau, tau_r = (m - 1 - q) * dtau;
            corr += gregory4_delta[q] * (h[q] * std::exp(cplx(0, 0.5 * r * tau_l)) +
                                         h[m - 1 - q] * std::exp(cplx(0, 0.5 * r * tau_r)));
        }
        out.values[i] += corr * dtau;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sampled ray transform L(r, omega) per direction, with r^{-2} tail model
// beyond the computed window.
// ---------------------------------------------------------------------------

struct LParams {
    double tol = 1e-9;      // tau truncation: |Vhat| tau below tol * peak
    int n_tau = 2048;       // samples on [0, tau_max]
    int oversample = 4;     // FFT size = oversample * n_tau
    double tau_max = 0;     // 0 = auto from potential decay
};

class LProfile {
  public:
    DirectionSet dirs;
    RGrid rgrid;
    std::vector<std::vector<cplx>> values;  // [dir][r index]
    double tail_bound = 0;                  // tau-truncation residual estimate
    std::vector<cplx> tail_pos, tail_neg;   // L ~ tail / r^2 beyond the window
    std::string provenance;

    std::size_t n_dirs() const { return dirs.size(); }

    // Cubic interpolation inside the window, c/r^2 model outside.
    cplx at(std::size_t j, double r) const {
        double f = (r - rgrid.r0) / rgrid.dr;
        if (f < 0) return tail_neg[j] / (r * r);
        if (f >= rgrid.n - 1) return tail_pos[j] / (r * r);
        int i = int(f);
        double t = f - i;
        const std::vector<cplx>& v = values[j];
        if (i < 1 || i >= rgrid.n - 2) return v[i] * (1.0 - t) + v[i + 1] * t;
        return v[i] + 0.5 * t * (v[i + 1] - v[i - 1] +
                                 t * (2.0 * v[i - 1] - 5.0 * v[i] + 4.0 * v[i + 1] - v[i + 2] +
                                      t * (3.0 * (v[i] - v[i + 1]) + v[i + 2] - v[i - 1])));
    }

    // Nearest grid node at or below r (for node-exact comparisons).
    double snap(double r) const {
        int i = std::min(rgrid.n - 1, std::max(0, int(std::lround((r - rgrid.r0) / rgrid.dr))));
        return rgrid.r(i);
    }

    // int |L(r, omega_j)| dr over the real line (window + analytic tails).
    double l1_norm(std::size_t j) const {
        double s = 0;
        for (int i = 0; i < rgrid.n; ++i)
            s += std::abs(values[j][i]) * trapezoid_weight(i, rgrid.n);
        s *= rgrid.dr;
        s += std::abs(tail_pos[j]) / rgrid.r_max() + std::abs(tail_neg[j]) / std::abs(rgrid.r0);
        return s;
    }

    double l2_sq(std::size_t j) const {
        double s = 0;
        for (int i = 0; i < rgrid.n; ++i)
            s += std::norm(values[j][i]) * trapezoid_weight(i, rgrid.n);
        s *= rgrid.dr;
        s += std::norm(tail_pos[j]) / (3 * std::pow(rgrid.r_max(), 3)) +
             std::norm(tail_neg[j]) / (3 * std::pow(std::abs(rgrid.r0), 3));
        return s;
    }
};

namespace detail {

// Transform of the half-line integrand h(tau) = g(tau) tau by peel-off:
//   g(tau) tau = g0 tau (1 + beta tau) e^{-alpha tau} + remainder
// with (alpha, beta) matching g'(0) and g''(0), so the remainder vanishes to
// third order at tau = 0. The analytic part transforms exactly,
//   int_0^inf g0 tau (1+beta tau) e^{-alpha tau + i r tau/2} dtau
//     = g0 (1/z^2 + 2 beta / z^3),  z = alpha - i r/2,
// and the smooth remainder goes through the Gregory-corrected FFT. This
// keeps both the tau=0 endpoint error and the r^{-2} window aliasing out of
// the transform uniformly over the r window.
struct PeeledTransform {
    RGrid rgrid;
    std::vector<cplx> values;
    cplx tail_coef;  // I(r) ~ tail_coef / r^2 beyond the window
};

template <class Ray>
PeeledTransform peeled_half_line_transform(Ray&& g, double dtau, int m, int oversample) {
    cplx g0 = g(0.0);
    cplx alpha(1.0, 0.0), beta(0.0, 0.0);
    if (std::abs(g0) > 0) {
        // one-sided 4th-order derivative estimates at tau = 0
        cplx g1 = g(dtau), g2 = g(2 * dtau), g3 = g(3 * dtau), g4 = g(4 * dtau);
        cplx d1 = (-25.0 * g0 + 48.0 * g1 - 36.0 * g2 + 16.0 * g3 - 3.0 * g4) / (12.0 * dtau);
        cplx d2 = (35.0 * g0 - 104.0 * g1 + 114.0 * g2 - 56.0 * g3 + 11.0 * g4) /
                  (12.0 * dtau * dtau);
        cplx u = d1 / g0, v = d2 / g0;
        // alpha^2 + 2 u alpha + v = 0; root with the larger real part
        cplx disc = std::sqrt(u * u - v);
        cplx r1 = -u + disc, r2 = -u - disc;
        alpha = r1.real() >= r2.real() ? r1 : r2;
        beta = alpha + u;
        if (!(alpha.real() > 0.05) || std::abs(alpha) * dtau > 1.0 ||
            std::abs(beta) * dtau > 1.0) {
            alpha = cplx(std::max(1.0, -u.real()), 0.0);
            beta = alpha + u;  // still cancels g'(0)
            if (!(beta.real() * dtau < 1.0)) beta = 0.0;
        }
    }
    // extend the window until the peel itself has decayed, else its
    // truncation re-introduces the endpoint error
    int m_ext = m;
    if (std::abs(g0) > 0) {
        double target = 30.0 / std::max(0.05, alpha.real());
        m_ext = std::max(m, int(std::ceil(target / dtau)));
        m_ext = std::min(m_ext, 24 * m);
    }
    std::vector<cplx> h(m_ext, cplx(0));
    for (int k = 1; k < m_ext; ++k) {
        double tau = k * dtau;
        cplx gv = k < m ? g(tau) : cplx(0);
        h[k] = (gv - g0 * (1.0 + beta * tau) * std::exp(-alpha * tau)) * tau;
    }
    HalfLineResult res = half_line_fourier(h, dtau, oversample * m_ext);
    PeeledTransform out;
    out.rgrid = res.rgrid;
    out.values = std::move(res.values);
    if (std::abs(g0) > 0) {
        for (int i = 0; i < out.rgrid.n; ++i) {
            cplx z = alpha - cplx(0, 0.5 * out.rgrid.r(i));
            out.values[i] += g0 * (1.0 / (z * z) + 2.0 * beta / (z * z * z));
        }
    }
    out.tail_coef = -4.0 * g0;
    return out;
}

}  // namespace detail

// Generic driver: ray(j, tau) = Vhat(-tau * omega_j), any evaluation backend.
inline LProfile compute_L_from_rays(const DirectionSet& dirs,
                                    const std::function<cplx(std::size_t, double)>& ray,
                                    double tau_max, const LParams& par,
                                    bool identical_rays = false) {
    LProfile L;
    L.dirs = dirs;
    int m = par.n_tau;
    double dtau = tau_max / m;
    int oversample_ = par.oversample;

    std::size_t nj = dirs.size();
    L.values.resize(nj);
    L.tail_pos.resize(nj);
    L.tail_neg.resize(nj);

    std::size_t compute_count = identical_rays ? 1 : nj;
    std::vector<double> tail_bounds(compute_count, 0.0);
    parallel_for(compute_count, [&](std::size_t j) {
        auto g = [&](double tau) { return ray(j, tau); };
        detail::PeeledTransform res = detail::peeled_half_line_transform(g, dtau, m, oversample_);
        if (j == 0) L.rgrid = res.rgrid;
        L.values[j] = std::move(res.values);
        L.tail_pos[j] = res.tail_coef;
        L.tail_neg[j] = res.tail_coef;
        // truncation residual: geometric extrapolation of the last samples
        double a1 = std::abs(g((m - 1) * dtau)) * (m - 1) * dtau;
        double a0 = std::abs(g(0.9 * m * dtau)) * 0.9 * m * dtau;
        double q = (a0 > 0 && a1 < a0) ? a1 / a0 : 0.9;
        tail_bounds[j] = a1 * dtau / std::max(1e-12, 1.0 - std::pow(q, 1.0 / (0.1 * m)));
    });
    for (double t : tail_bounds) L.tail_bound = std::max(L.tail_bound, t);

    if (identical_rays) {
        for (std::size_t j = 1; j < nj; ++j) {
            L.values[j] = L.values[0];
            L.tail_pos[j] = L.tail_pos[0];
            L.tail_neg[j] = L.tail_neg[0];
        }
    }
    return L;
}

// L_V(r, omega) = int_0^inf Vhat(-tau omega) e^{i r tau/2} tau dtau.
inline LProfile compute_L(const Potential& p, const DirectionSet& dirs, LParams par = {}) {
    double tau_max = par.tau_max > 0 ? par.tau_max : p.suggest_tau_max(par.tol);
    LProfile L;
    if (p.is_radial()) {
        L = compute_L_from_rays(
            dirs, [&](std::size_t, double tau) { return p.fourier_radial(tau); }, tau_max, par,
            /*identical_rays=*/true);
    } else {
        L = compute_L_from_rays(
            dirs, [&](std::size_t j, double tau) { return p.fourier(dirs.dirs[j] * (-tau)); },
            tau_max, par, false);
    }
    L.provenance = p.describe();
    return L;
}

// ---------------------------------------------------------------------------
// Norms of L
// ---------------------------------------------------------------------------

struct TripleNormResult {
    double value = 0;
    double error_bar = 0;  // truncation residual propagated into the L1 norm
};

// |||V||| = ||L||_{L^1_{r,omega}}
inline TripleNormResult triple_norm(const LProfile& L) {
    TripleNormResult res;
    for (std::size_t j = 0; j < L.n_dirs(); ++j) res.value += L.dirs.weights[j] * L.l1_norm(j);
    double window = L.rgrid.r_max() - L.rgrid.r0;
    res.error_bar = L.tail_bound * window * 4 * pi * 0.01 + 1e-14 * res.value;
    return res;
}

struct PlancherelReport {
    double l2_L = 0;
    double l2_V = 0;
    double ratio = 0;
};

// ||L||_{L^2_{r,omega}} / ||V||_{L^2}; a universal constant of the FT
// convention (sqrt(32) pi^2 here), independent of the potential.
inline PlancherelReport plancherel_check(const Potential& p, const DirectionSet& dirs,
                                         LParams par = {}) {
    LProfile L = compute_L(p, dirs, par);
    PlancherelReport rep;
    double s = 0;
    for (std::size_t j = 0; j < L.n_dirs(); ++j) s += L.dirs.weights[j] * L.l2_sq(j);
    rep.l2_L = std::sqrt(s);
    if (p.is_radial()) {
        // dyadic segments: robust for slowly decaying profiles
        auto f = [&](double r) { double v = p.radial_value(r); return v * v * r * r; };
        double acc = adaptive_simpson(f, 0.0, 1.0, 1e-14);
        for (double a = 1.0; a < 1e9; a *= 2) {
            double seg = adaptive_simpson(f, a, 2 * a, 1e-14 * std::max(1.0, acc));
            acc += seg;
            if (seg < 1e-14 * acc && a > 64) break;
        }
        rep.l2_V = std::sqrt(4 * pi * acc);
    } else {
        rep.l2_V = p.grid_field().l2_norm();
    }
    rep.ratio = rep.l2_V > 0 ? rep.l2_L / rep.l2_V : 0.0;
    return rep;
}

inline double plancherel_constant() { return std::sqrt(32.0) * pi * pi; }

// ---------------------------------------------------------------------------
// Dyadic shell sums of L: sum_k 2^{alpha k} || 1_{[2^k,2^{k+1}]}(|r|) L ||_L2
// ---------------------------------------------------------------------------

struct DyadicLSum {
    double value = 0;
    std::vector<std::pair<int, double>> shells;  // (k, shell L2 norm)
    double below_resolution = 0;                 // completion for unresolved shells
    double beyond_window = 0;                    // r^{-2} tail completion
};

inline DyadicLSum dyadic_L_sum(const LProfile& L, double alpha) {
    DyadicLSum out;
    double dr = L.rgrid.dr;
    double r_hi = std::min(L.rgrid.r_max(), std::abs(L.rgrid.r0));
    int k_lo = int(std::ceil(std::log2(8 * dr)));
    int k_hi = int(std::floor(std::log2(r_hi))) - 1;

    for (int k = k_lo; k <= k_hi; ++k) {
        double a = std::pow(2.0, k), b = 2 * a;
        double s = 0;
        for (std::size_t j = 0; j < L.n_dirs(); ++j) {
            double sj = 0;
            for (int i = 0; i < L.rgrid.n; ++i) {
                double r = std::abs(L.rgrid.r(i));
                if (r >= a && r < b) sj += std::norm(L.values[j][i]);
            }
            s += L.dirs.weights[j] * sj * dr;
        }
        double shell = std::sqrt(s);
        out.shells.emplace_back(k, shell);
        out.value += std::pow(2.0, alpha * k) * shell;
    }

    // below-resolution completion: |L| ~ |L(0)| near r=0
    double l0sq = 0;
    for (std::size_t j = 0; j < L.n_dirs(); ++j)
        l0sq += L.dirs.weights[j] * std::norm(L.at(j, 0.0));
    for (int k = k_lo - 1; k >= k_lo - 60; --k)
        out.below_resolution += std::pow(2.0, alpha * k) * std::sqrt(l0sq * 2 * std::pow(2.0, k));

    // beyond-window completion: |L| ~ |c|/r^2
    double csq = 0;
    for (std::size_t j = 0; j < L.n_dirs(); ++j)
        csq += L.dirs.weights[j] * (std::norm(L.tail_pos[j]) + std::norm(L.tail_neg[j]));
    for (int k = k_hi + 1; k <= k_hi + 60; ++k) {
        double a = std::pow(2.0, k);
        out.beyond_window += std::pow(2.0, alpha * k) * std::sqrt(csq * (7.0 / 24.0) / (a * a * a));
    }

    out.value += out.below_resolution + out.beyond_window;
    return out;
}

// ---------------------------------------------------------------------------
// Sliced transform: |||delta_{Pi(s)} v||| for the plane with unit normal N
// at offset s, via the polar reduction of the slice's 2D Fourier transform:
//   M_s(t, phi) = int_0^inf (F_2 w_s)(-tau e_phi) e^{i t tau / 2} tau dtau,
//   |||delta_{Pi(s)} v||| = pi * int dt int_0^{2 pi} |M_s(t, phi)| dphi.
// ---------------------------------------------------------------------------

struct SliceParams {
    double tol = 1e-9;
    int n_tau = 1024;
    int oversample = 4;
    double tau_max = 0;
    int n_phi = 16;  // angles on [0, 2 pi) for non-radial slices
};

struct SliceTransform {
    double norm = 0;       // |||delta_{Pi(s)} v|||
    double tail_bound = 0;
};

// 2D slice spectrum accessor: sf(phi, tau) = (F_2 w_s)(-tau e_phi).
inline SliceTransform sliced_L_from_spectrum(const std::function<cplx(double, double)>& sf,
                                             double tau_max, bool radial_slice,
                                             const SliceParams& par) {
    int n_phi = radial_slice ? 1 : par.n_phi;
    double wphi = radial_slice ? 2 * pi : 2 * pi / par.n_phi;

    SliceTransform out;
    int m = par.n_tau;
    double dtau = tau_max / m;
    int oversample_ = par.oversample;
    for (int aidx = 0; aidx < n_phi; ++aidx) {
        double phi = (aidx + 0.5) * 2 * pi / par.n_phi;
        if (radial_slice) phi = 0.0;
        auto g = [&](double tau) { return sf(phi, tau); };
        detail::PeeledTransform res = detail::peeled_half_line_transform(g, dtau, m, oversample_);
        double l1 = 0;
        for (int i = 0; i < res.rgrid.n; ++i)
            l1 += std::abs(res.values[i]) * trapezoid_weight(i, res.rgrid.n);
        l1 *= res.rgrid.dr;
        l1 += std::abs(res.tail_coef) / res.rgrid.r_max() +
              std::abs(res.tail_coef) / std::abs(res.rgrid.r0);
        out.norm += wphi * l1;
        out.tail_bound = std::max(out.tail_bound, std::abs(g((m - 1) * dtau)) * m * dtau * dtau * 10);
    }
    out.norm *= pi;
    return out;
}

// Slice transform of a potential through the plane s*N + N^perp.
inline SliceTransform sliced_L(const Potential& v, const Vec3& normal, double s,
                               SliceParams par = {}) {
    double tau_max = par.tau_max > 0 ? par.tau_max : v.suggest_tau_max(par.tol);
    if (v.is_radial()) {
        auto sf = [&](double, double tau) { return v.slice_fourier_radial(s, tau); };
        return sliced_L_from_spectrum(sf, tau_max, true, par);
    }
    // sampled slice + 2D FFT table
    Vec3 e1, e2;
    orthonormal_frame(normal.normalized(), e1, e2);
    const Field3D& fld = v.grid_field();
    int n2 = fld.n();
    Field2D slice(n2, fld.box_len());
    Vec3 base = normal.normalized() * s;
    slice.fill([&](double u, double w) {
        Vec3 x = base + e1 * u + e2 * w;
        return fld.contains(x) ? fld.sample_cubic(x) : cplx(0);
    });
    FourierTable2D table(slice);
    tau_max = std::min(tau_max, table.nyquist());
    auto sf = [&](double phi, double tau) {
        return table(-tau * std::cos(phi), -tau * std::sin(phi));
    };
    return sliced_L_from_spectrum(sf, tau_max, false, par);
}

}  // namespace waveop
