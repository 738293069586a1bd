#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "waveop/core.hpp"
#include "waveop/fft.hpp"

namespace waveop {

struct RGrid {
    double r0 = 0;   // first node
    double dr = 0;   // spacing
    int n = 0;

    double r(int i) const { return r0 + i * dr; }
    double r_max() const { return r(n - 1); }
};

// ---------------------------------------------------------------------------
// Complex scalar field on a uniform periodic cube [origin, origin+L)^3,
// n samples per axis, z index fastest.
// ---------------------------------------------------------------------------

class Field3D {
  public:
    Field3D() = default;
    Field3D(int n, double box_len, Vec3 origin)
        : n_(n), len_(box_len), origin_(origin), data_(std::size_t(n) * n * n) {}

    static Field3D centered(int n, double box_len) {
        return Field3D(n, box_len, {-box_len / 2, -box_len / 2, -box_len / 2});
    }

    int n() const { return n_; }
    double box_len() const { return len_; }
    double dx() const { return len_ / n_; }
    Vec3 origin() const { return origin_; }
    std::size_t size() const { return data_.size(); }

    std::size_t idx(int i, int j, int k) const {
        return (std::size_t(i) * n_ + j) * n_ + k;
    }
    cplx& at(int i, int j, int k) { return data_[idx(i, j, k)]; }
    const cplx& at(int i, int j, int k) const { return data_[idx(i, j, k)]; }
    std::vector<cplx>& data() { return data_; }
    const std::vector<cplx>& data() const { return data_; }

    Vec3 point(int i, int j, int k) const {
        double h = dx();
        return {origin_.x + i * h, origin_.y + j * h, origin_.z + k * h};
    }

    void fill(const std::function<cplx(const Vec3&)>& f) {
        parallel_for(std::size_t(n_), [&](std::size_t i) {
            for (int j = 0; j < n_; ++j)
                for (int k = 0; k < n_; ++k)
                    at(int(i), j, k) = f(point(int(i), j, k));
        });
    }

    bool contains(const Vec3& p) const {
        double h = dx();
        return p.x >= origin_.x && p.x <= origin_.x + len_ - h &&
               p.y >= origin_.y && p.y <= origin_.y + len_ - h &&
               p.z >= origin_.z && p.z <= origin_.z + len_ - h;
    }

    // Trilinear sample; zero outside the box (fields of interest decay).
    cplx sample(const Vec3& p) const {
        double h = dx();
        double fx = (p.x - origin_.x) / h, fy = (p.y - origin_.y) / h, fz = (p.z - origin_.z) / h;
        if (fx < 0 || fy < 0 || fz < 0 || fx > n_ - 1 || fy > n_ - 1 || fz > n_ - 1) return 0.0;
        int i = std::min(int(fx), n_ - 2), j = std::min(int(fy), n_ - 2), k = std::min(int(fz), n_ - 2);
        double ax = fx - i, ay = fy - j, az = fz - k;
        auto lerp = [](cplx a, cplx b, double t) { return a + (b - a) * t; };
        cplx c00 = lerp(at(i, j, k), at(i + 1, j, k), ax);
        cplx c10 = lerp(at(i, j + 1, k), at(i + 1, j + 1, k), ax);
        cplx c01 = lerp(at(i, j, k + 1), at(i + 1, j, k + 1), ax);
        cplx c11 = lerp(at(i, j + 1, k + 1), at(i + 1, j + 1, k + 1), ax);
        return lerp(lerp(c00, c10, ay), lerp(c01, c11, ay), az);
    }

    // Tricubic (Catmull-Rom) sample; zero outside. Slower than sample(), for
    // paths where trilinear anisotropy matters.
    cplx sample_cubic(const Vec3& p) const {
        double h = dx();
        double fx = (p.x - origin_.x) / h, fy = (p.y - origin_.y) / h, fz = (p.z - origin_.z) / h;
        if (fx < 1 || fy < 1 || fz < 1 || fx > n_ - 3 || fy > n_ - 3 || fz > n_ - 3)
            return sample(p);
        int i = int(fx), j = int(fy), k = int(fz);
        double tx = fx - i, ty = fy - j, tz = fz - k;
        auto cr = [](cplx p0, cplx p1, cplx p2, cplx p3, double t) {
            return p1 + 0.5 * t * (p2 - p0 + t * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
                                                  t * (3.0 * (p1 - p2) + p3 - p0)));
        };
        cplx cx[4], cy[4];
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                const cplx* col = &data_[idx(i - 1 + a, j - 1 + b, k - 1)];
                cy[b] = cr(col[0], col[1], col[2], col[3], tz);
            }
            cx[a] = cr(cy[0], cy[1], cy[2], cy[3], ty);
        }
        return cr(cx[0], cx[1], cx[2], cx[3], tx);
    }

    double l2_norm() const {
        double s = 0;
        for (const cplx& v : data_) s += std::norm(v);
        return std::sqrt(s * dx() * dx() * dx());
    }

    // Fraction of the L2 mass in the outermost `cells`-wide shell. Guards
    // against wrap-around of dispersing fields.
    double boundary_mass_fraction(int cells = 2) const {
        double tot = 0, edge = 0;
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                for (int k = 0; k < n_; ++k) {
                    double m = std::norm(at(i, j, k));
                    tot += m;
                    bool near = i < cells || i >= n_ - cells || j < cells || j >= n_ - cells ||
                                k < cells || k >= n_ - cells;
                    if (near) edge += m;
                }
        return tot > 0 ? edge / tot : 0.0;
    }

    // In-place Fourier multiplier: f <- F^{-1}[ m(xi) F f ].
    void apply_multiplier(const std::function<cplx(const Vec3&)>& m) {
        fft_3d(data_, n_, n_, n_, -1);
        double dxi = 2 * pi / len_;
        parallel_for(std::size_t(n_), [&](std::size_t i) {
            for (int j = 0; j < n_; ++j)
                for (int k = 0; k < n_; ++k) {
                    Vec3 xi{dxi * dft_freq_index(int(i), n_), dxi * dft_freq_index(j, n_),
                            dxi * dft_freq_index(k, n_)};
                    at(int(i), j, k) *= m(xi);
                }
        });
        fft_3d(data_, n_, n_, n_, +1);
        double scale = 1.0 / (double(n_) * n_ * n_);
        for (cplx& v : data_) v *= scale;
    }

    Field3D& operator+=(const Field3D& o) {
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    Field3D& operator*=(cplx s) {
        for (cplx& v : data_) v *= s;
        return *this;
    }

  private:
    int n_ = 0;
    double len_ = 0;
    Vec3 origin_;
    std::vector<cplx> data_;
};

inline double rel_l2_difference(const Field3D& a, const Field3D& b) {
    double num = 0, den = 0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        num += std::norm(a.data()[i] - b.data()[i]);
        den += std::norm(b.data()[i]);
    }
    return den > 0 ? std::sqrt(num / den) : std::sqrt(num);
}

// ---------------------------------------------------------------------------
// Continuous Fourier transform of a sampled field, tabulated on the DFT
// frequency lattice and interpolated (tricubic) off-lattice.
// ---------------------------------------------------------------------------

class FourierTable3D {
  public:
    // pad=2 doubles the frequency lattice density and keeps the cubic
    // interpolation error well below the grid-FT aliasing floor.
    explicit FourierTable3D(const Field3D& f, int pad = 2) {
        int n0 = f.n();
        n_ = pad * n0;
        dxi_ = 2 * pi / (pad * f.box_len());
        int off = (n_ - n0) / 2;
        std::vector<cplx> work(std::size_t(n_) * n_ * n_, cplx(0));
        for (int i = 0; i < n0; ++i)
            for (int j = 0; j < n0; ++j)
                for (int k = 0; k < n0; ++k)
                    work[(std::size_t(i + off) * n_ + (j + off)) * n_ + (k + off)] = f.at(i, j, k);
        fft_3d(work, n_, n_, n_, -1);
        double h = f.dx();
        double vol = h * h * h;
        Vec3 o = f.origin() - Vec3{off * h, off * h, off * h};
        values_.resize(work.size());
        // shift so index i corresponds to frequency (i - n/2) * dxi
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                for (int k = 0; k < n_; ++k) {
                    int si = (i + n_ / 2) % n_, sj = (j + n_ / 2) % n_, sk = (k + n_ / 2) % n_;
                    Vec3 xi{dxi_ * dft_freq_index(si, n_), dxi_ * dft_freq_index(sj, n_),
                            dxi_ * dft_freq_index(sk, n_)};
                    double phase = -(o.x * xi.x + o.y * xi.y + o.z * xi.z);
                    values_[(std::size_t(i) * n_ + j) * n_ + k] =
                        vol * std::exp(cplx(0, phase)) * work[(std::size_t(si) * n_ + sj) * n_ + sk];
                }
    }

    double nyquist() const { return dxi_ * (n_ / 2 - 2); }

    cplx operator()(const Vec3& xi) const {
        double fx = xi.x / dxi_ + n_ / 2, fy = xi.y / dxi_ + n_ / 2, fz = xi.z / dxi_ + n_ / 2;
        if (fx < 1 || fy < 1 || fz < 1 || fx > n_ - 3 || fy > n_ - 3 || fz > n_ - 3)
            throw ResolutionError("frequency outside resolvable band of grid Fourier table");
        int i = int(fx), j = int(fy), k = int(fz);
        double tx = fx - i, ty = fy - j, tz = fz - k;
        cplx cy[4], cz[4];
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                const cplx* col = &values_[(std::size_t(i - 1 + a) * n_ + (j - 1 + b)) * n_ + (k - 1)];
                cz[b] = catmull_rom(col[0], col[1], col[2], col[3], tz);
            }
            cy[a] = catmull_rom(cz[0], cz[1], cz[2], cz[3], ty);
        }
        return catmull_rom(cy[0], cy[1], cy[2], cy[3], tx);
    }

  private:
    static cplx catmull_rom(cplx p0, cplx p1, cplx p2, cplx p3, double t) {
        return p1 + 0.5 * t * (p2 - p0 + t * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
                                              t * (3.0 * (p1 - p2) + p3 - p0)));
    }

    int n_;
    double dxi_;
    std::vector<cplx> values_;
};

// ---------------------------------------------------------------------------
// 2D counterpart used for plane slices.
// ---------------------------------------------------------------------------

class Field2D {
  public:
    Field2D() = default;
    Field2D(int n, double box_len)
        : n_(n), len_(box_len), origin_(-box_len / 2), data_(std::size_t(n) * n) {}

    int n() const { return n_; }
    double dx() const { return len_ / n_; }
    double box_len() const { return len_; }
    double origin() const { return origin_; }
    cplx& at(int i, int j) { return data_[std::size_t(i) * n_ + j]; }
    const cplx& at(int i, int j) const { return data_[std::size_t(i) * n_ + j]; }
    std::vector<cplx>& data() { return data_; }
    const std::vector<cplx>& data() const { return data_; }

    void fill(const std::function<cplx(double, double)>& f) {
        double h = dx();
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) at(i, j) = f(origin_ + i * h, origin_ + j * h);
    }

    // Continuous 2D FT on the DFT lattice, bicubic off-lattice.
    std::vector<cplx> fourier_lattice() const {
        std::vector<cplx> work = data_;
        fft_2d(work, n_, n_, -1);
        double dxi = 2 * pi / len_, h = dx();
        std::vector<cplx> shifted(work.size());
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                int si = (i + n_ / 2) % n_, sj = (j + n_ / 2) % n_;
                double kx = dxi * dft_freq_index(si, n_), ky = dxi * dft_freq_index(sj, n_);
                double phase = -(origin_ * kx + origin_ * ky);
                shifted[std::size_t(i) * n_ + j] =
                    h * h * std::exp(cplx(0, phase)) * work[std::size_t(si) * n_ + sj];
            }
        return shifted;
    }

    // Homogeneous H^{1/2} seminorm via the discrete |xi|^{1/2} multiplier;
    // the zero mode is dropped.
    double h_half_norm() const {
        std::vector<cplx> work = data_;
        fft_2d(work, n_, n_, -1);
        double dxi = 2 * pi / len_, h = dx();
        double s = 0;
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                if (i == 0 && j == 0) continue;
                double kx = dxi * dft_freq_index(i, n_), ky = dxi * dft_freq_index(j, n_);
                s += std::hypot(kx, ky) * std::norm(work[std::size_t(i) * n_ + j]);
            }
        // |hat f|^2 carries (dx^2)^2; measure dxi^2/(2pi)^2
        double factor = std::pow(h * h, 2) * dxi * dxi / std::pow(2 * pi, 2);
        return std::sqrt(s * factor);
    }

  private:
    int n_ = 0;
    double len_ = 0;
    double origin_ = 0;
    std::vector<cplx> data_;
};

class FourierTable2D {
  public:
    explicit FourierTable2D(const Field2D& f, int pad = 2) {
        Field2D big(pad * f.n(), pad * f.box_len());
        int off = (big.n() - f.n()) / 2;
        for (int i = 0; i < f.n(); ++i)
            for (int j = 0; j < f.n(); ++j) big.at(i + off, j + off) = f.at(i, j);
        n_ = big.n();
        dxi_ = 2 * pi / big.box_len();
        values_ = big.fourier_lattice();
    }

    double nyquist() const { return dxi_ * (n_ / 2 - 2); }

    cplx operator()(double kx, double ky) const {
        double fx = kx / dxi_ + n_ / 2, fy = ky / dxi_ + n_ / 2;
        if (fx < 1 || fy < 1 || fx > n_ - 3 || fy > n_ - 3)
            throw ResolutionError("frequency outside resolvable band of slice Fourier table");
        int i = int(fx), j = int(fy);
        double tx = fx - i, ty = fy - j;
        auto cr = [](cplx p0, cplx p1, cplx p2, cplx p3, double t) {
            return p1 + 0.5 * t * (p2 - p0 + t * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
                                                  t * (3.0 * (p1 - p2) + p3 - p0)));
        };
        cplx cy[4];
        for (int a = 0; a < 4; ++a) {
            const cplx* row = &values_[std::size_t(i - 1 + a) * n_ + (j - 1)];
            cy[a] = cr(row[0], row[1], row[2], row[3], ty);
        }
        return cr(cy[0], cy[1], cy[2], cy[3], tx);
    }

  private:
    int n_;
    double dxi_;
    std::vector<cplx> values_;
};

}  // namespace waveop
