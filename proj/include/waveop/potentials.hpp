#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "waveop/core.hpp"
#include "waveop/grids.hpp"
#include "waveop/quadrature.hpp"

namespace waveop {

enum class PotentialKind { gaussian, soliton_linearization, radial_table, grid };

inline std::string kind_name(PotentialKind k) {
    switch (k) {
        case PotentialKind::gaussian: return "gaussian";
        case PotentialKind::soliton_linearization: return "soliton_linearization";
        case PotentialKind::radial_table: return "radial_table";
        case PotentialKind::grid: return "grid";
    }
    return "?";
}

// Monotone (Fritsch-Carlson) cubic interpolant on a uniform grid.
class MonotoneCubic {
  public:
    MonotoneCubic() = default;
    MonotoneCubic(double x0, double dx, std::vector<double> y)
        : x0_(x0), dx_(dx), y_(std::move(y)) {
        std::size_t n = y_.size();
        if (n < 2) throw DomainError("radial table needs at least two samples");
        std::vector<double> d(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) d[i] = (y_[i + 1] - y_[i]) / dx_;
        m_.assign(n, 0.0);
        m_[0] = d[0];
        m_[n - 1] = d[n - 2];
        for (std::size_t i = 1; i + 1 < n; ++i)
            m_[i] = (d[i - 1] * d[i] > 0) ? 2.0 * d[i - 1] * d[i] / (d[i - 1] + d[i]) : 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (d[i] == 0.0) { m_[i] = m_[i + 1] = 0.0; continue; }
            double a = m_[i] / d[i], b = m_[i + 1] / d[i];
            double s = a * a + b * b;
            if (s > 9.0) {
                double t = 3.0 / std::sqrt(s);
                m_[i] = t * a * d[i];
                m_[i + 1] = t * b * d[i];
            }
        }
    }

    double x_max() const { return x0_ + dx_ * (double(y_.size()) - 1); }
    double back() const { return y_.back(); }

    double operator()(double x) const {
        if (x <= x0_) return y_.front();
        if (x >= x_max()) return 0.0;  // decayed-to-zero tail
        double f = (x - x0_) / dx_;
        std::size_t i = std::min(std::size_t(f), y_.size() - 2);
        double t = f - double(i);
        double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
        double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
        return h00 * y_[i] + h10 * dx_ * m_[i] + h01 * y_[i + 1] + h11 * dx_ * m_[i + 1];
    }

  private:
    double x0_ = 0, dx_ = 1;
    std::vector<double> y_, m_;
};

// ---------------------------------------------------------------------------
// Potential on R^3 with direct and Fourier evaluation. Convention throughout:
//   Vhat(xi) = int e^{-i x.xi} V(x) dx,   inverse carries (2 pi)^{-3}.
// ---------------------------------------------------------------------------

class Potential {
  public:
    static Potential gaussian(double amplitude, double width) {
        Potential p;
        p.kind_ = PotentialKind::gaussian;
        p.a_ = amplitude;
        p.b_ = width;
        return p;
    }

    // -g * lambda^2 * W^4(lambda x), W(x) = (1+|x|^2/3)^{-1/2}
    static Potential soliton_linearization(double coupling, double scale) {
        Potential p;
        p.kind_ = PotentialKind::soliton_linearization;
        p.a_ = coupling;
        p.b_ = scale;
        return p;
    }

    static Potential radial_table(double r0, double dr, std::vector<double> values) {
        Potential p;
        p.kind_ = PotentialKind::radial_table;
        p.r0_ = r0;
        p.dr_ = dr;
        p.tvals_ = values;
        p.table_ = std::make_shared<MonotoneCubic>(r0, dr, std::move(values));
        return p;
    }

    static Potential grid(Field3D samples) {
        Potential p;
        p.kind_ = PotentialKind::grid;
        p.field_ = std::make_shared<Field3D>(std::move(samples));
        p.ftable_ = std::make_shared<FourierTable3D>(*p.field_);
        return p;
    }

    PotentialKind kind() const { return kind_; }
    bool is_radial() const { return kind_ != PotentialKind::grid; }
    bool has_analytic_ft() const {
        return kind_ == PotentialKind::gaussian || kind_ == PotentialKind::soliton_linearization;
    }

    double param_a() const { return a_; }
    double param_b() const { return b_; }

    double eval(const Vec3& x) const {
        switch (kind_) {
            case PotentialKind::gaussian:
                return a_ * std::exp(-x.norm2() / (b_ * b_));
            case PotentialKind::soliton_linearization: {
                double w2 = 1.0 / (1.0 + b_ * b_ * x.norm2() / 3.0);  // W^2(lambda x)
                return -a_ * b_ * b_ * w2 * w2;
            }
            case PotentialKind::radial_table:
                return (*table_)(x.norm());
            case PotentialKind::grid:
                if (!field_->contains(x)) throw DomainError("grid potential queried outside its box");
                return field_->sample(x).real();
        }
        return 0;
    }

    double radial_value(double r) const {
        if (!is_radial()) throw DomainError("radial profile of a non-radial potential");
        return eval({r, 0, 0});
    }

    cplx fourier(const Vec3& xi) const {
        switch (kind_) {
            case PotentialKind::gaussian:
            case PotentialKind::soliton_linearization:
            case PotentialKind::radial_table:
                return fourier_radial(xi.norm());
            case PotentialKind::grid:
                return (*ftable_)(xi);
        }
        return 0;
    }

    // FT of a radial potential as a function of k = |xi|.
    cplx fourier_radial(double k) const {
        switch (kind_) {
            case PotentialKind::gaussian: {
                double s = b_;
                return a_ * std::pow(pi, 1.5) * s * s * s * std::exp(-s * s * k * k / 4.0);
            }
            case PotentialKind::soliton_linearization:
                // FT of -(9 g / lambda^2) (3/lambda^2 + r^2)^{-2}
                return -3.0 * std::sqrt(3.0) * pi * pi * (a_ / b_) * std::exp(-std::sqrt(3.0) * k / b_);
            case PotentialKind::radial_table: {
                // composite GL aligned with table cells (interpolant is only
                // piecewise smooth); subdivide cells against the oscillation
                if (k < 1e-12) {
                    auto f = [&](double r) { return (*table_)(r)*r * r; };
                    return 4 * pi * cellwise_integral(f, k);
                }
                auto f = [&](double r) { return (*table_)(r)*std::sin(k * r) * r; };
                return 4 * pi / k * cellwise_integral(f, k);
            }
            case PotentialKind::grid:
                throw DomainError("grid potentials have no radial FT shortcut");
        }
        return 0;
    }

    // x -> lambda^2 V(lambda x); exact for analytic and table kinds.
    Potential rescale(double lambda) const {
        if (lambda <= 0) throw DomainError("rescale requires lambda > 0");
        switch (kind_) {
            case PotentialKind::gaussian:
                return gaussian(a_ * lambda * lambda, b_ / lambda);
            case PotentialKind::soliton_linearization:
                return soliton_linearization(a_, b_ * lambda);
            case PotentialKind::radial_table: {
                // nodes contract by lambda, values scale by lambda^2: exact
                std::vector<double> v = tvals_;
                for (double& y : v) y *= lambda * lambda;
                return radial_table(r0_ / lambda, dr_ / lambda, std::move(v));
            }
            case PotentialKind::grid: {
                const Field3D& f = *field_;
                Field3D g(f.n(), f.box_len() / lambda, f.origin() / lambda);
                g.fill([&](const Vec3& x) {
                    Vec3 lx = x * lambda;
                    return cplx(f.contains(lx) ? f.sample(lx).real() * lambda * lambda : 0.0, 0.0);
                });
                return grid(std::move(g));
            }
        }
        throw DomainError("unreachable");
    }

    // Scale of the coupling: V -> c V. Exact for all kinds.
    Potential scaled(double c) const {
        switch (kind_) {
            case PotentialKind::gaussian: return gaussian(a_ * c, b_);
            case PotentialKind::soliton_linearization: return soliton_linearization(a_ * c, b_);
            default: throw DomainError("scaled() supports analytic kinds");
        }
    }

    // 2D FT of the plane slice x' -> V(s N + x') at transverse frequency kp=|xi'|.
    // Well-defined for radially symmetric kinds (slice is 2D-radial).
    cplx slice_fourier_radial(double s, double kp) const {
        switch (kind_) {
            case PotentialKind::gaussian: {
                double s2 = b_ * b_;
                return a_ * std::exp(-s * s / s2) * pi * s2 * std::exp(-s2 * kp * kp / 4.0);
            }
            case PotentialKind::soliton_linearization: {
                double a0sq = 3.0 / (b_ * b_);
                double bsq = a0sq + s * s, b = std::sqrt(bsq);
                double amp = -a_ * 9.0 / (b_ * b_);  // V = amp * (a0^2+|x|^2)^{-2}
                if (kp < 1e-12) return amp * pi / bsq;
                if (b * kp > 650.0) return 0.0;  // K1 underflows
                return amp * pi * kp * std::cyl_bessel_k(1.0, b * kp) / b;
            }
            case PotentialKind::radial_table: {
                double s2 = s * s;
                auto f = [&](double rho) {
                    return (*table_)(std::sqrt(s2 + rho * rho)) *
                           std::cyl_bessel_j(0.0, kp * rho) * rho;
                };
                return 2 * pi * cellwise_integral(f, kp);
            }
            case PotentialKind::grid:
                throw DomainError("grid potentials use the sampled-slice FFT path");
        }
        return 0;
    }

    // tau beyond which |Vhat(tau)| tau stays below tol (ray transform cutoff).
    double suggest_tau_max(double tol) const {
        double tau = 1.0;
        double peak = 0.0;
        for (int it = 0; it < 400; ++it) {
            double v = std::abs(fourier_radial_or_probe(tau)) * tau;
            peak = std::max(peak, v);
            if (v < tol * std::max(peak, 1e-300) && tau > 4.0) return tau;
            tau *= 1.15;
        }
        throw AccuracyError("potential FT does not decay along rays (tau_max search failed)");
    }

    // Radius beyond which |V| r^2 < tol * max.
    double support_radius(double tol = 1e-12) const {
        double peak = 0;
        double r = 0.5;
        for (int it = 0; it < 400; ++it) {
            double v = std::abs(is_radial() ? radial_value(r) : probe_max(r)) * r * r;
            peak = std::max(peak, v);
            if (v < tol * std::max(peak, 1e-300) && r > 2.0) return r;
            r *= 1.12;
        }
        return r;
    }

    std::string describe() const {
        char buf[128];
        switch (kind_) {
            case PotentialKind::gaussian:
                std::snprintf(buf, sizeof buf, "gaussian(a=%.17g,sigma=%.17g)", a_, b_);
                return buf;
            case PotentialKind::soliton_linearization:
                std::snprintf(buf, sizeof buf, "soliton_linearization(g=%.17g,lambda=%.17g)", a_, b_);
                return buf;
            case PotentialKind::radial_table:
                std::snprintf(buf, sizeof buf, "radial_table(rmax=%.17g)", table_->x_max());
                return buf;
            case PotentialKind::grid:
                std::snprintf(buf, sizeof buf, "grid(n=%d,L=%.17g)", field_->n(), field_->box_len());
                return buf;
        }
        return "?";
    }

    const Field3D& grid_field() const {
        if (kind_ != PotentialKind::grid) throw DomainError("not a grid potential");
        return *field_;
    }

  private:
    // Composite 6-point GL over table cells (split further if the wavenumber
    // oscillates within a cell).
    template <class Fn>
    double cellwise_integral(Fn&& f, double k) const {
        static const Rule1D gl = gauss_legendre(6);
        double rmax = table_->x_max();
        int cells = std::max<int>(1, tvals_.empty() ? 256 : int(tvals_.size()) - 1);
        double h = rmax / cells;
        int sub = std::max(1, int(std::ceil(k * h / 1.5)));
        double hs = h / sub;
        double total = 0;
        for (int c = 0; c < cells * sub; ++c) {
            double a = c * hs;
            for (int q = 0; q < 6; ++q)
                total += 0.5 * hs * gl.weights[q] * f(a + 0.5 * hs * (1.0 + gl.nodes[q]));
        }
        return total;
    }

    double fourier_radial_or_probe(double tau) const {
        if (is_radial()) return std::abs(fourier_radial(tau));
        double m = 0;
        for (const Vec3& d : {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1},
                              Vec3{0.577350269189626, 0.577350269189626, 0.577350269189626}})
            m = std::max(m, std::abs(fourier(d * tau)));
        return m;
    }

    double probe_max(double r) const {
        double m = 0;
        for (const Vec3& d : {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}})
            m = std::max(m, std::abs(eval(d * r)));
        return m;
    }

    PotentialKind kind_ = PotentialKind::gaussian;
    double a_ = 1.0, b_ = 1.0;
    double r0_ = 0.0, dr_ = 0.0;
    std::vector<double> tvals_;
    std::shared_ptr<MonotoneCubic> table_;
    std::shared_ptr<Field3D> field_;
    std::shared_ptr<FourierTable3D> ftable_;
};

}  // namespace waveop
