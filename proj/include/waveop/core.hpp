#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace waveop {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr cplx iu{0.0, 1.0};

// ---------------------------------------------------------------------------
// Error taxonomy. Every failure carries the violated tolerance or contract in
// its message so the CLI can surface a concrete refinement hint.
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error { using Error::Error; };       // bad argument / out of box
struct ResolutionError : Error { using Error::Error; };   // grid cannot resolve request
struct AccuracyError : Error { using Error::Error; };     // quadrature failed to converge
struct WindowError : Error { using Error::Error; };       // truncation window too small
struct GateError : Error { using Error::Error; };         // smallness gate violated
struct BoxError : Error { using Error::Error; };          // field escaped the periodic box
struct ConfigError : Error { using Error::Error; };       // malformed configuration

// ---------------------------------------------------------------------------
// 3-vectors
// ---------------------------------------------------------------------------

struct Vec3 {
    double x = 0, y = 0, z = 0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }
    Vec3 normalized() const {
        double n = norm();
        if (n == 0) throw DomainError("cannot normalize zero vector");
        return *this / n;
    }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

// Two unit vectors completing omega to an orthonormal frame.
inline void orthonormal_frame(const Vec3& omega, Vec3& e1, Vec3& e2) {
    Vec3 a = std::abs(omega.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    e1 = (a - omega * a.dot(omega)).normalized();
    e2 = {omega.y * e1.z - omega.z * e1.y,
          omega.z * e1.x - omega.x * e1.z,
          omega.x * e1.y - omega.y * e1.x};
}

// ---------------------------------------------------------------------------
// Worker pool: static chunking keeps reductions deterministic. Results must
// be written to pre-allocated slots indexed by the loop variable.
// ---------------------------------------------------------------------------

inline int& worker_count_ref() {
    static int n = int(std::thread::hardware_concurrency());
    return n;
}

inline int worker_count() { return worker_count_ref() > 0 ? worker_count_ref() : 1; }
inline void set_worker_count(int n) { worker_count_ref() = n > 0 ? n : 1; }

template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    int nw = worker_count();
    if (nw <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mu;
    std::size_t chunk = (n + nw - 1) / nw;
    for (int w = 0; w < nw; ++w) {
        std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::scoped_lock lk(err_mu);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace waveop
