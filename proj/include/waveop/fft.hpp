#pragma once

#include <fftw3.h>

#include <complex>
#include <mutex>
#include <vector>

#include "waveop/core.hpp"

namespace waveop {

// FFTW planning is not thread safe; execution of private plans is.
inline std::mutex& fftw_plan_mutex() {
    static std::mutex mu;
    return mu;
}

namespace detail {

inline fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

struct PlanGuard {
    fftw_plan plan;
    explicit PlanGuard(fftw_plan p) : plan(p) {}
    ~PlanGuard() {
        std::scoped_lock lk(fftw_plan_mutex());
        fftw_destroy_plan(plan);
    }
};

inline void run_dft(int rank, const int* dims, cplx* data, int sign) {
    fftw_plan plan;
    {
        std::scoped_lock lk(fftw_plan_mutex());
        plan = fftw_plan_dft(rank, dims, as_fftw(data), as_fftw(data), sign, FFTW_ESTIMATE);
    }
    PlanGuard guard(plan);
    fftw_execute(plan);
}

}  // namespace detail

// Unnormalized DFT: sign=-1 forward (e^{-i...}), sign=+1 backward.
inline void fft_1d(std::vector<cplx>& a, int sign) {
    int n = int(a.size());
    detail::run_dft(1, &n, a.data(), sign);
}

inline void fft_2d(std::vector<cplx>& a, int n0, int n1, int sign) {
    int dims[2] = {n0, n1};
    detail::run_dft(2, dims, a.data(), sign);
}

inline void fft_3d(std::vector<cplx>& a, int n0, int n1, int n2, int sign) {
    int dims[3] = {n0, n1, n2};
    detail::run_dft(3, dims, a.data(), sign);
}

// DFT index k -> signed integer frequency in [-n/2, n/2).
inline int dft_freq_index(int k, int n) { return k < (n + 1) / 2 ? k : k - n; }

}  // namespace waveop
