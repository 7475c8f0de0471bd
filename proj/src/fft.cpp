#include "anneal/fft.hpp"

#include <fftw3.h>

namespace anneal {

RealFft::RealFft(int n) : n_(n) {
    rbuf_ = fftw_alloc_real(static_cast<size_t>(n_));
    cbuf_ = fftw_alloc_complex(static_cast<size_t>(n_ / 2 + 1));
    plan_fwd_ = fftw_plan_dft_r2c_1d(n_, rbuf_, static_cast<fftw_complex*>(cbuf_), FFTW_ESTIMATE);
    plan_inv_ = fftw_plan_dft_c2r_1d(n_, static_cast<fftw_complex*>(cbuf_), rbuf_, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
    fftw_free(rbuf_);
    fftw_free(cbuf_);
}

void RealFft::power_spectrum(const double* in, double* power_out) {
    for (int t = 0; t < n_; ++t) rbuf_[t] = in[t];
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
    auto* c = static_cast<fftw_complex*>(cbuf_);
    for (int k = 0; k <= n_ / 2; ++k) power_out[k] = c[k][0] * c[k][0] + c[k][1] * c[k][1];
}

void RealFft::inverse_real_spectrum(const double* spectrum, double* out) {
    auto* c = static_cast<fftw_complex*>(cbuf_);
    for (int k = 0; k <= n_ / 2; ++k) {
        c[k][0] = spectrum[k];
        c[k][1] = 0.0;
    }
    fftw_execute(static_cast<fftw_plan>(plan_inv_));
    for (int t = 0; t < n_; ++t) out[t] = rbuf_[t];
}

}  // namespace anneal
