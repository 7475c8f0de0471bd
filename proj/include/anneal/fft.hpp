#pragma once

namespace anneal {

// Thin FFTW wrapper for circular autocorrelation work.  Not thread-safe.
class RealFft {
public:
    explicit RealFft(int n);
    ~RealFft();
    RealFft(const RealFft&) = delete;
    RealFft& operator=(const RealFft&) = delete;

    int size() const { return n_; }
    int spectrum_size() const { return n_ / 2 + 1; }

    // |F_k|^2 of a real length-n series, k = 0..n/2.
    void power_spectrum(const double* in, double* power_out);

    // Unnormalised inverse DFT of a real (zero-phase) half spectrum; the
    // length-n output divided by n^2 is the circular mean of in*shifted(in).
    void inverse_real_spectrum(const double* spectrum, double* out);

private:
    int n_;
    double* rbuf_;
    void* cbuf_;
    void* plan_fwd_;
    void* plan_inv_;
};

}  // namespace anneal
