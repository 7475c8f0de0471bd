#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "anneal/fft.hpp"
#include "anneal/instance.hpp"
#include "anneal/outcome.hpp"

namespace anneal {

// Transverse-field / coupling amplitude pair along the anneal.  Schedule I is
// the built-in linear ramp A = a0 (1-x), B = b1 x with x = t/t_f; tabulated
// schedules are loaded from a whitespace-separated three-column file
// "x A B" with x ascending from 0 to 1, linearly interpolated.
struct QASchedule {
    enum class Kind { LinearI, Tabulated };
    Kind kind = Kind::LinearI;
    double a0 = 1.0;
    double b1 = 1.0;
    std::vector<double> xs, as, bs;

    static QASchedule linear(double a0 = 1.0, double b1 = 1.0);
    static QASchedule from_file(const std::string& path);
    void validate() const;  // A non-increasing, B non-decreasing, A(0)>0, B(1)>0

    double a_at(double x) const;
    double b_at(double x) const;
};

// P x N worldline, periodic in imaginary time.  Spins are stored site-major:
// spins[site * P + tau].
struct Worldline {
    int n_sites = 0;
    int P = 0;
    double beta = 0.0;
    std::vector<std::int8_t> spins;

    std::int8_t spin(int site, int tau) const {
        return spins[static_cast<size_t>(site) * static_cast<size_t>(P) + static_cast<size_t>(tau)];
    }
};

// Discrete-time path-integral sampler: per-site Swendsen-Wang style cluster
// updates along the imaginary-time direction only.  Time bonds between
// aligned adjacent slices of a spin are activated with probability
// 1 - exp(-2 Jperp), Jperp = -(1/2) ln tanh(beta A / P); each resulting
// time segment flips with probability min(1, exp(-beta dE_space / P)) / 2
// where dE_space is the B-weighted Ising energy change over its slices.
class PimcSampler {
public:
    PimcSampler(const IsingInstance& inst, double beta, int P, std::uint64_t seed);

    void randomize();
    // Returns true when Jperp had to be clamped at the cap for this (A, B).
    bool set_couplings(double A, double B);
    void sweep();  // one cluster update per active site, ascending order
    void site_update(int site);

    const Worldline& worldline() const { return wl_; }
    const IsingInstance& instance() const { return inst_; }
    double beta() const { return wl_.beta; }
    int slices() const { return wl_.P; }
    bool jperp_clamped() const { return clamped_; }

    // Slice-overlap estimator of the site-averaged <sigma^x>.
    double sigma_x_estimate() const;
    Energy slice_energy(int tau) const;
    int best_slice(Energy* energy_out = nullptr) const;
    bool slices_identical() const;
    SpinState slice_state(int tau) const;

    static constexpr double kJperpCap = 30.0;

private:
    const IsingInstance& inst_;
    Worldline wl_;
    Rng rng_;
    std::vector<int> active_;
    double jperp_ = 0.0;
    double q_cut_ = 0.0;  // prob an aligned time bond stays open
    double bfac_ = 0.0;   // beta * B / P
    double a_arg_ = 0.0;  // beta * A / P
    bool clamped_ = false;
    std::vector<int> field_;  // per-slice integer local field, scratch
    std::vector<int> cuts_;   // segment boundaries, scratch
};

AnnealOutcome sqa_run(const IsingInstance& inst, const QASchedule& sched, double temperature,
                      int P, std::int64_t sweeps, std::uint64_t seed);

// Site-averaged connected imaginary-time correlator, accumulated over an
// equilibrated stream of worldlines.  Per-site circular autocorrelations are
// computed with an FFT; C(tau_k) = (1/N) sum_j [<s_j(0) s_j(tau)> - <s_j>^2].
class Correlator {
public:
    Correlator(const ChimeraGraph& g, int P, double beta);

    void add(const Worldline& w);
    std::vector<double> result() const;  // C(tau_k), k = 0..P-1
    double tau(int k) const { return beta_ * k / P_; }
    std::int64_t samples() const { return samples_; }

private:
    std::vector<int> active_;
    int P_;
    double beta_;
    std::int64_t samples_ = 0;
    mutable RealFft fft_;
    std::vector<double> series_;
    std::vector<double> power_;
    std::vector<double> acc_power_;
    std::vector<double> mean_sum_;  // per active site
};

// Convenience: advance the sampler and accumulate `sweeps` measurements.
std::vector<double> measure_correlator(PimcSampler& sampler, std::int64_t sweeps,
                                       int measure_every = 1);

}  // namespace anneal
