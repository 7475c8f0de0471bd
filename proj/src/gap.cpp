#include "anneal/gap.hpp"

#include <algorithm>
#include <cmath>

#include "anneal/errors.hpp"

namespace anneal {

const char* to_string(GapQuality q) {
    switch (q) {
        case GapQuality::Clean: return "clean";
        case GapQuality::NextLevel: return "next-level";
        case GapQuality::Failed: return "failed";
    }
    return "?";
}

namespace {

struct ThresholdFit {
    bool ok = false;
    double delta = 0.0;
    double tau0 = 0.0;
};

// Statistical noise scale of C - Cmid, from the flat stretch next to beta/2.
double tail_noise(const std::vector<double>& corr, int P, double beta) {
    const int half = P / 2;
    const double cmid = corr[static_cast<size_t>(half)];
    int k_from = static_cast<int>(0.45 * beta / (beta / P));  // tau >= 0.45 beta
    k_from = std::min(k_from, half - 2);
    if (k_from < 0) return 0.0;
    double acc = 0.0;
    int n = 0;
    for (int k = k_from; k < half; ++k) {
        double d = corr[static_cast<size_t>(k)] - cmid;
        acc += d * d;
        ++n;
    }
    return n >= 8 ? std::sqrt(acc / n) : 0.0;
}

// Weighted least squares of ln(C - Cmid) on the window; weights (C - Cmid)^2
// (inverse variance of the log for flat additive noise), and points below
// three times the tail noise are dropped so the log of pure noise cannot
// drag the slope.
ThresholdFit fit_threshold(const std::vector<double>& corr, int P, double beta, double s,
                           double noise_floor) {
    ThresholdFit fit;
    const int half = P / 2;
    const double cmid = corr[static_cast<size_t>(half)];
    int k0 = half;
    for (int k = 0; k <= half; ++k) {
        if (corr[static_cast<size_t>(k)] - cmid <= s) {
            k0 = k;
            break;
        }
    }
    const double dtau = beta / P;
    fit.tau0 = k0 * dtau;
    if (fit.tau0 + 5.0 > beta / 2.0) return fit;  // window does not fit
    const int kend = std::min(half, k0 + static_cast<int>(std::floor(5.0 / dtau)));
    const double floor = 3.0 * noise_floor;

    double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
    int used = 0;
    for (int k = k0; k <= kend; ++k) {
        double d = corr[static_cast<size_t>(k)] - cmid;
        if (d <= floor) continue;
        double x = k * dtau;
        double y = std::log(d);
        double w = d * d;
        sw += w;
        swx += w * x;
        swy += w * y;
        swxx += w * x * x;
        swxy += w * x * y;
        ++used;
    }
    if (used < 3) return fit;
    double denom = sw * swxx - swx * swx;
    if (denom <= 0.0) return fit;
    double slope = (sw * swxy - swx * swy) / denom;
    fit.delta = -slope;
    fit.ok = true;
    return fit;
}

}  // namespace

double gap_window_tau0(const std::vector<double>& corr, int P, double beta, double threshold) {
    const int half = P / 2;
    const double cmid = corr[static_cast<size_t>(half)];
    for (int k = 0; k <= half; ++k)
        if (corr[static_cast<size_t>(k)] - cmid <= threshold) return k * beta / P;
    return beta / 2.0;
}

GapEstimate fit_gap(const std::vector<double>& corr, int P, double beta, double gamma) {
    GapEstimate est;
    est.gamma = gamma;
    est.beta = beta;
    est.P = P;
    if (P % 2 != 0) throw ConfigError("fit_gap: P must be even so that tau = beta/2 is sampled");

    const double f = 0.2 + 0.3 * gamma;
    const double s0 = 0.008 * f, s1 = 0.006 * f, s2 = 0.011 * f;
    const double noise = tail_noise(corr, P, beta);
    ThresholdFit f0 = fit_threshold(corr, P, beta, s0, noise);
    ThresholdFit f1 = fit_threshold(corr, P, beta, s1, noise);
    ThresholdFit f2 = fit_threshold(corr, P, beta, s2, noise);
    est.tau0 = f0.tau0;
    est.delta = f0.delta;
    if (!f0.ok || !f1.ok || !f2.ok || f0.delta <= 0.0) {
        est.quality = GapQuality::Failed;
        est.err = 0.0;
        return est;
    }
    double err = std::max(f2.delta - f0.delta, f0.delta - f1.delta);
    if (err < 0.0) err = std::max(std::abs(f2.delta - f0.delta), std::abs(f0.delta - f1.delta));
    est.err = err;

    // A large surviving constant at beta/2 means a mode slower than the fit
    // resolves was subtracted away: the reported value is the next level up.
    const double cmid = corr[static_cast<size_t>(P / 2)];
    est.quality = (cmid > s0) ? GapQuality::NextLevel : GapQuality::Clean;
    return est;
}

namespace {

int auto_slices(double beta, double gamma_max, double eps) {
    int p = static_cast<int>(std::ceil(beta * gamma_max / eps));
    p = std::max(p, 64);
    if (p % 2 != 0) ++p;
    return p;
}

std::int64_t scaled_sweeps(double scale, double gamma) {
    double s = std::ceil(scale * 200000.0 / gamma);
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(s));
}

}  // namespace

GapEstimate estimate_gap(const IsingInstance& inst, double gamma, double beta, int P,
                         std::int64_t sweeps, std::uint64_t seed, const GapOptions& opts) {
    if (!(gamma > 0.0)) throw ConfigError("estimate_gap: need gamma > 0");
    if (P <= 0) P = auto_slices(beta, gamma, opts.trotter_eps);
    if (P % 2 != 0) ++P;
    PimcSampler sampler(inst, beta, P, seed);
    sampler.set_couplings(gamma, 1.0);
    const std::int64_t equil = scaled_sweeps(opts.equil_scale, gamma);
    for (std::int64_t s = 0; s < equil; ++s) sampler.sweep();
    if (sweeps <= 0) sweeps = scaled_sweeps(opts.meas_scale, gamma);
    std::vector<double> corr = measure_correlator(sampler, sweeps, opts.measure_every);
    return fit_gap(corr, P, beta, gamma);
}

std::vector<GapEstimate> gap_sweep(const IsingInstance& inst, std::uint64_t seed,
                                   const GapSweepOptions& opts) {
    std::vector<GapEstimate> out;
    for (double beta : opts.betas) {
        int P = opts.P > 0 ? opts.P : auto_slices(beta, opts.gamma_max, opts.point.trotter_eps);
        if (P % 2 != 0) ++P;
        PimcSampler sampler(inst, beta, P, seed);
        bool first = true;
        for (double gamma = opts.gamma_max; gamma >= opts.gamma_min - 1e-9; gamma -= opts.step) {
            sampler.set_couplings(gamma, 1.0);
            if (first) sampler.randomize(), first = false;
            const std::int64_t equil = scaled_sweeps(opts.point.equil_scale, gamma);
            for (std::int64_t s = 0; s < equil; ++s) sampler.sweep();
            std::int64_t meas = opts.meas_sweeps > 0 ? opts.meas_sweeps
                                                     : scaled_sweeps(opts.point.meas_scale, gamma);
            std::vector<double> corr = measure_correlator(sampler, meas, opts.point.measure_every);
            out.push_back(fit_gap(corr, P, beta, gamma));
        }
    }
    return out;
}

}  // namespace anneal
