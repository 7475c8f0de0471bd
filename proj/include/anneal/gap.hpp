#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "anneal/instance.hpp"
#include "anneal/sqa.hpp"

namespace anneal {

enum class GapQuality { Clean, NextLevel, Failed };

const char* to_string(GapQuality q);

struct GapEstimate {
    double gamma = 0.0;
    double beta = 0.0;
    double delta = 0.0;  // units of B
    double err = 0.0;
    double tau0 = 0.0;   // fit window is [tau0, tau0 + 5/J], J = 1
    GapQuality quality = GapQuality::Failed;
    int P = 0;
};

struct GapOptions {
    // Equilibration runs ceil(equil_scale * 200000 / gamma) sweeps; the
    // measurement stage defaults to the same formula scaled by meas_scale
    // when an explicit sweep count is not given.
    double equil_scale = 1.0;
    double meas_scale = 1.0;
    int measure_every = 1;
    double trotter_eps = 0.05;  // auto P: beta * gamma_max / P <= eps
};

// Gap fit on a measured correlator: tau0 is the first sampled tau with
// C(tau) - C(beta/2) <= s0, s0 = 0.008 f(Gamma), f(Gamma) = 0.2 + 0.3 Gamma;
// ln(C - C(beta/2)) is fitted on [tau0, tau0 + 5/J]; repeating with
// s1 = 0.006 f and s2 = 0.011 f gives err = max(d2 - d0, d0 - d1).
GapEstimate fit_gap(const std::vector<double>& corr, int P, double beta, double gamma);

// First sampled tau with C(tau) - C(beta/2) <= threshold (diagnostic).
double gap_window_tau0(const std::vector<double>& corr, int P, double beta, double threshold);

// Equilibrium PIMC at fixed Gamma = A/B (B = 1) followed by the fit above.
// sweeps <= 0 selects the meas_scale formula; P <= 0 selects the Trotter rule.
GapEstimate estimate_gap(const IsingInstance& inst, double gamma, double beta, int P,
                         std::int64_t sweeps, std::uint64_t seed, const GapOptions& opts = {});

struct GapSweepOptions {
    double gamma_max = 3.0;
    double gamma_min = 0.1;
    double step = 0.1;
    std::vector<double> betas{100.0, 200.0};
    int P = 0;                   // 0: Trotter rule from gamma_max
    std::int64_t meas_sweeps = 0;  // 0: meas_scale formula per point
    GapOptions point;
};

// Descends Gamma from gamma_max in steps, warm-starting each point from the
// previous worldline; the first point starts from a random configuration.
std::vector<GapEstimate> gap_sweep(const IsingInstance& inst, std::uint64_t seed,
                                   const GapSweepOptions& opts = {});

}  // namespace anneal
