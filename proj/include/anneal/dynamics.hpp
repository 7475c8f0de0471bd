#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "anneal/instance.hpp"
#include "anneal/outcome.hpp"

namespace anneal {

// Classical O(3) spin dynamics annealer: unit vectors M_i precess as
// dM_i/dt = H_i(t) x M_i with a decaying transverse field along x and a
// growing coupling field along z.  Spins start near -x, anti-aligned with the
// transverse field, and adiabatically anti-follow H; the published z field
// H_i^z = -(t/t_f)(sum_j J_ij M_j^z + h_i) is then the energy-descending
// reading (a ferromagnet ends aligned) and is the default.  alternate_sign
// flips it.  RK4 integration with per-step renormalisation.
struct SdOptions {
    double h_x = 1.0;
    double dt = 0.0;  // <= 0 selects t_f / 1000
    bool alternate_sign = false;
    double tie_epsilon = 1e-12;
    // When non-empty (one (delta, eta) pair per site), replaces the seeded
    // random perturbations; used for covariance checks.
    std::vector<std::array<double, 2>> init_delta_eta;
};

struct SdResult {
    AnnealOutcome outcome;
    std::vector<std::array<double, 3>> initial_m;
    std::vector<std::array<double, 3>> final_m;  // per site, inactive left at x axis
    double max_norm_drift = 0.0;  // max |1 - |M|| seen before renormalisation
};

SdResult sd_run_full(const IsingInstance& inst, double t_f, std::uint64_t seed,
                     const SdOptions& opts = {});

AnnealOutcome sd_run(const IsingInstance& inst, double t_f, double dt, double h_x,
                     std::uint64_t seed);

// Sign extraction with the documented tie rule: |M_z| < eps resolves to +1.
std::int8_t spin_sign(double m_z, double eps, bool& tie);

}  // namespace anneal
