#pragma once

#include <cstdint>
#include <vector>

#include "anneal/instance.hpp"
#include "anneal/outcome.hpp"

namespace anneal {

// Linear inverse-temperature ramp: at sweep k of K the chain runs at
// beta = beta0 + (beta1 - beta0) * k / (K - 1).
struct SASchedule {
    double beta0 = 0.1;
    double beta1 = 3.0;
    std::int64_t sweeps = 1000;

    void validate() const;
    double beta_at(std::int64_t sweep) const {
        if (sweeps <= 1) return beta0;
        return beta0 + (beta1 - beta0) * static_cast<double>(sweep) /
                           static_cast<double>(sweeps - 1);
    }
};

struct SaOptions {
    bool randomized_order = false;  // default: fixed ascending site order
};

// Metropolis simulated annealing from a uniformly random state.  One sweep is
// one proposal per active site.  Deterministic in the seed.
AnnealOutcome sa_run(const IsingInstance& inst, const SASchedule& sched, std::uint64_t seed,
                     const SaOptions& opts = {});

// Multi-spin coded variant: one bit per replica per spin, all replicas updated
// in lockstep with one shared acceptance threshold per (sweep, site).  Each
// replica's marginal trajectory is a valid Metropolis chain; replicas start
// from independent random states.  Requires |J| = 1 and |h| <= 1.
std::vector<AnnealOutcome> sa_multispin_run(const IsingInstance& inst, const SASchedule& sched,
                                            std::uint64_t seed, int replicas);

}  // namespace anneal
