#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "anneal/instance.hpp"

namespace anneal {

// Sentinel for "no finite number of repetitions" (s = 0).
inline constexpr std::uint64_t kRepInfinite = std::numeric_limits<std::uint64_t>::max();

// R = ceil(ln(1-p) / ln(1-s)); s >= p gives 1.
std::uint64_t repetitions(double s, double p = 0.99);

// Geometric mean of failure rates: 1 - prod_g (1 - s_g)^(1/G).
double gauge_mean_success(std::span<const double> s_per_gauge);

struct Histogram {
    double lo = 0.0, hi = 1.0;
    std::vector<std::int64_t> counts;
    std::int64_t total = 0;

    int bins() const { return static_cast<int>(counts.size()); }
    double p(int b) const {
        return total ? static_cast<double>(counts[static_cast<size_t>(b)]) /
                           static_cast<double>(total)
                     : 0.0;
    }
};

Histogram histogram(std::span<const double> values, int bins = 20, double lo = 0.0,
                    double hi = 1.0);

// Joint distribution of success probability and per-run energy above the
// ground state.  All instances must carry the same number of runs so that the
// marginal over delta reproduces the success histogram exactly.
struct JointHist {
    Histogram s_marginal;                          // filled from the same counts
    std::vector<Energy> delta_values;              // sorted distinct deltas
    std::vector<std::vector<std::int64_t>> counts; // [s_bin][delta_index]
    std::int64_t runs_per_instance = 0;
    std::int64_t n_instances = 0;

    double p(int s_bin, int delta_index) const {
        return static_cast<double>(counts[static_cast<size_t>(s_bin)][static_cast<size_t>(delta_index)]) /
               (static_cast<double>(n_instances) * static_cast<double>(runs_per_instance));
    }
    std::vector<double> marginal_s() const;
};

JointHist joint_hist(std::span<const double> s, const std::vector<std::vector<Energy>>& deltas,
                     int s_bins = 20);

// Normalised mid-ranks in (0,1): ties share the average rank.
std::vector<double> mid_ranks(std::span<const double> values);

// Copula density on bins x bins cells; independent inputs give density ~= 1.
std::vector<std::vector<double>> copula(std::span<const double> x, std::span<const double> y,
                                        int bins);

double spearman(std::span<const double> x, std::span<const double> y);

// Declared bimodality metric: the end bins [0,0.05) and [0.95,1] jointly hold
// >= 40% of instances and each holds >= 10%.  Unimodal: some window of width
// 0.25 holds >= 60%.
bool is_bimodal(std::span<const double> s_values);
bool is_unimodal(std::span<const double> s_values);

int hamming_nearest(const ChimeraGraph& g, const SpinState& state,
                    const std::vector<SpinState>& ground_states);

int free_qubits(const IsingInstance& inst, const SpinState& state);

// One pass over all sites; flips the single spin with the most negative
// energy change (lowest index on ties), or returns the input unchanged.
SpinState reduce_single_flip(const IsingInstance& inst, const SpinState& state);

struct EffortPoint {
    double t_f = 0.0;
    double repetitions = 0.0;
    double total = 0.0;   // R * t_f
    bool boundary = false;  // minimum sits at the edge of the t_f grid
    bool finite = true;     // false when every s on the grid is zero
};

// Success-vs-annealing-time curve -> grid point minimising R(t_f) * t_f.
EffortPoint optimal_effort(std::span<const std::pair<double, double>> curve, double p = 0.99);

struct ScalingRow {
    int n = 0;
    double percentile = 0.0;
    double effort = 0.0;
    int n_instances = 0;
    bool insufficient = false;  // fewer than 20 instances at this size
};

std::vector<ScalingRow> percentile_scaling(
    const std::vector<std::pair<int, std::vector<double>>>& efforts_by_size,
    std::span<const double> percentiles, bool parallel_normalize);

}  // namespace anneal
