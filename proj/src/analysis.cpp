#include "anneal/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "anneal/errors.hpp"

namespace anneal {

std::uint64_t repetitions(double s, double p) {
    if (!(p > 0.0) || !(p < 1.0)) throw ConfigError("repetitions: need 0 < p < 1");
    if (s < 0.0 || s > 1.0) throw ConfigError("repetitions: need 0 <= s <= 1");
    if (s == 0.0) return kRepInfinite;
    if (s >= p) return 1;
    double r = std::log1p(-p) / std::log1p(-s);
    return static_cast<std::uint64_t>(std::ceil(r - 1e-12));
}

double gauge_mean_success(std::span<const double> s_per_gauge) {
    if (s_per_gauge.empty()) throw ConfigError("gauge_mean_success: empty gauge list");
    double acc = 0.0;
    for (double s : s_per_gauge) {
        if (s < 0.0 || s > 1.0) throw ConfigError("gauge_mean_success: s outside [0,1]");
        acc += std::log1p(-s);
    }
    return 1.0 - std::exp(acc / static_cast<double>(s_per_gauge.size()));
}

Histogram histogram(std::span<const double> values, int bins, double lo, double hi) {
    if (bins < 1) throw ConfigError("histogram: need bins >= 1");
    Histogram h;
    h.lo = lo;
    h.hi = hi;
    h.counts.assign(static_cast<size_t>(bins), 0);
    for (double v : values) {
        int b = static_cast<int>(std::floor((v - lo) / (hi - lo) * bins));
        b = std::clamp(b, 0, bins - 1);
        ++h.counts[static_cast<size_t>(b)];
        ++h.total;
    }
    return h;
}

std::vector<double> JointHist::marginal_s() const {
    std::vector<double> out(counts.size(), 0.0);
    for (size_t b = 0; b < counts.size(); ++b) {
        std::int64_t row = 0;
        for (std::int64_t c : counts[b]) row += c;
        out[b] = static_cast<double>(row) /
                 (static_cast<double>(n_instances) * static_cast<double>(runs_per_instance));
    }
    return out;
}

JointHist joint_hist(std::span<const double> s, const std::vector<std::vector<Energy>>& deltas,
                     int s_bins) {
    if (s.size() != deltas.size()) throw ConfigError("joint_hist: length mismatch");
    if (s.empty()) throw ConfigError("joint_hist: no instances");
    JointHist jh;
    jh.n_instances = static_cast<std::int64_t>(s.size());
    jh.runs_per_instance = static_cast<std::int64_t>(deltas.front().size());
    for (const auto& d : deltas)
        if (static_cast<std::int64_t>(d.size()) != jh.runs_per_instance)
            throw ConfigError("joint_hist: all instances need the same run count");

    std::map<Energy, int> index;
    for (const auto& d : deltas)
        for (Energy v : d) index.emplace(v, 0);
    int next = 0;
    for (auto& [v, idx] : index) idx = next++;
    jh.delta_values.reserve(index.size());
    for (const auto& [v, idx] : index) jh.delta_values.push_back(v);

    jh.s_marginal = histogram(s, s_bins);
    jh.counts.assign(static_cast<size_t>(s_bins),
                     std::vector<std::int64_t>(index.size(), 0));
    for (size_t i = 0; i < s.size(); ++i) {
        int b = std::clamp(static_cast<int>(std::floor(s[i] * s_bins)), 0, s_bins - 1);
        for (Energy v : deltas[i]) ++jh.counts[static_cast<size_t>(b)][static_cast<size_t>(index[v])];
    }
    return jh;
}

std::vector<double> mid_ranks(std::span<const double> values) {
    const size_t n = values.size();
    std::vector<size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](size_t a, size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n, 0.0);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && values[idx[j + 1]] == values[idx[i]]) ++j;
        double mid = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
        for (size_t k = i; k <= j; ++k) ranks[idx[k]] = mid;
        i = j + 1;
    }
    for (double& r : ranks) r = (r - 0.5) / static_cast<double>(n);
    return ranks;
}

std::vector<std::vector<double>> copula(std::span<const double> x, std::span<const double> y,
                                        int bins) {
    if (x.size() != y.size()) throw ConfigError("copula: length mismatch");
    if (x.empty()) throw ConfigError("copula: empty input");
    if (bins < 1) throw ConfigError("copula: need bins >= 1");
    std::vector<double> rx = mid_ranks(x), ry = mid_ranks(y);
    std::vector<std::vector<double>> density(static_cast<size_t>(bins),
                                             std::vector<double>(static_cast<size_t>(bins), 0.0));
    const double cell_norm = static_cast<double>(bins) * static_cast<double>(bins) /
                             static_cast<double>(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        int bx = std::clamp(static_cast<int>(rx[i] * bins), 0, bins - 1);
        int by = std::clamp(static_cast<int>(ry[i] * bins), 0, bins - 1);
        density[static_cast<size_t>(bx)][static_cast<size_t>(by)] += cell_norm;
    }
    return density;
}

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw ConfigError("spearman: bad input");
    std::vector<double> rx = mid_ranks(x), ry = mid_ranks(y);
    double mx = 0, my = 0;
    for (size_t i = 0; i < rx.size(); ++i) mx += rx[i], my += ry[i];
    mx /= static_cast<double>(rx.size());
    my /= static_cast<double>(ry.size());
    double sxy = 0, sxx = 0, syy = 0;
    for (size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx <= 0.0 || syy <= 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

bool is_bimodal(std::span<const double> s_values) {
    if (s_values.empty()) return false;
    double low = 0, high = 0;
    for (double s : s_values) {
        if (s < 0.05) ++low;
        if (s >= 0.95) ++high;
    }
    low /= static_cast<double>(s_values.size());
    high /= static_cast<double>(s_values.size());
    return low >= 0.10 && high >= 0.10 && (low + high) >= 0.40;
}

bool is_unimodal(std::span<const double> s_values) {
    if (s_values.empty()) return false;
    Histogram h = histogram(s_values, 20);
    for (int start = 0; start + 5 <= 20; ++start) {
        std::int64_t mass = 0;
        for (int b = start; b < start + 5; ++b) mass += h.counts[static_cast<size_t>(b)];
        if (static_cast<double>(mass) / static_cast<double>(h.total) >= 0.60) return true;
    }
    return false;
}

int hamming_nearest(const ChimeraGraph& g, const SpinState& state,
                    const std::vector<SpinState>& ground_states) {
    if (ground_states.empty()) throw ConfigError("hamming_nearest: empty ground-state set");
    int best = g.n_sites + 1;
    for (const SpinState& gs : ground_states)
        best = std::min(best, hamming_distance(g, state, gs));
    return best;
}

int free_qubits(const IsingInstance& inst, const SpinState& state) {
    int n = 0;
    for (int i = 0; i < inst.graph.n_sites; ++i)
        if (inst.graph.is_active(i) && delta_energy(inst, state, i) == 0) ++n;
    return n;
}

SpinState reduce_single_flip(const IsingInstance& inst, const SpinState& state) {
    int best_site = -1;
    Energy best_delta = 0;
    for (int i = 0; i < inst.graph.n_sites; ++i) {
        if (!inst.graph.is_active(i)) continue;
        Energy d = delta_energy(inst, state, i);
        if (d < best_delta) {
            best_delta = d;
            best_site = i;
        }
    }
    SpinState out = state;
    if (best_site >= 0)
        out[static_cast<size_t>(best_site)] =
            static_cast<std::int8_t>(-out[static_cast<size_t>(best_site)]);
    return out;
}

EffortPoint optimal_effort(std::span<const std::pair<double, double>> curve, double p) {
    if (curve.size() < 3) throw ConfigError("optimal_effort: need at least 3 grid points");
    EffortPoint best;
    best.finite = false;
    size_t best_idx = 0;
    for (size_t i = 0; i < curve.size(); ++i) {
        auto [tf, s] = curve[i];
        std::uint64_t r = repetitions(s, p);
        if (r == kRepInfinite) continue;
        double total = static_cast<double>(r) * tf;
        if (!best.finite || total < best.total) {
            best.finite = true;
            best.t_f = tf;
            best.repetitions = static_cast<double>(r);
            best.total = total;
            best_idx = i;
        }
    }
    if (best.finite) best.boundary = (best_idx == 0 || best_idx + 1 == curve.size());
    return best;
}

namespace {
double nearest_rank(std::vector<double>& sorted, double p) {
    const size_t n = sorted.size();
    size_t k = static_cast<size_t>(std::ceil(p * static_cast<double>(n)));
    k = std::clamp<size_t>(k, 1, n);
    return sorted[k - 1];
}
}  // namespace

std::vector<ScalingRow> percentile_scaling(
    const std::vector<std::pair<int, std::vector<double>>>& efforts_by_size,
    std::span<const double> percentiles, bool parallel_normalize) {
    std::vector<ScalingRow> rows;
    for (const auto& [n, efforts] : efforts_by_size) {
        std::vector<double> sorted = efforts;
        std::sort(sorted.begin(), sorted.end());
        for (double p : percentiles) {
            ScalingRow row;
            row.n = n;
            row.percentile = p;
            row.n_instances = static_cast<int>(sorted.size());
            row.insufficient = sorted.size() < 20;
            double e = sorted.empty() ? 0.0 : nearest_rank(sorted, p);
            row.effort = parallel_normalize ? e / static_cast<double>(n) : e;
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace anneal
