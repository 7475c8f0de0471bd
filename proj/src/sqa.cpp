#include "anneal/sqa.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "anneal/errors.hpp"

namespace anneal {

QASchedule QASchedule::linear(double a0, double b1) {
    QASchedule s;
    s.kind = Kind::LinearI;
    s.a0 = a0;
    s.b1 = b1;
    s.validate();
    return s;
}

QASchedule QASchedule::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open schedule file: " + path);
    QASchedule s;
    s.kind = Kind::Tabulated;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        double x, a, b;
        if (!(ss >> x >> a >> b))
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected 'x A B'");
        s.xs.push_back(x);
        s.as.push_back(a);
        s.bs.push_back(b);
    }
    s.validate();
    return s;
}

void QASchedule::validate() const {
    if (kind == Kind::LinearI) {
        if (!(a0 > 0.0) || !(b1 > 0.0))
            throw ConfigError("QASchedule: linear schedule needs a0 > 0 and b1 > 0");
        return;
    }
    if (xs.size() < 2) throw ConfigError("QASchedule: tabulated schedule needs >= 2 rows");
    if (xs.front() != 0.0 || xs.back() != 1.0)
        throw ConfigError("QASchedule: tabulated x must start at 0 and end at 1");
    for (size_t i = 1; i < xs.size(); ++i) {
        if (!(xs[i] > xs[i - 1])) throw ConfigError("QASchedule: x must be strictly increasing");
        if (as[i] > as[i - 1] + 1e-12) throw ConfigError("QASchedule: A must be non-increasing");
        if (bs[i] + 1e-12 < bs[i - 1]) throw ConfigError("QASchedule: B must be non-decreasing");
    }
    if (!(as.front() > 0.0)) throw ConfigError("QASchedule: A(0) must be positive");
    if (!(bs.back() > 0.0)) throw ConfigError("QASchedule: B(t_f) must be positive");
    for (double a : as)
        if (a < 0.0) throw ConfigError("QASchedule: A must be non-negative");
}

namespace {
double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    size_t hi = static_cast<size_t>(it - xs.begin());
    size_t lo = hi - 1;
    double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
    return ys[lo] + t * (ys[hi] - ys[lo]);
}
}  // namespace

double QASchedule::a_at(double x) const {
    if (kind == Kind::LinearI) return a0 * (1.0 - x);
    return interp(xs, as, x);
}

double QASchedule::b_at(double x) const {
    if (kind == Kind::LinearI) return b1 * x;
    return interp(xs, bs, x);
}

PimcSampler::PimcSampler(const IsingInstance& inst, double beta, int P, std::uint64_t seed)
    : inst_(inst), rng_(Rng::stream(seed, {0x50a50a01ULL})) {
    if (P < 2) throw ConfigError("PimcSampler: need P >= 2");
    if (!(beta > 0.0)) throw ConfigError("PimcSampler: need beta > 0");
    wl_.n_sites = inst.graph.n_sites;
    wl_.P = P;
    wl_.beta = beta;
    wl_.spins.assign(static_cast<size_t>(wl_.n_sites) * static_cast<size_t>(P), 1);
    active_ = inst.graph.active_sites();
    field_.resize(static_cast<size_t>(P));
    randomize();
}

void PimcSampler::randomize() {
    for (int site : active_) {
        std::int8_t* ring = &wl_.spins[static_cast<size_t>(site) * static_cast<size_t>(wl_.P)];
        for (int t = 0; t < wl_.P; ++t) ring[t] = static_cast<std::int8_t>(rng_.pm1());
    }
}

bool PimcSampler::set_couplings(double A, double B) {
    const double beta = wl_.beta;
    const int P = wl_.P;
    a_arg_ = beta * A / P;
    bool clamp = false;
    if (a_arg_ > 0.0) {
        jperp_ = -0.5 * std::log(std::tanh(a_arg_));
    } else {
        jperp_ = kJperpCap;
        clamp = true;
    }
    if (jperp_ >= kJperpCap) {
        jperp_ = kJperpCap;
        clamp = true;
    }
    clamped_ = clamped_ || clamp;
    q_cut_ = std::exp(-2.0 * jperp_);
    bfac_ = beta * B / P;
    return clamp;
}

void PimcSampler::site_update(int site) {
    const int P = wl_.P;
    std::int8_t* ring = &wl_.spins[static_cast<size_t>(site) * static_cast<size_t>(P)];

    // Local integer field per slice from spatial neighbours and the site field.
    const int h = inst_.h[static_cast<size_t>(site)];
    for (int t = 0; t < P; ++t) field_[static_cast<size_t>(t)] = h;
    auto nbrs = inst_.graph.neighbors(site);
    auto eids = inst_.graph.incident_edges(site);
    for (size_t k = 0; k < nbrs.size(); ++k) {
        const std::int8_t* nring =
            &wl_.spins[static_cast<size_t>(nbrs[k]) * static_cast<size_t>(P)];
        const int j = inst_.j[static_cast<size_t>(eids[k])];
        for (int t = 0; t < P; ++t) field_[static_cast<size_t>(t)] += j * nring[t];
    }

    // Segment boundaries: cut after tau when the bond (tau, tau+1) is open.
    // Walls (anti-aligned pairs) are always open; aligned bonds stay open
    // with probability q_cut_, sampled with geometric skips so the RNG cost
    // scales with the number of cuts rather than with P.
    cuts_.clear();
    auto draw_skip = [&]() -> long long {
        // aligned bonds left closed before the next open one
        if (q_cut_ >= 1.0 - 1e-14) return 0;
        if (q_cut_ <= 1e-300) return static_cast<long long>(P) + 1;
        double u = rng_.canonical();
        double g = std::log(1.0 - u) / std::log(1.0 - q_cut_);
        if (g > static_cast<double>(P) + 1.0) return static_cast<long long>(P) + 1;
        return static_cast<long long>(g);
    };
    long long skip = draw_skip();
    for (int t = 0; t < P; ++t) {
        int tn = t + 1 == P ? 0 : t + 1;
        if (ring[t] != ring[tn]) {
            cuts_.push_back(t);
        } else if (skip == 0) {
            cuts_.push_back(t);
            skip = draw_skip();
        } else {
            --skip;
        }
    }

    auto try_flip = [&](int begin, int count) {
        long long s_int = 0;
        for (int k = 0; k < count; ++k) {
            int t = begin + k;
            if (t >= P) t -= P;
            s_int += static_cast<long long>(ring[t]) * field_[static_cast<size_t>(t)];
        }
        double arg = -2.0 * bfac_ * static_cast<double>(s_int);
        double p = 0.5 * (arg >= 0.0 ? 1.0 : std::exp(arg));
        if (rng_.canonical() < p) {
            for (int k = 0; k < count; ++k) {
                int t = begin + k;
                if (t >= P) t -= P;
                ring[t] = static_cast<std::int8_t>(-ring[t]);
            }
        }
    };

    if (cuts_.empty()) {
        try_flip(0, P);
        return;
    }
    for (size_t c = 0; c < cuts_.size(); ++c) {
        int begin = cuts_[c] + 1 == P ? 0 : cuts_[c] + 1;
        int end_cut = (c + 1 < cuts_.size()) ? cuts_[c + 1] : cuts_[0];
        int count = end_cut - begin + 1;
        if (count <= 0) count += P;
        try_flip(begin, count);
    }
}

void PimcSampler::sweep() {
    for (int site : active_) site_update(site);
}

double PimcSampler::sigma_x_estimate() const {
    const int P = wl_.P;
    double th = std::tanh(a_arg_);
    double cth = 1.0 / th;
    double acc = 0.0;
    for (int site : active_) {
        const std::int8_t* ring = &wl_.spins[static_cast<size_t>(site) * static_cast<size_t>(P)];
        for (int t = 0; t < P; ++t) {
            int tn = t + 1 == P ? 0 : t + 1;
            acc += (ring[t] == ring[tn]) ? th : cth;
        }
    }
    return acc / (static_cast<double>(active_.size()) * P);
}

Energy PimcSampler::slice_energy(int tau) const {
    const int P = wl_.P;
    Energy e = 0;
    const auto& edges = inst_.graph.edges;
    for (size_t k = 0; k < edges.size(); ++k)
        e -= static_cast<Energy>(inst_.j[k]) *
             wl_.spins[static_cast<size_t>(edges[k].i) * static_cast<size_t>(P) + static_cast<size_t>(tau)] *
             wl_.spins[static_cast<size_t>(edges[k].j) * static_cast<size_t>(P) + static_cast<size_t>(tau)];
    for (int site : active_)
        e -= static_cast<Energy>(inst_.h[static_cast<size_t>(site)]) *
             wl_.spins[static_cast<size_t>(site) * static_cast<size_t>(P) + static_cast<size_t>(tau)];
    return e;
}

int PimcSampler::best_slice(Energy* energy_out) const {
    int best = 0;
    Energy be = slice_energy(0);
    for (int t = 1; t < wl_.P; ++t) {
        Energy e = slice_energy(t);
        if (e < be) {
            be = e;
            best = t;
        }
    }
    if (energy_out) *energy_out = be;
    return best;
}

bool PimcSampler::slices_identical() const {
    for (int site : active_) {
        const std::int8_t* ring = &wl_.spins[static_cast<size_t>(site) * static_cast<size_t>(wl_.P)];
        for (int t = 1; t < wl_.P; ++t)
            if (ring[t] != ring[0]) return false;
    }
    return true;
}

SpinState PimcSampler::slice_state(int tau) const {
    SpinState x(static_cast<size_t>(wl_.n_sites), 1);
    for (int site : active_)
        x[static_cast<size_t>(site)] =
            wl_.spins[static_cast<size_t>(site) * static_cast<size_t>(wl_.P) + static_cast<size_t>(tau)];
    return x;
}

AnnealOutcome sqa_run(const IsingInstance& inst, const QASchedule& sched, double temperature,
                      int P, std::int64_t sweeps, std::uint64_t seed) {
    sched.validate();
    if (!(temperature > 0.0)) throw ConfigError("sqa_run: need T > 0");
    if (sweeps < 1) throw ConfigError("sqa_run: need sweeps >= 1");
    PimcSampler sampler(inst, 1.0 / temperature, P, seed);
    // A reaching zero on the final schedule point is the natural end of the
    // anneal; only clamping before that flags the run.
    bool clamped_early = false;
    for (std::int64_t step = 0; step < sweeps; ++step) {
        double x = sweeps == 1 ? 1.0
                               : static_cast<double>(step) / static_cast<double>(sweeps - 1);
        bool clamped = sampler.set_couplings(sched.a_at(x), sched.b_at(x));
        if (clamped && x < 1.0) clamped_early = true;
        sampler.sweep();
    }
    AnnealOutcome out;
    Energy e = 0;
    int tau = sampler.best_slice(&e);
    out.state = sampler.slice_state(tau);
    out.energy = e;
    out.seed = seed;
    out.algorithm = "sqa";
    out.jperp_clamped = clamped_early;
    out.slices_agree = sampler.slices_identical();
    return out;
}

Correlator::Correlator(const ChimeraGraph& g, int P, double beta)
    : active_(g.active_sites()), P_(P), beta_(beta), fft_(P) {
    series_.resize(static_cast<size_t>(P));
    power_.resize(static_cast<size_t>(fft_.spectrum_size()));
    acc_power_.assign(static_cast<size_t>(fft_.spectrum_size()), 0.0);
    mean_sum_.assign(active_.size(), 0.0);
}

void Correlator::add(const Worldline& w) {
    for (size_t a = 0; a < active_.size(); ++a) {
        const std::int8_t* ring =
            &w.spins[static_cast<size_t>(active_[a]) * static_cast<size_t>(P_)];
        double sum = 0.0;
        for (int t = 0; t < P_; ++t) {
            series_[static_cast<size_t>(t)] = ring[t];
            sum += ring[t];
        }
        fft_.power_spectrum(series_.data(), power_.data());
        for (size_t k = 0; k < power_.size(); ++k) acc_power_[k] += power_[k];
        mean_sum_[a] += sum / P_;
    }
    ++samples_;
}

std::vector<double> Correlator::result() const {
    std::vector<double> corr(static_cast<size_t>(P_));
    std::vector<double> spec = acc_power_;
    fft_.inverse_real_spectrum(spec.data(), corr.data());
    const double n_act = static_cast<double>(active_.size());
    const double norm = static_cast<double>(P_) * static_cast<double>(P_) *
                        static_cast<double>(samples_) * n_act;
    double mean_sq = 0.0;
    for (double m : mean_sum_) {
        double mj = m / static_cast<double>(samples_);
        mean_sq += mj * mj;
    }
    mean_sq /= n_act;
    for (double& c : corr) c = c / norm - mean_sq;
    return corr;
}

std::vector<double> measure_correlator(PimcSampler& sampler, std::int64_t sweeps,
                                       int measure_every) {
    if (measure_every < 1) measure_every = 1;
    Correlator corr(sampler.instance().graph, sampler.slices(), sampler.beta());
    for (std::int64_t s = 0; s < sweeps; ++s) {
        sampler.sweep();
        if (s % measure_every == 0) corr.add(sampler.worldline());
    }
    return corr.result();
}

}  // namespace anneal
