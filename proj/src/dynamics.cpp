#include "anneal/dynamics.hpp"

#include <cmath>

#include "anneal/errors.hpp"

namespace anneal {

std::int8_t spin_sign(double m_z, double eps, bool& tie) {
    if (std::abs(m_z) < eps) {
        tie = true;
        return 1;
    }
    return m_z > 0.0 ? 1 : -1;
}

namespace {

using Vec3 = std::array<double, 3>;

struct System {
    const IsingInstance& inst;
    const std::vector<int>& active;
    double t_f;
    double h_x;
    double sign_z;

    void derivative(double t, const std::vector<Vec3>& m, std::vector<Vec3>& dm) const {
        const double ramp_x = (1.0 - t / t_f) * h_x;
        const double ramp_z = t / t_f;
        for (int site : active) {
            double fz = inst.h[static_cast<size_t>(site)];
            auto nbrs = inst.graph.neighbors(site);
            auto eids = inst.graph.incident_edges(site);
            for (size_t k = 0; k < nbrs.size(); ++k)
                fz += inst.j[static_cast<size_t>(eids[k])] * m[static_cast<size_t>(nbrs[k])][2];
            const double hx = ramp_x;
            const double hz = sign_z * ramp_z * fz;
            const Vec3& v = m[static_cast<size_t>(site)];
            Vec3& d = dm[static_cast<size_t>(site)];
            d[0] = -hz * v[1];
            d[1] = hz * v[0] - hx * v[2];
            d[2] = hx * v[1];
        }
    }
};

}  // namespace

SdResult sd_run_full(const IsingInstance& inst, double t_f, std::uint64_t seed,
                     const SdOptions& opts) {
    if (!(t_f > 0.0)) throw ConfigError("sd_run: need t_f > 0");
    double dt = opts.dt > 0.0 ? opts.dt : t_f / 1000.0;
    if (dt > t_f / 100.0) throw ConfigError("sd_run: need dt <= t_f / 100");
    const long long steps = std::llround(t_f / dt);
    dt = t_f / static_cast<double>(steps);

    const ChimeraGraph& g = inst.graph;
    std::vector<int> active = g.active_sites();
    Rng rng = Rng::stream(seed, {0x5d5d0001ULL});

    if (!opts.init_delta_eta.empty() &&
        opts.init_delta_eta.size() != static_cast<size_t>(g.n_sites))
        throw ConfigError("sd_run: init_delta_eta must have one entry per site");

    std::vector<Vec3> m(static_cast<size_t>(g.n_sites), Vec3{-1.0, 0.0, 0.0});
    for (int site : active) {
        double delta, eta;
        if (!opts.init_delta_eta.empty()) {
            delta = opts.init_delta_eta[static_cast<size_t>(site)][0];
            eta = opts.init_delta_eta[static_cast<size_t>(site)][1];
        } else {
            delta = 0.2 * rng.canonical() - 0.1;
            eta = 0.2 * rng.canonical() - 0.1;
        }
        m[static_cast<size_t>(site)] = {-std::sqrt(1.0 - delta * delta - eta * eta), delta, eta};
    }

    System sys{inst, active, t_f, opts.h_x, opts.alternate_sign ? 1.0 : -1.0};
    std::vector<Vec3> k1(m.size()), k2(m.size()), k3(m.size()), k4(m.size()), tmp(m.size());
    double max_drift = 0.0;
    std::vector<Vec3> initial_m = m;

    for (long long step = 0; step < steps; ++step) {
        const double t = static_cast<double>(step) * dt;
        sys.derivative(t, m, k1);
        for (int s : active)
            for (int c = 0; c < 3; ++c)
                tmp[static_cast<size_t>(s)][static_cast<size_t>(c)] =
                    m[static_cast<size_t>(s)][static_cast<size_t>(c)] +
                    0.5 * dt * k1[static_cast<size_t>(s)][static_cast<size_t>(c)];
        sys.derivative(t + 0.5 * dt, tmp, k2);
        for (int s : active)
            for (int c = 0; c < 3; ++c)
                tmp[static_cast<size_t>(s)][static_cast<size_t>(c)] =
                    m[static_cast<size_t>(s)][static_cast<size_t>(c)] +
                    0.5 * dt * k2[static_cast<size_t>(s)][static_cast<size_t>(c)];
        sys.derivative(t + 0.5 * dt, tmp, k3);
        for (int s : active)
            for (int c = 0; c < 3; ++c)
                tmp[static_cast<size_t>(s)][static_cast<size_t>(c)] =
                    m[static_cast<size_t>(s)][static_cast<size_t>(c)] +
                    dt * k3[static_cast<size_t>(s)][static_cast<size_t>(c)];
        sys.derivative(t + dt, tmp, k4);
        for (int s : active) {
            Vec3& v = m[static_cast<size_t>(s)];
            for (int c = 0; c < 3; ++c)
                v[static_cast<size_t>(c)] +=
                    dt / 6.0 *
                    (k1[static_cast<size_t>(s)][static_cast<size_t>(c)] +
                     2.0 * k2[static_cast<size_t>(s)][static_cast<size_t>(c)] +
                     2.0 * k3[static_cast<size_t>(s)][static_cast<size_t>(c)] +
                     k4[static_cast<size_t>(s)][static_cast<size_t>(c)]);
            double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
            max_drift = std::max(max_drift, std::abs(norm - 1.0));
            v[0] /= norm;
            v[1] /= norm;
            v[2] /= norm;
        }
    }

    SdResult res;
    res.initial_m = std::move(initial_m);
    res.final_m = m;
    res.max_norm_drift = max_drift;
    AnnealOutcome& out = res.outcome;
    out.state.assign(static_cast<size_t>(g.n_sites), 1);
    bool tie = false;
    for (int s : active)
        out.state[static_cast<size_t>(s)] =
            spin_sign(m[static_cast<size_t>(s)][2], opts.tie_epsilon, tie);
    out.tie_flagged = tie;
    out.energy = energy(inst, out.state);
    out.seed = seed;
    out.algorithm = opts.alternate_sign ? "sd-altsign" : "sd";
    return res;
}

AnnealOutcome sd_run(const IsingInstance& inst, double t_f, double dt, double h_x,
                     std::uint64_t seed) {
    SdOptions opts;
    opts.dt = dt;
    opts.h_x = h_x;
    return sd_run_full(inst, t_f, seed, opts).outcome;
}

}  // namespace anneal
