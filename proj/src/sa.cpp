#include "anneal/sa.hpp"

#include <cmath>
#include <cstdlib>

#include "anneal/errors.hpp"

namespace anneal {

void SASchedule::validate() const {
    if (!(beta0 >= 0.0) || !(beta1 >= beta0))
        throw ConfigError("SASchedule: need 0 <= beta0 <= beta1");
    if (sweeps < 1) throw ConfigError("SASchedule: need sweeps >= 1");
}

AnnealOutcome sa_run(const IsingInstance& inst, const SASchedule& sched, std::uint64_t seed,
                     const SaOptions& opts) {
    sched.validate();
    const ChimeraGraph& g = inst.graph;
    Rng rng = Rng::stream(seed, {0x5a5a0001ULL});

    SpinState x = random_state(g, rng);
    std::vector<int> order = g.active_sites();

    // Acceptance table for positive even energy steps: for unit couplings
    // |dE| <= 2 * (degree + |h|) <= 14, so exp(-beta dE) is looked up rather
    // than evaluated per proposal.  Rebuilt once per sweep as beta moves.
    Energy max_half = 1;
    for (int i : order) {
        Energy f = std::llabs(static_cast<long long>(inst.h[static_cast<size_t>(i)]));
        auto eids = inst.graph.incident_edges(i);
        for (int eid : eids) f += std::llabs(static_cast<long long>(inst.j[static_cast<size_t>(eid)]));
        max_half = std::max(max_half, f);
    }
    std::vector<double> accept(static_cast<size_t>(max_half) + 1, 1.0);

    for (std::int64_t sweep = 0; sweep < sched.sweeps; ++sweep) {
        const double beta = sched.beta_at(sweep);
        for (Energy d = 1; d <= max_half; ++d)
            accept[static_cast<size_t>(d)] = std::exp(-beta * 2.0 * static_cast<double>(d));
        if (opts.randomized_order) {
            for (size_t i = order.size(); i > 1; --i) {
                size_t k = static_cast<size_t>(rng.below(i));
                std::swap(order[i - 1], order[k]);
            }
        }
        for (int site : order) {
            Energy field = inst.h[static_cast<size_t>(site)];
            auto nbrs = g.neighbors(site);
            auto eids = g.incident_edges(site);
            for (size_t t = 0; t < nbrs.size(); ++t)
                field += static_cast<Energy>(inst.j[static_cast<size_t>(eids[t])]) *
                         x[static_cast<size_t>(nbrs[t])];
            Energy half_de = static_cast<Energy>(x[static_cast<size_t>(site)]) * field;
            if (half_de <= 0 || rng.canonical() < accept[static_cast<size_t>(half_de)])
                x[static_cast<size_t>(site)] = static_cast<std::int8_t>(-x[static_cast<size_t>(site)]);
        }
    }

    AnnealOutcome out;
    out.state = std::move(x);
    out.energy = energy(inst, out.state);
    out.seed = seed;
    out.algorithm = "sa";
    return out;
}

namespace {

// F >= t for a bit-sliced 3-bit counter (s2 s1 s0), one lane per replica.
inline std::uint64_t lanes_ge(std::uint64_t s0, std::uint64_t s1, std::uint64_t s2, int t) {
    if (t <= 0) return ~std::uint64_t(0);
    if (t > 7) return 0;
    std::uint64_t t0 = (t & 1) ? ~std::uint64_t(0) : 0;
    std::uint64_t t1 = (t & 2) ? ~std::uint64_t(0) : 0;
    std::uint64_t t2 = (t & 4) ? ~std::uint64_t(0) : 0;
    std::uint64_t gt2 = s2 & ~t2, eq2 = ~(s2 ^ t2);
    std::uint64_t gt1 = s1 & ~t1, eq1 = ~(s1 ^ t1);
    std::uint64_t gt0 = s0 & ~t0, eq0 = ~(s0 ^ t0);
    return gt2 | (eq2 & (gt1 | (eq1 & (gt0 | eq0))));
}

}  // namespace

std::vector<AnnealOutcome> sa_multispin_run(const IsingInstance& inst, const SASchedule& sched,
                                            std::uint64_t seed, int replicas) {
    sched.validate();
    if (replicas < 1 || replicas > 64)
        throw ConfigError("sa_multispin_run: replicas must be in [1, 64]");
    const ChimeraGraph& g = inst.graph;
    for (size_t k = 0; k < inst.j.size(); ++k)
        if (inst.j[k] != 1 && inst.j[k] != -1)
            throw ConfigError("sa_multispin_run: couplings must be +/-1");
    for (int i = 0; i < g.n_sites; ++i)
        if (g.is_active(i) && std::abs(inst.h[static_cast<size_t>(i)]) > 1)
            throw ConfigError("sa_multispin_run: fields must be in {-1,0,+1}");

    Rng rng = Rng::stream(seed, {0x5a5a0002ULL});
    const std::vector<int> order = g.active_sites();

    // Per-site update plan: neighbour word indices plus sign masks.
    struct SitePlan {
        int site;
        int m;  // degree + |h|
        std::vector<int> nbr;
        std::vector<std::uint64_t> jmask;  // ~0 where J = -1
        bool has_field = false;
        std::uint64_t hmask = 0;  // ~0 where h = +1
    };
    std::vector<SitePlan> plan;
    plan.reserve(order.size());
    for (int site : order) {
        SitePlan sp;
        sp.site = site;
        auto nbrs = g.neighbors(site);
        auto eids = g.incident_edges(site);
        for (size_t t = 0; t < nbrs.size(); ++t) {
            sp.nbr.push_back(nbrs[t]);
            sp.jmask.push_back(inst.j[static_cast<size_t>(eids[t])] < 0 ? ~std::uint64_t(0) : 0);
        }
        int h = inst.h[static_cast<size_t>(site)];
        sp.has_field = h != 0;
        sp.hmask = h > 0 ? ~std::uint64_t(0) : 0;
        sp.m = static_cast<int>(sp.nbr.size()) + (sp.has_field ? 1 : 0);
        plan.push_back(std::move(sp));
    }

    std::vector<std::uint64_t> w(static_cast<size_t>(g.n_sites), 0);
    for (int site : order) w[static_cast<size_t>(site)] = rng.bits();

    for (std::int64_t sweep = 0; sweep < sched.sweeps; ++sweep) {
        const double beta = sched.beta_at(sweep);
        for (const SitePlan& sp : plan) {
            std::uint64_t wi = w[static_cast<size_t>(sp.site)];
            // Count frustrated terms per lane with a carry-save adder.
            std::uint64_t s0 = 0, s1 = 0, s2 = 0;
            for (size_t t = 0; t < sp.nbr.size(); ++t) {
                std::uint64_t f = wi ^ w[static_cast<size_t>(sp.nbr[t])] ^ sp.jmask[t];
                std::uint64_t c0 = s0 & f;
                s0 ^= f;
                std::uint64_t c1 = s1 & c0;
                s1 ^= c0;
                s2 ^= c1;
            }
            if (sp.has_field) {
                std::uint64_t f = wi ^ sp.hmask;  // frustrated when spin opposes h
                std::uint64_t c0 = s0 & f;
                s0 ^= f;
                std::uint64_t c1 = s1 & c0;
                s1 ^= c0;
                s2 ^= c1;
            }
            // dE = 2 m - 4 F: flip lanes with F >= t, t from one shared draw.
            const double u = rng.canonical();
            int t;
            if (beta <= 0.0) {
                t = 0;
            } else {
                double tu = -std::log(u) / beta;
                int k0 = (sp.m + 1) / 2;
                double x = (2.0 * sp.m - tu) / 4.0;
                long long k1 = static_cast<long long>(std::floor(x)) + 1;
                long long tt = std::min<long long>(k0, k1);
                t = static_cast<int>(std::max<long long>(0, std::min<long long>(8, tt)));
            }
            w[static_cast<size_t>(sp.site)] = wi ^ lanes_ge(s0, s1, s2, t);
        }
    }

    std::vector<AnnealOutcome> out(static_cast<size_t>(replicas));
    for (int rep = 0; rep < replicas; ++rep) {
        SpinState x(static_cast<size_t>(g.n_sites), 1);
        for (int site : order)
            x[static_cast<size_t>(site)] =
                static_cast<std::int8_t>(((w[static_cast<size_t>(site)] >> rep) & 1) ? 1 : -1);
        AnnealOutcome& o = out[static_cast<size_t>(rep)];
        o.state = std::move(x);
        o.energy = energy(inst, o.state);
        o.seed = seed;
        o.algorithm = "sa-multispin";
    }
    return out;
}

}  // namespace anneal
