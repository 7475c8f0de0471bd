#include "anneal/exact.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <limits>

#include "anneal/errors.hpp"

namespace anneal {

namespace {

constexpr Energy kInf = std::numeric_limits<Energy>::max() / 4;
constexpr BigCount kCountMax = ~BigCount(0);

BigCount sat_add(BigCount a, BigCount b, bool& sat) {
    BigCount s = a + b;
    if (s < a) {
        sat = true;
        return kCountMax;
    }
    return s;
}

BigCount sat_mul(BigCount a, BigCount b, bool& sat) {
    if (a != 0 && b > kCountMax / a) {
        sat = true;
        return kCountMax;
    }
    return a * b;
}

}  // namespace

std::string count_to_string(BigCount c) {
    if (c == 0) return "0";
    std::string s;
    while (c != 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(c % 10)));
        c /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

ExactSolution brute_force_solve(const IsingInstance& inst, bool enumerate_all) {
    const ChimeraGraph& g = inst.graph;
    std::vector<int> act = g.active_sites();
    const int n = static_cast<int>(act.size());
    if (n > 24)
        throw SizeError("brute_force_solve: " + std::to_string(n) +
                        " active spins exceeds the 24-spin guard rail; use dp_solve");

    ExactSolution sol;
    sol.method = "brute_force";

    // Gray-code walk: after g steps the active-site bit pattern is g ^ (g>>1).
    SpinState x(static_cast<size_t>(g.n_sites), 1);
    for (int site : act) x[static_cast<size_t>(site)] = -1;  // pattern 0
    Energy e = energy(inst, x);
    sol.e0 = e;
    sol.degeneracy = 1;
    std::uint64_t best_gray = 0;
    if (enumerate_all) sol.states.push_back(x);

    const std::uint64_t total = std::uint64_t(1) << n;
    for (std::uint64_t gcount = 1; gcount < total; ++gcount) {
        int bit = std::countr_zero(gcount);
        int site = act[static_cast<size_t>(bit)];
        e += delta_energy(inst, x, site);
        x[static_cast<size_t>(site)] = static_cast<std::int8_t>(-x[static_cast<size_t>(site)]);
        if (e < sol.e0) {
            sol.e0 = e;
            sol.degeneracy = 1;
            best_gray = gcount;
            if (enumerate_all) {
                sol.states.clear();
                sol.states.push_back(x);
            }
        } else if (e == sol.e0) {
            sol.degeneracy += 1;
            if (enumerate_all) sol.states.push_back(x);
        }
    }
    if (!enumerate_all) {
        SpinState y(static_cast<size_t>(g.n_sites), 1);
        std::uint64_t pattern = best_gray ^ (best_gray >> 1);
        for (int b = 0; b < n; ++b)
            y[static_cast<size_t>(act[static_cast<size_t>(b)])] =
                ((pattern >> b) & 1) ? 1 : -1;
        sol.states.push_back(y);
        sol.truncated = sol.degeneracy > 1;
    }
    return sol;
}

namespace {

// Static description of one cell row as seen by the DP.
struct RowPlan {
    std::vector<int> boundary;            // active left sites, canonical order
    std::vector<int> bit_of_site;         // site -> boundary bit, -1 if absent

    // Vertical transfer from the previous row's boundary.
    struct VertPair {
        int old_bit;
        int new_bit;  // -1: previous-row site has no active partner here
        Energy jv;
    };
    std::vector<VertPair> vert;

    // Intra-row data, indexed [cell][k] for right sites 4+k.
    struct CellRight {
        bool active = false;
        Energy h = 0;
        std::array<Energy, 4> j_from_left{};  // coupling from left spin i
        Energy j_right = 0;                   // to the same k in the next column
        bool has_right_edge = false;
    };
    std::vector<std::array<CellRight, 4>> cells;
    std::vector<Energy> h_left;  // aligned with boundary
};

Energy coupling_between(const IsingInstance& inst, int a, int b) {
    auto nbrs = inst.graph.neighbors(a);
    auto eids = inst.graph.incident_edges(a);
    for (size_t t = 0; t < nbrs.size(); ++t)
        if (nbrs[t] == b) return inst.j[static_cast<size_t>(eids[t])];
    return 0;
}

bool edge_exists(const ChimeraGraph& g, int a, int b) {
    for (int nb : g.neighbors(a))
        if (nb == b) return true;
    return false;
}

std::vector<RowPlan> plan_rows(const IsingInstance& inst) {
    const ChimeraGraph& g = inst.graph;
    const int L = g.L;
    std::vector<RowPlan> plans(static_cast<size_t>(L));
    for (int r = 0; r < L; ++r) {
        RowPlan& p = plans[static_cast<size_t>(r)];
        p.bit_of_site.assign(static_cast<size_t>(g.n_sites), -1);
        for (int c = 0; c < L; ++c)
            for (int k = 0; k < 4; ++k) {
                int s = g.site_index(r, c, k);
                if (g.is_active(s)) {
                    p.bit_of_site[static_cast<size_t>(s)] = static_cast<int>(p.boundary.size());
                    p.boundary.push_back(s);
                }
            }
        p.h_left.resize(p.boundary.size());
        for (size_t b = 0; b < p.boundary.size(); ++b)
            p.h_left[b] = inst.h[static_cast<size_t>(p.boundary[b])];

        p.cells.resize(static_cast<size_t>(L));
        for (int c = 0; c < L; ++c)
            for (int k = 0; k < 4; ++k) {
                RowPlan::CellRight& cr = p.cells[static_cast<size_t>(c)][static_cast<size_t>(k)];
                int s = g.site_index(r, c, 4 + k);
                cr.active = g.is_active(s);
                if (!cr.active) continue;
                cr.h = inst.h[static_cast<size_t>(s)];
                for (int i = 0; i < 4; ++i) {
                    int ls = g.site_index(r, c, i);
                    cr.j_from_left[static_cast<size_t>(i)] =
                        g.is_active(ls) ? coupling_between(inst, ls, s) : 0;
                }
                if (c + 1 < L) {
                    int s2 = g.site_index(r, c + 1, 4 + k);
                    if (g.is_active(s2) && edge_exists(g, s, s2)) {
                        cr.has_right_edge = true;
                        cr.j_right = coupling_between(inst, s, s2);
                    }
                }
            }

        if (r > 0) {
            const RowPlan& prev = plans[static_cast<size_t>(r - 1)];
            for (size_t ob = 0; ob < prev.boundary.size(); ++ob) {
                int s_old = prev.boundary[ob];
                int s_new = s_old + 8 * L;  // same column and k, one row down
                RowPlan::VertPair vp;
                vp.old_bit = static_cast<int>(ob);
                vp.new_bit = p.bit_of_site[static_cast<size_t>(s_new)];
                vp.jv = (vp.new_bit >= 0) ? coupling_between(inst, s_old, s_new) : 0;
                p.vert.push_back(vp);
            }
        }
    }
    return plans;
}

struct ChainResult {
    Energy value = 0;
    BigCount count = 1;
};

// Minimise the right-side spins of one row given the left-spin fields phi,
// chain by chain.  phi[c][k] is h plus the intra-cell field from left spins.
ChainResult row_chain_opt(const RowPlan& p, const std::vector<std::array<Energy, 4>>& phi,
                          bool& sat) {
    ChainResult res;
    const int L = static_cast<int>(p.cells.size());
    for (int k = 0; k < 4; ++k) {
        bool open = false;
        Energy v[2];        // index 0: spin -1, 1: spin +1
        BigCount cnt[2];
        Energy j_prev = 0;  // coupling from the previous active adjacent cell
        int prev_c = -2;
        auto close = [&]() {
            if (!open) return;
            Energy m = std::min(v[0], v[1]);
            BigCount c = 0;
            if (v[0] == m) c = sat_add(c, cnt[0], sat);
            if (v[1] == m) c = sat_add(c, cnt[1], sat);
            res.value += m;
            res.count = sat_mul(res.count, c, sat);
            open = false;
        };
        for (int c = 0; c < L; ++c) {
            const RowPlan::CellRight& cr = p.cells[static_cast<size_t>(c)][static_cast<size_t>(k)];
            if (!cr.active) {
                close();
                continue;
            }
            Energy f = phi[static_cast<size_t>(c)][static_cast<size_t>(k)];
            if (open && prev_c == c - 1) {
                // extend chain through coupling j_prev
                Energy nv[2];
                BigCount nc[2];
                for (int snew = 0; snew < 2; ++snew) {
                    Energy spin_new = snew ? 1 : -1;
                    Energy local = -f * spin_new;
                    Energy c0 = v[0] - j_prev * Energy(-1) * spin_new;
                    Energy c1 = v[1] - j_prev * Energy(1) * spin_new;
                    Energy m = std::min(c0, c1) + local;
                    BigCount cc = 0;
                    if (c0 + local == m) cc = sat_add(cc, cnt[0], sat);
                    if (c1 + local == m) cc = sat_add(cc, cnt[1], sat);
                    nv[snew] = m;
                    nc[snew] = cc;
                }
                v[0] = nv[0];
                v[1] = nv[1];
                cnt[0] = nc[0];
                cnt[1] = nc[1];
            } else {
                close();
                v[0] = f;   // -f * (-1)
                v[1] = -f;  // -f * (+1)
                cnt[0] = cnt[1] = 1;
                open = true;
            }
            prev_c = c;
            j_prev = cr.has_right_edge ? cr.j_right : 0;
            if (!cr.has_right_edge) {
                // no link to the next column; close now so the next active
                // cell starts a fresh segment
                close();
            }
        }
        close();
    }
    return res;
}

// Enumerate the right-spin configurations achieving the chain optimum.
// Fills/restores state entries of this row's right sites; invokes sink for
// each configuration.  Returns false if the sink asked to stop.
template <typename Sink>
bool row_chain_enumerate(const ChimeraGraph& g, int row, const RowPlan& p,
                         const std::vector<std::array<Energy, 4>>& phi, SpinState& state,
                         Sink&& sink) {
    const int L = static_cast<int>(p.cells.size());
    // Gather segments: lists of (cell, phi, coupling-to-next).
    struct Seg {
        std::vector<int> cells;
        std::vector<Energy> f;
        std::vector<Energy> link;  // link[i] couples cells[i] to cells[i+1]
        int k;
    };
    std::vector<Seg> segs;
    for (int k = 0; k < 4; ++k) {
        Seg cur;
        cur.k = k;
        int prev_c = -2;
        bool linked = false;
        Energy j_prev = 0;
        for (int c = 0; c < L; ++c) {
            const RowPlan::CellRight& cr = p.cells[static_cast<size_t>(c)][static_cast<size_t>(k)];
            if (!cr.active) {
                if (!cur.cells.empty()) segs.push_back(std::move(cur)), cur = Seg{}, cur.k = k;
                prev_c = -2;
                continue;
            }
            bool extends = !cur.cells.empty() && prev_c == c - 1 && linked;
            if (!extends && !cur.cells.empty()) {
                segs.push_back(std::move(cur));
                cur = Seg{};
                cur.k = k;
            }
            if (!cur.cells.empty()) cur.link.push_back(j_prev);
            cur.cells.push_back(c);
            cur.f.push_back(phi[static_cast<size_t>(c)][static_cast<size_t>(k)]);
            prev_c = c;
            linked = cr.has_right_edge;
            j_prev = cr.j_right;
        }
        if (!cur.cells.empty()) segs.push_back(std::move(cur));
    }

    // Forward DP values per segment for traceback.
    struct SegDp {
        std::vector<std::array<Energy, 2>> v;
        Energy best;
    };
    std::vector<SegDp> dps(segs.size());
    for (size_t si = 0; si < segs.size(); ++si) {
        const Seg& s = segs[si];
        SegDp& d = dps[si];
        d.v.resize(s.cells.size());
        d.v[0] = {s.f[0], -s.f[0]};
        for (size_t t = 1; t < s.cells.size(); ++t) {
            Energy jl = s.link[t - 1];
            for (int snew = 0; snew < 2; ++snew) {
                Energy spin_new = snew ? 1 : -1;
                Energy c0 = d.v[t - 1][0] - jl * Energy(-1) * spin_new;
                Energy c1 = d.v[t - 1][1] - jl * Energy(1) * spin_new;
                d.v[t][static_cast<size_t>(snew)] = std::min(c0, c1) - s.f[t] * spin_new;
            }
        }
        d.best = std::min(d.v.back()[0], d.v.back()[1]);
    }

    // DFS across segments, within each segment across tied tracebacks.
    std::function<bool(size_t)> per_segment = [&](size_t si) -> bool {
        if (si == segs.size()) return sink();
        const Seg& s = segs[si];
        const SegDp& d = dps[si];
        std::function<bool(size_t, int)> walk = [&](size_t t, int spin_idx) -> bool {
            // assign cell t with spin spin_idx, then extend downward
            int c = s.cells[t];
            int site = g.site_index(row, c, 4 + s.k);
            state[static_cast<size_t>(site)] = spin_idx ? 1 : -1;
            if (t == 0) return per_segment(si + 1);
            Energy spin_new = spin_idx ? 1 : -1;
            Energy local = -s.f[t] * spin_new;
            Energy jl = s.link[t - 1];
            Energy target = d.v[t][static_cast<size_t>(spin_idx)] - local;
            for (int sp = 0; sp < 2; ++sp) {
                Energy spin_prev = sp ? 1 : -1;
                if (d.v[t - 1][static_cast<size_t>(sp)] - jl * spin_prev * spin_new == target)
                    if (!walk(t - 1, sp)) return false;
            }
            return true;
        };
        size_t last = s.cells.size() - 1;
        for (int sp = 0; sp < 2; ++sp)
            if (d.v[last][static_cast<size_t>(sp)] == d.best)
                if (!walk(last, sp)) return false;
        return true;
    };
    return per_segment(0);
}

struct DpTables {
    std::vector<Energy> val;
    std::vector<BigCount> cnt;
};

}  // namespace

ExactSolution dp_solve(const IsingInstance& inst, std::uint64_t enumerate_cap) {
    DpOptions opts;
    opts.enumerate_cap = enumerate_cap;
    return dp_solve(inst, opts);
}

ExactSolution dp_solve(const IsingInstance& inst, const DpOptions& opts) {
    const ChimeraGraph& g = inst.graph;
    const int L = g.L;
    std::vector<RowPlan> plans = plan_rows(inst);

    // Memory check: two (value,count) tables plus the per-row value history.
    std::size_t need = 0, maxb = 0;
    for (const RowPlan& p : plans) {
        std::size_t sz = std::size_t(1) << p.boundary.size();
        need += sz * sizeof(Energy);
        maxb = std::max(maxb, sz);
    }
    need += 2 * maxb * (sizeof(Energy) + sizeof(BigCount));
    if (need > opts.memory_budget)
        throw SizeError("dp_solve: estimated " + std::to_string(need >> 20) +
                        " MiB of DP tables exceeds the budget of " +
                        std::to_string(opts.memory_budget >> 20) + " MiB");

    bool sat = false;
    DpTables cur, next;
    std::vector<std::vector<Energy>> history(static_cast<size_t>(L));

    for (int r = 0; r < L; ++r) {
        const RowPlan& p = plans[static_cast<size_t>(r)];
        const std::size_t nb = p.boundary.size();
        const std::size_t size = std::size_t(1) << nb;

        if (r == 0) {
            cur.val.assign(size, 0);
            cur.cnt.assign(size, 1);
        } else {
            // Phase A: in-place butterflies eliminating the previous boundary.
            const std::size_t old_size = cur.val.size();
            for (const RowPlan::VertPair& vp : p.vert) {
                const std::size_t bit = std::size_t(1) << vp.old_bit;
                if (vp.new_bit >= 0) {
                    const Energy jv = vp.jv;
                    for (std::size_t n = 0; n < old_size; ++n) {
                        if (n & bit) continue;
                        std::size_t n1 = n | bit;
                        Energy v0 = cur.val[n], v1 = cur.val[n1];
                        Energy a0 = v0 - jv, a1 = v1 + jv;  // new spin -1
                        Energy b0 = v0 + jv, b1 = v1 - jv;  // new spin +1
                        Energy m0 = std::min(a0, a1), m1 = std::min(b0, b1);
                        BigCount c0 = 0, c1 = 0;
                        if (a0 == m0) c0 = sat_add(c0, cur.cnt[n], sat);
                        if (a1 == m0) c0 = sat_add(c0, cur.cnt[n1], sat);
                        if (b0 == m1) c1 = sat_add(c1, cur.cnt[n], sat);
                        if (b1 == m1) c1 = sat_add(c1, cur.cnt[n1], sat);
                        cur.val[n] = m0;
                        cur.val[n1] = m1;
                        cur.cnt[n] = c0;
                        cur.cnt[n1] = c1;
                    }
                } else {
                    for (std::size_t n = 0; n < old_size; ++n) {
                        if (n & bit) continue;
                        std::size_t n1 = n | bit;
                        Energy m = std::min(cur.val[n], cur.val[n1]);
                        BigCount c = 0;
                        if (cur.val[n] == m) c = sat_add(c, cur.cnt[n], sat);
                        if (cur.val[n1] == m) c = sat_add(c, cur.cnt[n1], sat);
                        cur.val[n] = m;
                        cur.cnt[n] = c;
                    }
                }
            }
            // Phase B: gather into the new boundary layout.
            next.val.assign(size, 0);
            next.cnt.assign(size, 0);
            for (std::size_t n = 0; n < size; ++n) {
                std::size_t old_index = 0;
                for (const RowPlan::VertPair& vp : p.vert)
                    if (vp.new_bit >= 0 && ((n >> vp.new_bit) & 1))
                        old_index |= std::size_t(1) << vp.old_bit;
                next.val[n] = cur.val[old_index];
                next.cnt[n] = cur.cnt[old_index];
            }
            std::swap(cur, next);
        }

        // Phase C: add this row's internal optimum, iterating assignments in
        // Gray-code order with incremental field updates.
        std::vector<std::array<Energy, 4>> phi(static_cast<size_t>(L));
        std::vector<Energy> lspin(nb, -1);
        Energy left_field_e = 0;
        for (size_t b = 0; b < nb; ++b) left_field_e += p.h_left[b];  // -h*(-1)
        for (int c = 0; c < L; ++c)
            for (int k = 0; k < 4; ++k) {
                const RowPlan::CellRight& cr = p.cells[static_cast<size_t>(c)][static_cast<size_t>(k)];
                Energy f = cr.h;
                for (int i = 0; i < 4; ++i) {
                    int ls = g.site_index(r, c, i);
                    int bit = p.bit_of_site[static_cast<size_t>(ls)];
                    if (bit >= 0) f -= cr.j_from_left[static_cast<size_t>(i)];  // spin -1
                }
                phi[static_cast<size_t>(c)][static_cast<size_t>(k)] = f;
            }

        for (std::size_t gcount = 0;; ++gcount) {
            std::size_t n = gcount ^ (gcount >> 1);
            ChainResult rc = row_chain_opt(p, phi, sat);
            cur.val[n] += rc.value + left_field_e;
            cur.cnt[n] = sat_mul(cur.cnt[n], rc.count, sat);
            if (gcount + 1 >= (std::size_t(1) << nb)) break;
            int bit = std::countr_zero(gcount + 1);
            int site = p.boundary[static_cast<size_t>(bit)];
            Energy old_spin = lspin[static_cast<size_t>(bit)];
            lspin[static_cast<size_t>(bit)] = -old_spin;
            left_field_e += 2 * p.h_left[static_cast<size_t>(bit)] * old_spin;
            int c = g.col_of(site), i = g.within_cell(site);
            for (int k = 0; k < 4; ++k)
                phi[static_cast<size_t>(c)][static_cast<size_t>(k)] -=
                    2 * p.cells[static_cast<size_t>(c)][static_cast<size_t>(k)]
                            .j_from_left[static_cast<size_t>(i)] *
                    old_spin;
        }
        history[static_cast<size_t>(r)] = cur.val;
    }

    ExactSolution sol;
    sol.method = "dp";
    sol.degeneracy_saturated = sat;
    const std::vector<Energy>& final_val = history[static_cast<size_t>(L - 1)];
    sol.e0 = *std::min_element(final_val.begin(), final_val.end());
    sol.degeneracy = 0;
    for (std::size_t n = 0; n < final_val.size(); ++n)
        if (final_val[n] == sol.e0) sol.degeneracy = sat_add(sol.degeneracy, cur.cnt[n], sol.degeneracy_saturated);

    // Traceback: enumerate ground states (ascending order, capped).
    const std::uint64_t cap = std::max<std::uint64_t>(1, opts.enumerate_cap);
    SpinState state(static_cast<size_t>(g.n_sites), 1);
    bool stopped = false;

    // Recompute phi and the row value for a fixed boundary assignment.
    auto fill_phi = [&](const RowPlan& p, int r, std::size_t n,
                        std::vector<std::array<Energy, 4>>& phi, Energy& left_e) {
        const std::size_t nb = p.boundary.size();
        left_e = 0;
        for (size_t b = 0; b < nb; ++b) {
            Energy s = ((n >> b) & 1) ? 1 : -1;
            left_e -= p.h_left[b] * s;
        }
        phi.assign(static_cast<size_t>(L), {});
        for (int c = 0; c < L; ++c)
            for (int k = 0; k < 4; ++k) {
                const RowPlan::CellRight& cr = p.cells[static_cast<size_t>(c)][static_cast<size_t>(k)];
                Energy f = cr.h;
                for (int i = 0; i < 4; ++i) {
                    int ls = g.site_index(r, c, i);
                    int bit = p.bit_of_site[static_cast<size_t>(ls)];
                    if (bit >= 0) {
                        Energy s = ((n >> bit) & 1) ? 1 : -1;
                        f += cr.j_from_left[static_cast<size_t>(i)] * s;
                    }
                }
                phi[static_cast<size_t>(c)][static_cast<size_t>(k)] = f;
            }
    };

    std::function<bool(int, std::size_t)> descend = [&](int r, std::size_t n) -> bool {
        const RowPlan& p = plans[static_cast<size_t>(r)];
        for (size_t b = 0; b < p.boundary.size(); ++b)
            state[static_cast<size_t>(p.boundary[b])] = ((n >> b) & 1) ? 1 : -1;

        std::vector<std::array<Energy, 4>> phi;
        Energy left_e;
        fill_phi(p, r, n, phi, left_e);
        bool dummy = false;
        ChainResult rc = row_chain_opt(p, phi, dummy);

        std::vector<std::size_t> prev_candidates;
        if (r > 0) {
            Energy target = history[static_cast<size_t>(r)][n] - (rc.value + left_e);
            const std::vector<Energy>& hv = history[static_cast<size_t>(r - 1)];
            for (std::size_t m = 0; m < hv.size(); ++m) {
                Energy ev = 0;
                for (const RowPlan::VertPair& vp : p.vert) {
                    if (vp.new_bit < 0) continue;
                    Energy so = ((m >> vp.old_bit) & 1) ? 1 : -1;
                    Energy sn = ((n >> vp.new_bit) & 1) ? 1 : -1;
                    ev -= vp.jv * so * sn;
                }
                if (hv[m] + ev == target) prev_candidates.push_back(m);
            }
        }

        auto sink = [&]() -> bool {
            if (r == 0) {
                sol.states.push_back(state);
                if (sol.states.size() >= cap) {
                    stopped = true;
                    return false;
                }
                return true;
            }
            for (std::size_t m : prev_candidates)
                if (!descend(r - 1, m)) return false;
            return true;
        };
        return row_chain_enumerate(g, r, p, phi, state, sink);
    };

    for (std::size_t n = 0; n < final_val.size() && !stopped; ++n)
        if (final_val[n] == sol.e0)
            if (!descend(L - 1, n)) break;

    sol.truncated = stopped && (sol.degeneracy > sol.states.size());
    return sol;
}

}  // namespace anneal
