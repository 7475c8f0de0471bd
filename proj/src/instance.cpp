#include "anneal/instance.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "anneal/errors.hpp"

namespace anneal {

IsingInstance random_instance(const ChimeraGraph& g, std::uint64_t seed, bool with_fields) {
    IsingInstance inst;
    inst.graph = g;
    inst.j.resize(g.edges.size());
    inst.h.assign(static_cast<size_t>(g.n_sites), 0);
    Rng rng = Rng::stream(seed, {0x1257a7cEu});
    for (auto& v : inst.j) v = rng.pm1();
    if (with_fields) {
        for (int i = 0; i < g.n_sites; ++i)
            if (g.is_active(i)) inst.h[static_cast<size_t>(i)] = rng.pm1();
    }
    return inst;
}

Energy energy(const IsingInstance& inst, const SpinState& x) {
    Energy e = 0;
    const auto& edges = inst.graph.edges;
    for (size_t k = 0; k < edges.size(); ++k)
        e -= static_cast<Energy>(inst.j[k]) * x[static_cast<size_t>(edges[k].i)] *
             x[static_cast<size_t>(edges[k].j)];
    for (int i = 0; i < inst.graph.n_sites; ++i)
        if (inst.graph.is_active(i))
            e -= static_cast<Energy>(inst.h[static_cast<size_t>(i)]) * x[static_cast<size_t>(i)];
    return e;
}

Energy delta_energy(const IsingInstance& inst, const SpinState& x, int site) {
    Energy field = inst.h[static_cast<size_t>(site)];
    auto nbrs = inst.graph.neighbors(site);
    auto eids = inst.graph.incident_edges(site);
    for (size_t k = 0; k < nbrs.size(); ++k)
        field += static_cast<Energy>(inst.j[static_cast<size_t>(eids[k])]) *
                 x[static_cast<size_t>(nbrs[k])];
    return 2 * static_cast<Energy>(x[static_cast<size_t>(site)]) * field;
}

IsingInstance gauge_transform(const IsingInstance& inst, const std::vector<std::int8_t>& a) {
    IsingInstance out = inst;
    const auto& edges = inst.graph.edges;
    for (size_t k = 0; k < edges.size(); ++k)
        out.j[k] = inst.j[k] * a[static_cast<size_t>(edges[k].i)] * a[static_cast<size_t>(edges[k].j)];
    for (int i = 0; i < inst.graph.n_sites; ++i)
        out.h[static_cast<size_t>(i)] = inst.h[static_cast<size_t>(i)] * a[static_cast<size_t>(i)];
    return out;
}

SpinState apply_gauge(const std::vector<std::int8_t>& a, const SpinState& x) {
    SpinState out = x;
    for (size_t i = 0; i < x.size(); ++i) out[i] = static_cast<std::int8_t>(a[i] * x[i]);
    return out;
}

SpinState random_state(const ChimeraGraph& g, Rng& rng) {
    SpinState x(static_cast<size_t>(g.n_sites), 1);
    for (int i = 0; i < g.n_sites; ++i)
        if (g.is_active(i)) x[static_cast<size_t>(i)] = static_cast<std::int8_t>(rng.pm1());
    return x;
}

std::vector<std::int8_t> random_gauge(const ChimeraGraph& g, Rng& rng) {
    std::vector<std::int8_t> a(static_cast<size_t>(g.n_sites), 1);
    for (int i = 0; i < g.n_sites; ++i)
        if (g.is_active(i)) a[static_cast<size_t>(i)] = static_cast<std::int8_t>(rng.pm1());
    return a;
}

void write_instance(const IsingInstance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open for writing: " + path);
    const ChimeraGraph& g = inst.graph;
    out << "# chimera L=" << g.L << "\n";
    if (g.n_active() != g.n_sites) {
        out << "# active ";
        for (int i = 0; i < g.n_sites; ++i) out << (g.is_active(i) ? '1' : '0');
        out << "\n";
    }
    for (int i = 0; i < g.n_sites; ++i)
        if (g.is_active(i) && inst.h[static_cast<size_t>(i)] != 0)
            out << i << " " << i << " " << inst.h[static_cast<size_t>(i)] << "\n";
    for (size_t k = 0; k < g.edges.size(); ++k)
        if (inst.j[k] != 0)
            out << g.edges[k].i << " " << g.edges[k].j << " " << inst.j[k] << "\n";
}

IsingInstance read_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open instance file: " + path);

    auto fail = [&](int lineno, const std::string& msg) {
        throw ParseError(path + ":" + std::to_string(lineno) + ": " + msg);
    };

    std::string line;
    int lineno = 0;
    if (!std::getline(in, line)) throw ParseError(path + ": empty file");
    ++lineno;
    int L = 0;
    if (std::sscanf(line.c_str(), "# chimera L=%d", &L) != 1 || L < 1)
        fail(lineno, "expected header '# chimera L=<L>'");

    std::optional<std::vector<std::uint8_t>> mask;
    std::streampos after_header = in.tellg();
    if (std::getline(in, line)) {
        if (line.rfind("# active ", 0) == 0) {
            ++lineno;
            std::string bits = line.substr(9);
            if (static_cast<int>(bits.size()) != 8 * L * L)
                fail(lineno, "active mask length mismatch");
            std::vector<std::uint8_t> m;
            for (char c : bits) {
                if (c != '0' && c != '1') fail(lineno, "active mask must be 0/1");
                m.push_back(c == '1' ? 1 : 0);
            }
            mask = std::move(m);
        } else {
            in.seekg(after_header);
        }
    }

    ChimeraGraph g = build_chimera(L, mask);
    IsingInstance inst;
    inst.graph = g;
    inst.j.assign(g.edges.size(), 0);
    inst.h.assign(static_cast<size_t>(g.n_sites), 0);

    std::map<std::pair<int, int>, int> edge_id;
    for (int eid = 0; eid < static_cast<int>(g.edges.size()); ++eid)
        edge_id[{g.edges[static_cast<size_t>(eid)].i, g.edges[static_cast<size_t>(eid)].j}] = eid;

    std::vector<bool> seen_edge(g.edges.size(), false);
    std::vector<bool> seen_field(static_cast<size_t>(g.n_sites), false);

    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        long long i = 0, jj = 0, value = 0;
        std::string extra;
        if (!(ss >> i >> jj >> value) || (ss >> extra))
            fail(lineno, "expected 'i j value'");
        if (i < 0 || jj < 0 || i >= g.n_sites || jj >= g.n_sites)
            fail(lineno, "site index out of range");
        if (i > jj) fail(lineno, "expected i <= j");
        if (!g.is_active(static_cast<int>(i)) || !g.is_active(static_cast<int>(jj)))
            fail(lineno, "references inactive site");
        if (i == jj) {
            if (seen_field[static_cast<size_t>(i)]) fail(lineno, "duplicate field entry");
            seen_field[static_cast<size_t>(i)] = true;
            inst.h[static_cast<size_t>(i)] = static_cast<int>(value);
        } else {
            auto it = edge_id.find({static_cast<int>(i), static_cast<int>(jj)});
            if (it == edge_id.end()) fail(lineno, "pair is not a chimera edge");
            if (seen_edge[static_cast<size_t>(it->second)]) fail(lineno, "duplicate edge entry");
            seen_edge[static_cast<size_t>(it->second)] = true;
            inst.j[static_cast<size_t>(it->second)] = static_cast<int>(value);
        }
    }
    return inst;
}

std::string state_to_string(const ChimeraGraph& g, const SpinState& x) {
    std::string s;
    s.reserve(static_cast<size_t>(g.n_active()));
    for (int i = 0; i < g.n_sites; ++i)
        if (g.is_active(i)) s.push_back(x[static_cast<size_t>(i)] > 0 ? '+' : '-');
    return s;
}

SpinState state_from_string(const ChimeraGraph& g, const std::string& text) {
    if (static_cast<int>(text.size()) != g.n_active())
        throw ParseError("state string length " + std::to_string(text.size()) +
                         ", expected " + std::to_string(g.n_active()));
    SpinState x(static_cast<size_t>(g.n_sites), 1);
    size_t pos = 0;
    for (int i = 0; i < g.n_sites; ++i) {
        if (!g.is_active(i)) continue;
        char c = text[pos++];
        if (c != '+' && c != '-') throw ParseError("state string must contain only '+'/'-'");
        x[static_cast<size_t>(i)] = (c == '+') ? 1 : -1;
    }
    return x;
}

std::uint64_t state_hash(const ChimeraGraph& g, const SpinState& x) {
    // FNV-1a over the active-site sign string.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (int i = 0; i < g.n_sites; ++i) {
        if (!g.is_active(i)) continue;
        h ^= static_cast<std::uint64_t>(x[static_cast<size_t>(i)] > 0 ? '+' : '-');
        h *= 0x100000001b3ULL;
    }
    return h;
}

int hamming_distance(const ChimeraGraph& g, const SpinState& a, const SpinState& b) {
    int d = 0;
    for (int i = 0; i < g.n_sites; ++i)
        if (g.is_active(i) && a[static_cast<size_t>(i)] != b[static_cast<size_t>(i)]) ++d;
    return d;
}

}  // namespace anneal
