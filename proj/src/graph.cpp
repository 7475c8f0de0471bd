#include "anneal/graph.hpp"

#include <fstream>
#include <numeric>

#include "anneal/errors.hpp"

namespace anneal {

int ChimeraGraph::n_active() const {
    int n = 0;
    for (std::uint8_t a : active) n += a ? 1 : 0;
    return n;
}

std::vector<int> ChimeraGraph::active_sites() const {
    std::vector<int> out;
    out.reserve(static_cast<size_t>(n_sites));
    for (int i = 0; i < n_sites; ++i)
        if (is_active(i)) out.push_back(i);
    return out;
}

void ChimeraGraph::build_adjacency() {
    nbr_offset_.assign(static_cast<size_t>(n_sites) + 1, 0);
    for (const Edge& e : edges) {
        ++nbr_offset_[static_cast<size_t>(e.i) + 1];
        ++nbr_offset_[static_cast<size_t>(e.j) + 1];
    }
    for (size_t i = 1; i < nbr_offset_.size(); ++i) nbr_offset_[i] += nbr_offset_[i - 1];
    nbr_site_.resize(edges.size() * 2);
    nbr_edge_.resize(edges.size() * 2);
    std::vector<std::size_t> cursor(nbr_offset_.begin(), nbr_offset_.end() - 1);
    for (int eid = 0; eid < static_cast<int>(edges.size()); ++eid) {
        const Edge& e = edges[static_cast<size_t>(eid)];
        nbr_site_[cursor[static_cast<size_t>(e.i)]] = e.j;
        nbr_edge_[cursor[static_cast<size_t>(e.i)]++] = eid;
        nbr_site_[cursor[static_cast<size_t>(e.j)]] = e.i;
        nbr_edge_[cursor[static_cast<size_t>(e.j)]++] = eid;
    }
}

ChimeraGraph build_chimera(int L, const std::optional<std::vector<std::uint8_t>>& active_mask) {
    if (L < 1) throw ConfigError("build_chimera: L must be >= 1");
    ChimeraGraph g;
    g.L = L;
    g.n_sites = 8 * L * L;
    if (active_mask) {
        if (static_cast<int>(active_mask->size()) != g.n_sites)
            throw ConfigError("build_chimera: mask has " + std::to_string(active_mask->size()) +
                              " entries, expected " + std::to_string(g.n_sites));
        g.active = *active_mask;
        for (auto& a : g.active) a = a ? 1 : 0;
    } else {
        g.active.assign(static_cast<size_t>(g.n_sites), 1);
    }

    auto both_active = [&](int a, int b) { return g.is_active(a) && g.is_active(b); };
    for (int r = 0; r < L; ++r) {
        for (int c = 0; c < L; ++c) {
            // Intra-cell K4,4: left k to right m.
            for (int k = 0; k < 4; ++k) {
                for (int m = 4; m < 8; ++m) {
                    int a = g.site_index(r, c, k), b = g.site_index(r, c, m);
                    if (both_active(a, b)) g.edges.push_back({a, b});
                }
            }
            // Vertical couplers between left sites of adjacent rows.
            if (r + 1 < L) {
                for (int k = 0; k < 4; ++k) {
                    int a = g.site_index(r, c, k), b = g.site_index(r + 1, c, k);
                    if (both_active(a, b)) g.edges.push_back({a, b});
                }
            }
            // Horizontal couplers between right sites of adjacent columns.
            if (c + 1 < L) {
                for (int k = 4; k < 8; ++k) {
                    int a = g.site_index(r, c, k), b = g.site_index(r, c + 1, k);
                    if (both_active(a, b)) g.edges.push_back({a, b});
                }
            }
        }
    }
    g.build_adjacency();
    return g;
}

std::vector<RowSlice> row_slices(const ChimeraGraph& g) {
    std::vector<RowSlice> rows(static_cast<size_t>(g.L));
    for (int r = 0; r < g.L; ++r) {
        RowSlice& slice = rows[static_cast<size_t>(r)];
        for (int c = 0; c < g.L; ++c) {
            for (int k = 0; k < 4; ++k) slice.left.push_back(g.site_index(r, c, k));
            for (int k = 4; k < 8; ++k) slice.right.push_back(g.site_index(r, c, k));
        }
    }
    return rows;
}

std::vector<std::uint8_t> read_mask(const std::string& path, int expected_sites) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open mask file: " + path);
    std::vector<std::uint8_t> mask;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line != "0" && line != "1")
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected 0 or 1, got '" + line + "'");
        mask.push_back(line == "1" ? 1 : 0);
    }
    if (static_cast<int>(mask.size()) != expected_sites)
        throw ParseError(path + ": " + std::to_string(mask.size()) + " entries, expected " +
                         std::to_string(expected_sites));
    return mask;
}

}  // namespace anneal
