#include <algorithm>
#include <set>

#include "anneal/errors.hpp"
#include "anneal/graph.hpp"
#include "doctest.h"

using namespace anneal;

namespace {

// Independent edge enumeration straight from the adjacency rules: intra-cell
// pairs across the K4,4 split, vertical pairs of left sites in adjacent rows,
// horizontal pairs of right sites in adjacent columns.
std::set<std::pair<int, int>> rule_based_edges(const ChimeraGraph& g) {
    std::set<std::pair<int, int>> out;
    for (int a = 0; a < g.n_sites; ++a) {
        for (int b = a + 1; b < g.n_sites; ++b) {
            if (!g.is_active(a) || !g.is_active(b)) continue;
            bool intra = g.cell_of(a) == g.cell_of(b) && g.is_left(a) != g.is_left(b);
            bool vert = g.is_left(a) && g.is_left(b) && g.col_of(a) == g.col_of(b) &&
                        g.within_cell(a) == g.within_cell(b) &&
                        std::abs(g.row_of(a) - g.row_of(b)) == 1;
            bool horiz = !g.is_left(a) && !g.is_left(b) && g.row_of(a) == g.row_of(b) &&
                         g.within_cell(a) == g.within_cell(b) &&
                         std::abs(g.col_of(a) - g.col_of(b)) == 1;
            if (intra || vert || horiz) out.insert({a, b});
        }
    }
    return out;
}

}  // namespace

TEST_CASE("chimera L=1 is a single K4,4") {
    ChimeraGraph g = build_chimera(1);
    CHECK(g.n_sites == 8);
    CHECK(g.edges.size() == 16);
    for (const auto& e : g.edges) {
        CHECK(g.is_left(e.i) != g.is_left(e.j));
        CHECK(g.cell_of(e.i) == g.cell_of(e.j));
    }
}

TEST_CASE("chimera L=4 matches the edge-count formula and explicit enumeration") {
    ChimeraGraph g = build_chimera(4);
    CHECK(g.n_sites == 128);
    CHECK(g.edges.size() == 352);  // 16 L^2 + 8 L (L-1)
    auto expected = rule_based_edges(g);
    std::set<std::pair<int, int>> got;
    for (const auto& e : g.edges) got.insert({e.i, e.j});
    CHECK(got == expected);
}

TEST_CASE("edge count formula holds for a range of L") {
    for (int L = 1; L <= 6; ++L) {
        ChimeraGraph g = build_chimera(L);
        CHECK(static_cast<int>(g.edges.size()) == 16 * L * L + 8 * L * (L - 1));
    }
}

TEST_CASE("masking a full cell removes its sites and edges") {
    std::vector<std::uint8_t> mask(32, 1);
    for (int k = 0; k < 8; ++k) mask[static_cast<size_t>(k)] = 0;  // cell 0 dead
    ChimeraGraph g = build_chimera(2, mask);
    CHECK(g.n_active() == 24);
    for (const auto& e : g.edges) {
        CHECK(e.i >= 8);
        CHECK(e.j >= 8);
        CHECK(g.is_active(e.i));
        CHECK(g.is_active(e.j));
    }
    auto expected = rule_based_edges(g);
    CHECK(g.edges.size() == expected.size());
}

TEST_CASE("mask length mismatch is a configuration error") {
    std::vector<std::uint8_t> mask(31, 1);
    CHECK_THROWS_AS(build_chimera(2, mask), ConfigError);
}

TEST_CASE("degree bound and neighbor symmetry") {
    ChimeraGraph g = build_chimera(3);
    for (int i = 0; i < g.n_sites; ++i) {
        CHECK(g.degree(i) <= 6);
        for (int j : g.neighbors(i)) {
            auto nb = g.neighbors(j);
            CHECK(std::find(nb.begin(), nb.end(), i) != nb.end());
        }
    }
}

TEST_CASE("construction is deterministic") {
    ChimeraGraph a = build_chimera(3);
    ChimeraGraph b = build_chimera(3);
    REQUIRE(a.edges.size() == b.edges.size());
    for (size_t k = 0; k < a.edges.size(); ++k) {
        CHECK(a.edges[k].i == b.edges[k].i);
        CHECK(a.edges[k].j == b.edges[k].j);
    }
}

TEST_CASE("row_slices partitions sites, L=1") {
    ChimeraGraph g = build_chimera(1);
    auto rows = row_slices(g);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].left.size() == 4);
    CHECK(rows[0].right.size() == 4);
}

TEST_CASE("row_slices: vertical edges only connect consecutive rows' left sites, L=2") {
    ChimeraGraph g = build_chimera(2);
    auto rows = row_slices(g);
    REQUIRE(rows.size() == 2);
    std::set<int> left0(rows[0].left.begin(), rows[0].left.end());
    std::set<int> left1(rows[1].left.begin(), rows[1].left.end());
    for (const auto& e : g.edges) {
        bool cross_row = g.row_of(e.i) != g.row_of(e.j);
        if (!cross_row) continue;
        CHECK(left0.count(e.i) == 1);
        CHECK(left1.count(e.j) == 1);
        CHECK(std::abs(g.row_of(e.i) - g.row_of(e.j)) == 1);
    }
}

TEST_CASE("row_slices covers all sites exactly once, L=3") {
    ChimeraGraph g = build_chimera(3);
    auto rows = row_slices(g);
    std::set<int> seen;
    size_t total = 0;
    for (const auto& r : rows) {
        for (int s : r.left) seen.insert(s);
        for (int s : r.right) seen.insert(s);
        total += r.left.size() + r.right.size();
    }
    CHECK(total == 72);
    CHECK(seen.size() == 72);
    CHECK(*seen.begin() == 0);
    CHECK(*seen.rbegin() == 71);
}
