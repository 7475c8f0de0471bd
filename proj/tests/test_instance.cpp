#include <cmath>

#include "anneal/errors.hpp"
#include "anneal/instance.hpp"
#include "doctest.h"
#include "support/builders.hpp"

using namespace anneal;
using namespace testsupport;

TEST_CASE("random_instance is deterministic in (graph, seed)") {
    ChimeraGraph g = build_chimera(2);
    IsingInstance a = random_instance(g, 42, true);
    IsingInstance b = random_instance(g, 42, true);
    CHECK(a.j == b.j);
    CHECK(a.h == b.h);
    IsingInstance c = random_instance(g, 43, true);
    CHECK(a.j != c.j);
}

TEST_CASE("random couplings are a fair coin within the 3-sigma binomial bound") {
    ChimeraGraph g = build_chimera(4);  // 352 edges
    std::int64_t plus = 0, total = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        IsingInstance inst = random_instance(g, seed, false);
        for (int v : inst.j) {
            plus += v > 0 ? 1 : 0;
            ++total;
        }
    }
    double frac = static_cast<double>(plus) / static_cast<double>(total);  // n = 10560
    CHECK(std::abs(frac - 0.5) < 0.02);
}

TEST_CASE("with_fields=false leaves all h at zero") {
    ChimeraGraph g = build_chimera(2);
    IsingInstance inst = random_instance(g, 7, false);
    for (int v : inst.h) CHECK(v == 0);
    IsingInstance withf = random_instance(g, 7, true);
    int nonzero = 0;
    for (int v : withf.h) nonzero += v != 0;
    CHECK(nonzero == g.n_sites);
}

TEST_CASE("energy on two spins") {
    IsingInstance inst = two_spin(+1);
    SpinState x(8, 1);
    CHECK(energy(inst, x) == -1);
    x[0] = -1;
    CHECK(energy(inst, x) == +1);
}

TEST_CASE("ferromagnetic cell at all +1 has energy -16") {
    IsingInstance inst = ferromagnet(1);
    SpinState x(8, 1);
    CHECK(energy(inst, x) == -16);
}

TEST_CASE("delta_energy equals the difference of two full evaluations") {
    ChimeraGraph g = build_chimera(2);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        IsingInstance inst = random_instance(g, seed, seed % 2 == 0);
        Rng rng(seed + 100);
        SpinState x = random_state(g, rng);
        for (int i = 0; i < g.n_sites; ++i) {
            SpinState y = x;
            y[static_cast<size_t>(i)] = static_cast<std::int8_t>(-y[static_cast<size_t>(i)]);
            CHECK(delta_energy(inst, x, i) == energy(inst, y) - energy(inst, x));
        }
    }
}

TEST_CASE("delta_energy on an isolated spin with h=+1") {
    IsingInstance inst = single_spin(+1);
    SpinState x(8, 1);
    CHECK(delta_energy(inst, x, 0) == 2);
}

TEST_CASE("a free qubit has zero flip cost") {
    // Two couplings of opposite sign into site 4 cancel when both ends agree.
    IsingInstance inst = three_spin(+1, -1);
    SpinState x(8, 1);
    CHECK(delta_energy(inst, x, 4) == 0);
}

TEST_CASE("gauge transform: a == -1 fixes J and negates h") {
    ChimeraGraph g = build_chimera(2);
    IsingInstance inst = random_instance(g, 3, true);
    std::vector<std::int8_t> a(static_cast<size_t>(g.n_sites), -1);
    IsingInstance t = gauge_transform(inst, a);
    CHECK(t.j == inst.j);
    for (int i = 0; i < g.n_sites; ++i)
        CHECK(t.h[static_cast<size_t>(i)] == -inst.h[static_cast<size_t>(i)]);
}

TEST_CASE("gauge transform: a == +1 is the identity") {
    ChimeraGraph g = build_chimera(2);
    IsingInstance inst = random_instance(g, 4, true);
    std::vector<std::int8_t> a(static_cast<size_t>(g.n_sites), 1);
    IsingInstance t = gauge_transform(inst, a);
    CHECK(t.j == inst.j);
    CHECK(t.h == inst.h);
}

TEST_CASE("gauge transform preserves energies through the spin bijection") {
    ChimeraGraph g = build_chimera(2);
    IsingInstance inst = random_instance(g, 5, true);
    Rng rng(999);
    std::vector<std::int8_t> a = random_gauge(g, rng);
    IsingInstance t = gauge_transform(inst, a);
    for (int k = 0; k < 100; ++k) {
        SpinState x = random_state(g, rng);
        CHECK(energy(t, apply_gauge(a, x)) == energy(inst, x));
    }
}

TEST_CASE("gauge invariance of the full spectrum, N=16") {
    auto mask = random_mask(32, 16, 11);
    ChimeraGraph g = build_chimera(2, mask);
    IsingInstance inst = random_instance(g, 12, true);
    Rng rng(13);
    std::vector<std::int8_t> a = random_gauge(g, rng);
    IsingInstance t = gauge_transform(inst, a);
    CHECK(full_spectrum(inst) == full_spectrum(t));
}

TEST_CASE("global spin flip leaves energy unchanged when h == 0") {
    ChimeraGraph g = build_chimera(2);
    IsingInstance inst = random_instance(g, 21, false);
    Rng rng(22);
    for (int k = 0; k < 20; ++k) {
        SpinState x = random_state(g, rng);
        SpinState y = x;
        for (auto& v : y) v = static_cast<std::int8_t>(-v);
        CHECK(energy(inst, x) == energy(inst, y));
    }
}

TEST_CASE("instance file round trip") {
    TempDir tmp;
    ChimeraGraph g = build_chimera(2);
    IsingInstance inst = random_instance(g, 33, true);
    write_instance(inst, tmp.file("a.txt"));
    IsingInstance back = read_instance(tmp.file("a.txt"));
    CHECK(back.graph.L == 2);
    CHECK(back.j == inst.j);
    CHECK(back.h == inst.h);
}

TEST_CASE("masked instance file round trip keeps the active set") {
    TempDir tmp;
    auto mask = random_mask(32, 20, 44);
    ChimeraGraph g = build_chimera(2, mask);
    IsingInstance inst = random_instance(g, 45, true);
    write_instance(inst, tmp.file("m.txt"));
    IsingInstance back = read_instance(tmp.file("m.txt"));
    CHECK(back.graph.active == g.active);
    CHECK(back.j == inst.j);
    CHECK(back.h == inst.h);
}

TEST_CASE("diagonal line sets a field") {
    TempDir tmp;
    write_text(tmp.file("f.txt"), "# chimera L=1\n3 3 1\n");
    IsingInstance inst = read_instance(tmp.file("f.txt"));
    CHECK(inst.h[3] == 1);
}

TEST_CASE("parse errors carry line numbers") {
    TempDir tmp;
    SUBCASE("malformed line") {
        write_text(tmp.file("bad.txt"), "# chimera L=1\n0 4 not_a_number\n");
        CHECK_THROWS_WITH_AS(read_instance(tmp.file("bad.txt")),
                             doctest::Contains(":2:"), ParseError);
    }
    SUBCASE("index out of range") {
        write_text(tmp.file("bad.txt"), "# chimera L=1\n0 99 1\n");
        CHECK_THROWS_AS(read_instance(tmp.file("bad.txt")), ParseError);
    }
    SUBCASE("duplicate edge") {
        write_text(tmp.file("bad.txt"), "# chimera L=1\n0 4 1\n0 4 -1\n");
        CHECK_THROWS_WITH_AS(read_instance(tmp.file("bad.txt")),
                             doctest::Contains(":3:"), ParseError);
    }
    SUBCASE("not an edge") {
        write_text(tmp.file("bad.txt"), "# chimera L=1\n0 1 1\n");
        CHECK_THROWS_AS(read_instance(tmp.file("bad.txt")), ParseError);
    }
    SUBCASE("inactive site rejected") {
        write_text(tmp.file("bad.txt"),
                   "# chimera L=1\n# active 01111111\n0 4 1\n");
        CHECK_THROWS_AS(read_instance(tmp.file("bad.txt")), ParseError);
    }
}

TEST_CASE("state string round trip on a masked graph") {
    auto mask = random_mask(32, 17, 55);
    ChimeraGraph g = build_chimera(2, mask);
    Rng rng(56);
    SpinState x = random_state(g, rng);
    std::string s = state_to_string(g, x);
    CHECK(static_cast<int>(s.size()) == 17);
    SpinState y = state_from_string(g, s);
    CHECK(x == y);
    CHECK(state_hash(g, x) == state_hash(g, y));
}
