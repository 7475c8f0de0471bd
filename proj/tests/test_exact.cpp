#include <algorithm>
#include <set>
#include <string>

#include "anneal/errors.hpp"
#include "anneal/exact.hpp"
#include "doctest.h"
#include "support/builders.hpp"

using namespace anneal;
using namespace testsupport;

namespace {

std::set<std::string> state_set(const ChimeraGraph& g, const std::vector<SpinState>& states) {
    std::set<std::string> out;
    for (const auto& s : states) out.insert(state_to_string(g, s));
    return out;
}

void check_agreement(const IsingInstance& inst) {
    ExactSolution bf = brute_force_solve(inst, true);
    ExactSolution dp = dp_solve(inst);
    CHECK(dp.e0 == bf.e0);
    CHECK(dp.degeneracy == bf.degeneracy);
    CHECK(!dp.truncated);
    CHECK(state_set(inst.graph, dp.states) == state_set(inst.graph, bf.states));
    for (const auto& s : dp.states) CHECK(energy(inst, s) == dp.e0);
}

}  // namespace

TEST_CASE("single spin with h=+1") {
    IsingInstance inst = single_spin(+1);
    ExactSolution sol = brute_force_solve(inst, true);
    CHECK(sol.e0 == -1);
    CHECK(sol.degeneracy == 1);
    REQUIRE(sol.states.size() == 1);
    CHECK(sol.states[0][0] == 1);
}

TEST_CASE("antiferromagnetic pair has two ground states") {
    IsingInstance inst = two_spin(-1);
    ExactSolution sol = brute_force_solve(inst, true);
    CHECK(sol.e0 == -1);
    CHECK(sol.degeneracy == 2);
    for (const auto& s : sol.states) CHECK(s[0] != s[4]);
}

TEST_CASE("ferromagnetic cell: dp finds e0=-16 with degeneracy 2") {
    IsingInstance inst = ferromagnet(1);
    ExactSolution dp = dp_solve(inst);
    CHECK(dp.e0 == -16);
    CHECK(dp.degeneracy == 2);
    check_agreement(inst);
}

TEST_CASE("dp matches brute force on random L=1 instances") {
    ChimeraGraph g = build_chimera(1);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        IsingInstance inst = random_instance(g, seed, seed % 3 == 0);
        check_agreement(inst);
    }
}

TEST_CASE("dp matches brute force on masked L=2 instances up to 24 spins") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        int n_active = 16 + 4 * static_cast<int>(seed % 3);  // 16, 20, 24
        auto mask = random_mask(32, n_active, seed * 7 + 1);
        ChimeraGraph g = build_chimera(2, mask);
        IsingInstance inst = random_instance(g, seed, seed % 2 == 0);
        check_agreement(inst);
    }
}

TEST_CASE("gauge covariance of the ground energy") {
    ChimeraGraph g = build_chimera(2);
    IsingInstance inst = random_instance(g, 77, true);
    Rng rng(78);
    std::vector<std::int8_t> a = random_gauge(g, rng);
    CHECK(dp_solve(inst, 1).e0 == dp_solve(gauge_transform(inst, a), 1).e0);
}

TEST_CASE("brute force refuses more than 24 spins") {
    ChimeraGraph g = build_chimera(2);
    IsingInstance inst = random_instance(g, 1, false);
    CHECK_THROWS_AS(brute_force_solve(inst, false), SizeError);
}

TEST_CASE("dp refuses when the table estimate exceeds the memory budget") {
    ChimeraGraph g = build_chimera(3);
    IsingInstance inst = random_instance(g, 1, false);
    DpOptions opts;
    opts.memory_budget = 1024;  // bytes; 2^12-entry tables cannot fit
    CHECK_THROWS_AS(dp_solve(inst, opts), SizeError);
}

TEST_CASE("enumeration cap truncates and flags") {
    ChimeraGraph g = build_chimera(1);
    IsingInstance inst = random_instance(g, 5, false);  // h=0: degeneracy >= 2
    DpOptions opts;
    opts.enumerate_cap = 1;
    ExactSolution sol = dp_solve(inst, opts);
    CHECK(sol.states.size() == 1);
    CHECK(sol.degeneracy >= 2);
    CHECK(sol.truncated);
    CHECK(energy(inst, sol.states[0]) == sol.e0);
}

TEST_CASE("dp on an L=3 instance agrees with itself under gauge and has valid tracebacks") {
    ChimeraGraph g = build_chimera(3);
    IsingInstance inst = random_instance(g, 9, false);
    ExactSolution sol = dp_solve(inst, 4);
    CHECK(!sol.states.empty());
    for (const auto& s : sol.states) CHECK(energy(inst, s) == sol.e0);
    // Z2: with h == 0 the degeneracy is even and states come in flip pairs.
    CHECK(sol.degeneracy % 2 == 0);
}

TEST_CASE("empty active set degenerates gracefully") {
    std::vector<std::uint8_t> mask(8, 0);
    mask[0] = 1;  // keep one site to stay sane
    ChimeraGraph g = build_chimera(1, mask);
    IsingInstance inst;
    inst.graph = g;
    inst.j.assign(g.edges.size(), 0);
    inst.h.assign(8, 0);
    ExactSolution dp = dp_solve(inst);
    CHECK(dp.e0 == 0);
    CHECK(dp.degeneracy == 2);  // the lone free spin
}
