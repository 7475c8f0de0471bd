#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "anneal/instance.hpp"

namespace anneal {

using BigCount = unsigned __int128;

std::string count_to_string(BigCount c);

struct ExactSolution {
    Energy e0 = 0;
    BigCount degeneracy = 0;
    bool degeneracy_saturated = false;  // counting overflowed 128 bits
    bool truncated = false;             // state list stopped at the cap
    std::vector<SpinState> states;
    std::string method;
};

// Exhaustive minimisation over all 2^N states of the active sites.
// Guard rail: N <= 24.  Degeneracy is always exact; with enumerate_all the
// full ground-state set is listed.
ExactSolution brute_force_solve(const IsingInstance& inst, bool enumerate_all);

struct DpOptions {
    std::uint64_t enumerate_cap = 1'000'000;
    std::size_t memory_budget = std::size_t(6) << 30;  // bytes
};

// Row-by-row divide and conquer: for each assignment of a row's left-side
// (vertically coupling) spins, the optimal energy and configuration count of
// everything above is stored, then rows are swept downward.  Cost per row is
// O(L 2^{4L}) table updates plus an O(L) chain optimisation per assignment.
// Inactive sites contribute no terms and are fixed to +1 in tracebacks.
ExactSolution dp_solve(const IsingInstance& inst, std::uint64_t enumerate_cap = 1'000'000);
ExactSolution dp_solve(const IsingInstance& inst, const DpOptions& opts);

}  // namespace anneal
