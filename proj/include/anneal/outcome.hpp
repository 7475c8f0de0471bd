#pragma once

#include <cstdint>
#include <string>

#include "anneal/instance.hpp"

namespace anneal {

struct AnnealOutcome {
    SpinState state;
    Energy energy = 0;
    std::uint64_t seed = 0;
    std::string algorithm;

    // spin dynamics: some |M_z| fell below the tie threshold, resolved to +1
    bool tie_flagged = false;
    // sqa: the imaginary-time coupling hit its cap (schedule drove A to ~0)
    bool jperp_clamped = false;
    // sqa: all Trotter slices were identical when the run finished
    bool slices_agree = false;
};

}  // namespace anneal
