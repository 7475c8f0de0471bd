#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "anneal/graph.hpp"
#include "anneal/rng.hpp"

namespace anneal {

using Energy = std::int64_t;

// One spin per site, values in {-1,+1}.  Entries of inactive sites are kept
// at +1 so that site indexing stays uniform; energies, serialization and
// Hamming distances only ever look at active sites.
using SpinState = std::vector<std::int8_t>;

// Ising spin glass on a chimera graph: integer couplings J on the active edge
// set and integer fields h on active sites.  Paper-style instances use
// J in {-1,+1} and h in {-1,0,+1}; energies are then exact integers.
struct IsingInstance {
    ChimeraGraph graph;
    std::vector<int> j;  // per edge, aligned with graph.edges
    std::vector<int> h;  // per site, zero on inactive sites

    int n_sites() const { return graph.n_sites; }
};

IsingInstance random_instance(const ChimeraGraph& g, std::uint64_t seed, bool with_fields);

Energy energy(const IsingInstance& inst, const SpinState& x);

// energy(flip_i(x)) - energy(x) = 2 x_i (sum_j J_ij x_j + h_i); O(degree).
Energy delta_energy(const IsingInstance& inst, const SpinState& x, int site);

// J'_ij = a_i a_j J_ij, h'_i = a_i h_i.  x -> a*x is an energy-preserving
// bijection between the state spaces of inst and the result.
IsingInstance gauge_transform(const IsingInstance& inst, const std::vector<std::int8_t>& a);

SpinState apply_gauge(const std::vector<std::int8_t>& a, const SpinState& x);

SpinState random_state(const ChimeraGraph& g, Rng& rng);
std::vector<std::int8_t> random_gauge(const ChimeraGraph& g, Rng& rng);

// Text format: header "# chimera L=<L>", an optional "# active <0/1 string>"
// line for masked graphs, then one triple "i j value" per line where i == j
// encodes the field h_i and i < j a coupling on an existing edge.
void write_instance(const IsingInstance& inst, const std::string& path);
IsingInstance read_instance(const std::string& path);

// States serialize as one '+'/'-' character per active site, ascending order.
std::string state_to_string(const ChimeraGraph& g, const SpinState& x);
SpinState state_from_string(const ChimeraGraph& g, const std::string& text);
std::uint64_t state_hash(const ChimeraGraph& g, const SpinState& x);

// Hamming distance over active sites.
int hamming_distance(const ChimeraGraph& g, const SpinState& a, const SpinState& b);

}  // namespace anneal
