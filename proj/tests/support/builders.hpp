#pragma once

#include <algorithm>
#include <bit>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "anneal/exact.hpp"
#include "anneal/instance.hpp"

namespace testsupport {

// L=1 cell masked down to a handful of sites; site 4 (right) neighbours all
// left sites 0..3, which covers paths and stars up to 5 spins.
inline anneal::IsingInstance masked_l1(const std::vector<int>& sites) {
    std::vector<std::uint8_t> mask(8, 0);
    for (int s : sites) mask[static_cast<size_t>(s)] = 1;
    anneal::IsingInstance inst;
    inst.graph = anneal::build_chimera(1, mask);
    inst.j.assign(inst.graph.edges.size(), 0);
    inst.h.assign(8, 0);
    return inst;
}

inline void set_coupling(anneal::IsingInstance& inst, int a, int b, int value) {
    for (size_t k = 0; k < inst.graph.edges.size(); ++k) {
        const auto& e = inst.graph.edges[k];
        if ((e.i == a && e.j == b) || (e.i == b && e.j == a)) {
            inst.j[k] = value;
            return;
        }
    }
    throw std::runtime_error("set_coupling: no such edge");
}

inline anneal::IsingInstance single_spin(int h) {
    anneal::IsingInstance inst = masked_l1({0});
    inst.h[0] = h;
    return inst;
}

inline anneal::IsingInstance two_spin(int j, int h0 = 0, int h1 = 0) {
    anneal::IsingInstance inst = masked_l1({0, 4});
    set_coupling(inst, 0, 4, j);
    inst.h[0] = h0;
    inst.h[4] = h1;
    return inst;
}

// Path 0 - 4 - 1 (three spins).
inline anneal::IsingInstance three_spin(int j04, int j14, int h0 = 0, int h4 = 0, int h1 = 0) {
    anneal::IsingInstance inst = masked_l1({0, 1, 4});
    set_coupling(inst, 0, 4, j04);
    set_coupling(inst, 1, 4, j14);
    inst.h[0] = h0;
    inst.h[4] = h4;
    inst.h[1] = h1;
    return inst;
}

inline anneal::IsingInstance ferromagnet(int L) {
    anneal::IsingInstance inst;
    inst.graph = anneal::build_chimera(L);
    inst.j.assign(inst.graph.edges.size(), 1);
    inst.h.assign(static_cast<size_t>(inst.graph.n_sites), 0);
    return inst;
}

// Random mask with a fixed number of active sites.
inline std::vector<std::uint8_t> random_mask(int n_sites, int n_active, std::uint64_t seed) {
    std::vector<int> idx(static_cast<size_t>(n_sites));
    for (int i = 0; i < n_sites; ++i) idx[static_cast<size_t>(i)] = i;
    std::mt19937_64 rng(seed);
    for (size_t i = idx.size(); i > 1; --i)
        std::swap(idx[i - 1], idx[rng() % i]);
    std::vector<std::uint8_t> mask(static_cast<size_t>(n_sites), 0);
    for (int k = 0; k < n_active; ++k) mask[static_cast<size_t>(idx[static_cast<size_t>(k)])] = 1;
    return mask;
}

// Sorted vector of all 2^N energies (N <= 20).
inline std::vector<anneal::Energy> full_spectrum(const anneal::IsingInstance& inst) {
    auto act = inst.graph.active_sites();
    anneal::SpinState x(static_cast<size_t>(inst.graph.n_sites), 1);
    for (int s : act) x[static_cast<size_t>(s)] = -1;
    anneal::Energy e = anneal::energy(inst, x);
    std::vector<anneal::Energy> out;
    out.reserve(std::size_t(1) << act.size());
    out.push_back(e);
    const std::uint64_t total = std::uint64_t(1) << act.size();
    for (std::uint64_t gray = 1; gray < total; ++gray) {
        int bit = std::countr_zero(gray);
        int site = act[static_cast<size_t>(bit)];
        e += anneal::delta_energy(inst, x, site);
        x[static_cast<size_t>(site)] = static_cast<std::int8_t>(-x[static_cast<size_t>(site)]);
        out.push_back(e);
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("anneal_test_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

}  // namespace testsupport
