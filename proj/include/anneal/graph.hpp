#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace anneal {

// Chimera connectivity graph: an L x L grid of unit cells, eight sites per
// cell forming a complete bipartite K4,4.  The four "left" sites of a cell
// couple vertically to the neighbouring cells above/below, the four "right"
// sites couple horizontally.  Sites are numbered row-major over cells, left
// sites 0-3 then right sites 4-7 within a cell.
//
// An optional activity mask selects a working-qubit subgraph; edges incident
// to an inactive site are dropped entirely.  Immutable after construction.
class ChimeraGraph {
public:
    struct Edge {
        int i, j;  // i < j, both active
    };

    int L = 0;
    int n_sites = 0;
    std::vector<std::uint8_t> active;       // per site
    std::vector<Edge> edges;                // deterministic canonical order

    int site_index(int row, int col, int k) const { return 8 * (row * L + col) + k; }
    int cell_of(int site) const { return site / 8; }
    int row_of(int site) const { return (site / 8) / L; }
    int col_of(int site) const { return (site / 8) % L; }
    int within_cell(int site) const { return site % 8; }
    bool is_left(int site) const { return within_cell(site) < 4; }

    bool is_active(int site) const { return active[static_cast<size_t>(site)] != 0; }
    int n_active() const;
    std::vector<int> active_sites() const;

    int degree(int site) const {
        return static_cast<int>(nbr_offset_[static_cast<size_t>(site) + 1] -
                                nbr_offset_[static_cast<size_t>(site)]);
    }
    std::span<const int> neighbors(int site) const {
        return {nbr_site_.data() + nbr_offset_[static_cast<size_t>(site)],
                nbr_site_.data() + nbr_offset_[static_cast<size_t>(site) + 1]};
    }
    // Edge ids aligned with neighbors(site).
    std::span<const int> incident_edges(int site) const {
        return {nbr_edge_.data() + nbr_offset_[static_cast<size_t>(site)],
                nbr_edge_.data() + nbr_offset_[static_cast<size_t>(site) + 1]};
    }

    void build_adjacency();

private:
    std::vector<std::size_t> nbr_offset_;
    std::vector<int> nbr_site_;
    std::vector<int> nbr_edge_;
};

// Sites of one cell row, split into the vertically coupling (left) sites and
// the horizontally coupling (right) sites, each in canonical site order.
// Includes inactive sites; consumers filter by the graph's mask.
struct RowSlice {
    std::vector<int> left;
    std::vector<int> right;
};

ChimeraGraph build_chimera(int L,
                           const std::optional<std::vector<std::uint8_t>>& active_mask = std::nullopt);

std::vector<RowSlice> row_slices(const ChimeraGraph& g);

// Mask file: one 0/1 per line, 8*L^2 lines.
std::vector<std::uint8_t> read_mask(const std::string& path, int expected_sites);

}  // namespace anneal
