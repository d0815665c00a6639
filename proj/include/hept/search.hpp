#pragma once

#include <cstdint>
#include <optional>

#include "hept/checker.hpp"
#include "hept/harp.hpp"
#include "hept/heptagrid.hpp"
#include "hept/reduction.hpp"

namespace hept {

struct SearchBudget {
    size_t max_cells = 64;       // placements per configuration
    int radius = 3;              // patch levels searched over
    uint64_t max_nodes = 1'000'000;  // backtracking nodes per anchor
    double time_limit_s = 300.0;     // wall-clock safety net
    int threads = 1;
};

enum class SearchStatus { Found, NoneInSpace, BudgetExhausted };

struct SearchStats {
    uint64_t nodes = 0;
    size_t max_depth = 0;  // deepest placement count reached
};

struct SearchResult {
    SearchStatus status = SearchStatus::NoneInSpace;
    std::optional<Configuration> config;  // set when Found
    SearchStats stats;
};

// Exhaustive backtracking search for a valid finite configuration.  The
// first placement is anchored at the central cell (every prototype in every
// rotation is tried there); growth is depth-first over the cells forced by
// non-blank edges, so the configurations explored are exactly the minimal
// edge-connected solutions.  Disconnected solutions are unions of minimal
// ones, so existence is preserved.
SearchResult find_finite_tiling(const TileSet& ts, const SearchBudget& budget);

struct CountResult {
    bool exhausted = false;
    uint64_t count = 0;
    SearchStats stats;
};

// Counts the minimal solutions anchored at the central cell with the anchor
// rotation fixed to 0 (one representative per rotation orbit).
CountResult count_solutions(const TileSet& ts, const SearchBudget& budget);

}  // namespace hept
