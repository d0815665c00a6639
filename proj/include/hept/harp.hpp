#pragma once

#include <map>
#include <string>
#include <vector>

#include "hept/address.hpp"
#include "hept/machine.hpp"
#include "hept/reduction.hpp"

namespace hept {

struct Placement {
    std::string tile;
    int rot = 0;  // prototype edge e sits on cell edge (e + rot) % 7

    bool operator==(const Placement& o) const = default;
};

// Finite assignment of prototypes to cells; every unassigned cell is blank.
struct Configuration {
    std::string tileset_ref;
    std::map<TileAddress, Placement> cells;

    bool operator==(const Configuration& o) const = default;
};

std::string serialize_config(const Configuration& cfg);
Configuration parse_config(const std::string& text);

// The unique chord-k cell on level n of sector 0 (n >= k): the rightmost
// cell of level k, then its middle-son chain.
TileAddress chord_of(int k, int n);

struct ItineraryStep {
    TileAddress exec;                  // chord-p(n) cell on level n
    std::vector<TileAddress> walked;   // lateral cells crossed on level n, endpoint last
};

struct Itinerary {
    std::vector<ItineraryStep> steps;  // one per recorded time
};

// Signal route for a finite trace: execution cells and the lateral walks
// between consecutive chords.
Itinerary route_signal(const Trace& trace);

enum class HarpStatus { Built, NotHaltedWithinBudget, LeftEdgeViolation };

struct HarpResult {
    HarpStatus status = HarpStatus::NotHaltedWithinBudget;
    Configuration config;
    Itinerary itinerary;
    int halt_time = -1;
    int violation_step = -1;
};

// Deterministic construction of the finite configuration for a halting
// machine: sector-0 levels 0..t, with the level-t row closed by the silver
// signal.  Placements all use rotation 0.
HarpResult build_harp(const TuringMachine& tm, int max_steps);

}  // namespace hept
