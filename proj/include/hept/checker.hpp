#pragma once

#include <string>
#include <vector>

#include "hept/harp.hpp"
#include "hept/heptagrid.hpp"
#include "hept/reduction.hpp"

namespace hept {

enum class ViolationKind { ColorMismatch, NonBlankBoundary, UnknownTile, EmptyConfiguration };

const char* violation_kind_name(ViolationKind k);

struct Violation {
    ViolationKind kind = ViolationKind::ColorMismatch;
    TileAddress cell;
    int edge = -1;
    std::string detail;
};

// One line per violation: "VIOLATION <kind> <address> <edge> <detail>".
std::string violation_line(const Violation& v);

enum class CheckStatus { Ok, Violations, PatchTooSmall };

struct CheckResult {
    CheckStatus status = CheckStatus::Ok;
    std::vector<Violation> violations;
    std::string error;  // PatchTooSmall detail

    bool ok() const { return status == CheckStatus::Ok; }
};

// Color a placement shows on a cell edge.
const EdgeColor& placed_color(const TilePrototype& proto, int rot, int cell_edge);

// A configuration is valid when every shared edge between two placed cells
// carries the same color on both sides and every edge facing an unplaced
// cell is blank.  The patch must cover the support plus a one-cell margin;
// a placed cell with an unresolved patch edge is reported as PatchTooSmall,
// not as a violation.  Violations are collected exhaustively.
CheckResult check(const Configuration& cfg, const TileSet& ts, const AdjacencyMap& patch);

// True iff check() reports Ok and the configuration places at least one tile.
bool is_finite_solution(const Configuration& cfg, const TileSet& ts, const AdjacencyMap& patch);

}  // namespace hept
