#include "hept/checker.hpp"

#include <algorithm>

namespace hept {

const char* violation_kind_name(ViolationKind k) {
    switch (k) {
        case ViolationKind::ColorMismatch: return "ColorMismatch";
        case ViolationKind::NonBlankBoundary: return "NonBlankBoundary";
        case ViolationKind::UnknownTile: return "UnknownTile";
        case ViolationKind::EmptyConfiguration: return "EmptyConfiguration";
    }
    return "?";
}

std::string violation_line(const Violation& v) {
    return std::string("VIOLATION ") + violation_kind_name(v.kind) + " " +
           (v.kind == ViolationKind::EmptyConfiguration ? "-" : v.cell.to_string()) + " " +
           std::to_string(v.edge) + " " + v.detail;
}

const EdgeColor& placed_color(const TilePrototype& proto, int rot, int cell_edge) {
    return proto.edges[((cell_edge - rot) % 7 + 7) % 7];
}

CheckResult check(const Configuration& cfg, const TileSet& ts, const AdjacencyMap& patch) {
    CheckResult res;
    if (cfg.cells.empty()) {
        res.status = CheckStatus::Violations;
        res.violations.push_back(
            {ViolationKind::EmptyConfiguration, TileAddress::center(), -1,
             "a solution places at least one tile"});
        return res;
    }

    // Resolve placements against the patch and the tile set first.
    struct Placed {
        int patch_index;
        const TilePrototype* proto;
        int rot;
    };
    std::map<TileAddress, Placed> placed;
    for (const auto& [addr, pl] : cfg.cells) {
        const auto idx = patch.index_of(addr);
        if (!idx) {
            res.status = CheckStatus::PatchTooSmall;
            res.error = "cell " + addr.to_string() + " lies outside the patch";
            return res;
        }
        const TilePrototype* proto = ts.find(pl.tile);
        if (proto == nullptr) {
            res.violations.push_back({ViolationKind::UnknownTile, addr, -1,
                                      "no prototype '" + pl.tile + "' in the tile set"});
            continue;
        }
        placed[addr] = Placed{*idx, proto, pl.rot};
    }

    for (const auto& [addr, pc] : placed) {
        const PatchTile& tile = patch.tile(pc.patch_index);
        for (int e = 0; e < 7; ++e) {
            const EdgeColor& mine = placed_color(*pc.proto, pc.rot, e);
            const NeighborRef& nb = tile.nbr[e];
            if (nb.outside()) {
                res.status = CheckStatus::PatchTooSmall;
                res.error = "cell " + addr.to_string() +
                            " touches the patch boundary; enlarge the patch by one ring";
                res.violations.clear();
                return res;
            }
            const TileAddress& other = patch.tile(nb.tile).address;
            const auto oit = placed.find(other);
            if (oit == placed.end()) {
                // Abutting the blank exterior (or an unknown-tile cell, which
                // already carries its own violation).
                if (!mine.is_blank() && !cfg.cells.count(other))
                    res.violations.push_back({ViolationKind::NonBlankBoundary, addr, e,
                                              "edge color " + mine.token() +
                                                  " faces the blank cell " + other.to_string()});
                continue;
            }
            // Report each shared edge once, from the smaller address.
            if (other < addr)
                continue;
            const EdgeColor& theirs = placed_color(*oit->second.proto, oit->second.rot, nb.edge);
            if (!(mine == theirs))
                res.violations.push_back({ViolationKind::ColorMismatch, addr, e,
                                          mine.token() + " vs " + theirs.token() + " on " +
                                              other.to_string()});
        }
    }

    std::sort(res.violations.begin(), res.violations.end(), [](const Violation& a, const Violation& b) {
        if (a.cell != b.cell)
            return a.cell < b.cell;
        if (a.edge != b.edge)
            return a.edge < b.edge;
        return a.detail < b.detail;
    });
    res.status = res.violations.empty() ? CheckStatus::Ok : CheckStatus::Violations;
    return res;
}

bool is_finite_solution(const Configuration& cfg, const TileSet& ts, const AdjacencyMap& patch) {
    return !cfg.cells.empty() && check(cfg, ts, patch).ok();
}

}  // namespace hept
