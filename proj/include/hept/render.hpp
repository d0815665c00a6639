#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "hept/harp.hpp"
#include "hept/heptagrid.hpp"
#include "hept/reduction.hpp"

namespace hept {

struct RenderStyle {
    std::map<Role, std::string> role_fill;
    std::string neutral_fill = "#f7f6f1";
    std::string stroke_color = "#44413a";
    double stroke_width = 0.0035;  // disc units
    double disc_px = 560.0;        // radius in pixels
    int depth_limit = -1;          // rings rendered; -1 = whole layout
    bool guides = false;           // sector border guide polylines

    static RenderStyle defaults();
};

struct LayoutTile {
    TileAddress address;
    int ring = 0;
    std::array<DiscPoint, 7> vertices{};
};

// Heptagon vertices per tile, in address order.
std::vector<LayoutTile> layout(const AdjacencyMap& patch);

// Deterministic SVG: one polygon per tile, filled by the role of the placed
// prototype (neutral when unplaced or when no configuration is given).
// Throws when a placed role has no color in the style.
std::string to_svg(const std::vector<LayoutTile>& tiles, const Configuration* cfg,
                   const TileSet* ts, const RenderStyle& style);

}  // namespace hept
