#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "hept/address.hpp"
#include "hept/geometry.hpp"

namespace hept {

// Edge slots of a cell relative to the tree structure.  Edge indices run
// counterclockwise from the father-side edge (the tree father for B cells,
// which also touch a second previous-level cell on their CoFather edge).
// CoB is the edge toward the right neighbor's leftmost (B) son.
enum class CellSlot { Father, CoFather, LatLeft, LatRight, Son0, Son1, Son2, CoB };

// Edge index of a slot for a node kind; -1 when the kind lacks the slot.
int slot_edge(NodeKind k, CellSlot s);
// Inverse of slot_edge.
CellSlot edge_slot(NodeKind k, int edge);

struct NeighborRef {
    int tile = -1;  // index into AdjacencyMap, -1 = outside the patch
    int edge = -1;  // reciprocal edge index on the neighbor
    bool outside() const { return tile < 0; }
};

struct PatchTile {
    TileAddress address;
    int ring = 0;  // graph distance from the central cell (tree level + 1)
    Complex center;
    std::array<Complex, 7> vertices{};  // ccw; edge i joins vertices[i], vertices[(i+1)%7]
    std::array<NeighborRef, 7> nbr{};
};

// Adjacency and geometry of the central cell plus the seven sector trees
// truncated at a given level.  Immutable once built.
class AdjacencyMap {
public:
    int size() const { return static_cast<int>(tiles_.size()); }
    const PatchTile& tile(int i) const { return tiles_[i]; }
    const std::vector<PatchTile>& tiles() const { return tiles_; }
    int levels() const { return levels_; }

    std::optional<int> index_of(const TileAddress& a) const;
    bool contains(const TileAddress& a) const { return index_of(a).has_value(); }
    DiscPoint geometric_center(const TileAddress& a) const;

private:
    friend AdjacencyMap build_patch(int levels);
    std::vector<PatchTile> tiles_;
    std::map<TileAddress, int> index_;
    int levels_ = 0;
};

// Generates the patch geometrically (reflections of the central heptagon,
// deduplicated by center) and labels it with tree addresses.
AdjacencyMap build_patch(int levels);

}  // namespace hept
