#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hept {

// Node kinds of the spanning tree of one sector.  W nodes have three sons
// ordered (B, W, W); B nodes have two sons ordered (B, W).  Sector roots
// are W.
enum class NodeKind : uint8_t { W, B };

int son_count(NodeKind k);
NodeKind son_kind(NodeKind k, int slot);

// Tiles on tree level n of one sector: 1, 3, 8, 21, 55, 144, ...
// s(n+1) = 3 s(n) - s(n-1).  Throws std::overflow_error once the value no
// longer fits in 64 bits (n > 45).
uint64_t level_size(int level);

// Descendants of a node of the given kind after `depth` generations.
uint64_t subtree_width(NodeKind k, int depth);

// Combinatorial coordinate of a cell: the central cell, or a node of one of
// the seven sector trees identified by the sector index and the path of son
// indices from the sector root.
class TileAddress {
public:
    TileAddress() : center_(true), sector_(0) {}

    static TileAddress center() { return TileAddress{}; }
    static TileAddress sector_root(int sector) { return TileAddress(sector, {}); }
    TileAddress(int sector, std::vector<uint8_t> path);

    bool is_center() const { return center_; }
    int sector() const { return sector_; }
    const std::vector<uint8_t>& path() const { return path_; }

    // Tree level (path length).  The central cell has no level.
    int level() const { return static_cast<int>(path_.size()); }
    NodeKind kind() const;
    // Index within the level, 0-based, increasing left to right.
    uint64_t rank() const;

    TileAddress child(int slot) const;

    // Text form: `C`, or `s<k>:<i1>.<i2>...` (sector root: `s<k>:`).
    std::string to_string() const;
    static std::optional<TileAddress> parse(std::string_view text);

    bool operator==(const TileAddress& o) const {
        return center_ == o.center_ && (center_ || (sector_ == o.sector_ && path_ == o.path_));
    }
    bool operator!=(const TileAddress& o) const { return !(*this == o); }
    // Center first, then (sector, level, left-to-right within the level).
    bool operator<(const TileAddress& o) const;

private:
    bool center_;
    int sector_;
    std::vector<uint8_t> path_;
};

// Node at the given (level, rank) of a sector tree.
TileAddress address_at(int sector, int level, uint64_t rank);

// Ordered sons; the central cell yields the seven sector roots.
std::vector<TileAddress> sons(const TileAddress& a);

// Inverse of sons; nullopt for the central cell.
std::optional<TileAddress> father(const TileAddress& a);

enum class LateralDir { Left, Right };

// Same-level neighbor within the same sector tree, or nullopt when the
// border of the tree is exceeded.
std::optional<TileAddress> lateral(const TileAddress& a, LateralDir dir);

// Designated descent step of a chord: middle son of a W node, left son of a
// B node.
TileAddress chord_successor(const TileAddress& a);

}  // namespace hept
