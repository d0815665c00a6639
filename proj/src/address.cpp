#include "hept/address.hpp"

#include <charconv>
#include <limits>
#include <stdexcept>

namespace hept {

int son_count(NodeKind k) { return k == NodeKind::W ? 3 : 2; }

NodeKind son_kind(NodeKind k, int slot) {
    if (slot < 0 || slot >= son_count(k))
        throw std::invalid_argument("son_kind: slot out of range");
    return slot == 0 ? NodeKind::B : NodeKind::W;
}

namespace {

uint64_t checked_add(uint64_t a, uint64_t b) {
    if (a > std::numeric_limits<uint64_t>::max() - b)
        throw std::overflow_error("level size exceeds 64 bits");
    return a + b;
}

// width(W, d) and width(B, d), memoized.
struct WidthTable {
    std::vector<uint64_t> w{1}, b{1};
    void extend(int depth) {
        while (static_cast<int>(w.size()) <= depth) {
            const uint64_t nw = checked_add(b.back(), checked_add(w.back(), w.back()));
            const uint64_t nb = checked_add(b.back(), w.back());
            w.push_back(nw);
            b.push_back(nb);
        }
    }
};

WidthTable& widths() {
    static WidthTable t;
    return t;
}

}  // namespace

uint64_t subtree_width(NodeKind k, int depth) {
    if (depth < 0)
        throw std::invalid_argument("subtree_width: negative depth");
    auto& t = widths();
    t.extend(depth);
    return k == NodeKind::W ? t.w[depth] : t.b[depth];
}

uint64_t level_size(int level) {
    if (level < 0)
        throw std::invalid_argument("level_size: negative level");
    return subtree_width(NodeKind::W, level);
}

TileAddress::TileAddress(int sector, std::vector<uint8_t> path)
    : center_(false), sector_(sector), path_(std::move(path)) {
    if (sector_ < 0 || sector_ > 6)
        throw std::invalid_argument("tile address: sector out of range");
    NodeKind k = NodeKind::W;
    for (uint8_t step : path_) {
        if (step >= static_cast<uint8_t>(son_count(k)))
            throw std::invalid_argument("tile address: invalid son index in path");
        k = son_kind(k, step);
    }
}

NodeKind TileAddress::kind() const {
    if (center_)
        throw std::invalid_argument("kind: central cell has no node kind");
    NodeKind k = NodeKind::W;
    for (uint8_t step : path_)
        k = son_kind(k, step);
    return k;
}

uint64_t TileAddress::rank() const {
    if (center_)
        throw std::invalid_argument("rank: central cell has no rank");
    const int n = level();
    uint64_t r = 0;
    NodeKind k = NodeKind::W;
    for (int i = 0; i < n; ++i) {
        const int step = path_[i];
        for (int j = 0; j < step; ++j)
            r = checked_add(r, subtree_width(son_kind(k, j), n - i - 1));
        k = son_kind(k, step);
    }
    return r;
}

TileAddress TileAddress::child(int slot) const {
    if (center_) {
        if (slot < 0 || slot > 6)
            throw std::invalid_argument("child: central cell has sons 0..6");
        return sector_root(slot);
    }
    std::vector<uint8_t> p = path_;
    p.push_back(static_cast<uint8_t>(slot));
    return TileAddress(sector_, std::move(p));
}

std::string TileAddress::to_string() const {
    if (center_)
        return "C";
    std::string out = "s" + std::to_string(sector_) + ":";
    for (size_t i = 0; i < path_.size(); ++i) {
        if (i)
            out += '.';
        out += std::to_string(static_cast<int>(path_[i]));
    }
    return out;
}

std::optional<TileAddress> TileAddress::parse(std::string_view text) {
    if (text == "C")
        return center();
    if (text.size() < 2 || text[0] != 's')
        return std::nullopt;
    const size_t colon = text.find(':');
    if (colon == std::string_view::npos)
        return std::nullopt;
    int sector = -1;
    {
        const auto* first = text.data() + 1;
        const auto* last = text.data() + colon;
        if (std::from_chars(first, last, sector).ptr != last)
            return std::nullopt;
    }
    if (sector < 0 || sector > 6)
        return std::nullopt;
    std::vector<uint8_t> path;
    size_t pos = colon + 1;
    while (pos < text.size()) {
        size_t dot = text.find('.', pos);
        if (dot == std::string_view::npos)
            dot = text.size();
        int step = -1;
        const auto* first = text.data() + pos;
        const auto* last = text.data() + dot;
        if (first == last || std::from_chars(first, last, step).ptr != last)
            return std::nullopt;
        if (step < 0 || step > 2)
            return std::nullopt;
        path.push_back(static_cast<uint8_t>(step));
        pos = dot + 1;
    }
    try {
        return TileAddress(sector, std::move(path));
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

bool TileAddress::operator<(const TileAddress& o) const {
    if (center_ != o.center_)
        return center_;
    if (center_)
        return false;
    if (sector_ != o.sector_)
        return sector_ < o.sector_;
    if (path_.size() != o.path_.size())
        return path_.size() < o.path_.size();
    return path_ < o.path_;  // lexicographic order equals rank order at equal level
}

TileAddress address_at(int sector, int level, uint64_t rank) {
    if (level < 0 || rank >= level_size(level))
        throw std::invalid_argument("address_at: rank out of range");
    std::vector<uint8_t> path;
    path.reserve(level);
    NodeKind k = NodeKind::W;
    uint64_t rem = rank;
    for (int i = 0; i < level; ++i) {
        int chosen = -1;
        for (int j = 0; j < son_count(k); ++j) {
            const uint64_t w = subtree_width(son_kind(k, j), level - i - 1);
            if (rem < w) {
                chosen = j;
                break;
            }
            rem -= w;
        }
        path.push_back(static_cast<uint8_t>(chosen));
        k = son_kind(k, chosen);
    }
    return TileAddress(sector, std::move(path));
}

std::vector<TileAddress> sons(const TileAddress& a) {
    std::vector<TileAddress> out;
    if (a.is_center()) {
        for (int s = 0; s < 7; ++s)
            out.push_back(TileAddress::sector_root(s));
        return out;
    }
    for (int j = 0; j < son_count(a.kind()); ++j)
        out.push_back(a.child(j));
    return out;
}

std::optional<TileAddress> father(const TileAddress& a) {
    if (a.is_center())
        return std::nullopt;
    if (a.path().empty())
        return TileAddress::center();
    std::vector<uint8_t> p = a.path();
    p.pop_back();
    return TileAddress(a.sector(), std::move(p));
}

std::optional<TileAddress> lateral(const TileAddress& a, LateralDir dir) {
    if (a.is_center())
        throw std::invalid_argument("lateral: central cell has no level");
    const uint64_t r = a.rank();
    if (dir == LateralDir::Left) {
        if (r == 0)
            return std::nullopt;
        return address_at(a.sector(), a.level(), r - 1);
    }
    if (r + 1 >= level_size(a.level()))
        return std::nullopt;
    return address_at(a.sector(), a.level(), r + 1);
}

TileAddress chord_successor(const TileAddress& a) {
    if (a.is_center())
        throw std::invalid_argument("chord_successor: not a tree node");
    return a.child(a.kind() == NodeKind::W ? 1 : 0);
}

}  // namespace hept
