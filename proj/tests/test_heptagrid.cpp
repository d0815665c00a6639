#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "doctest.h"
#include "hept/heptagrid.hpp"

using namespace hept;

namespace {

const AdjacencyMap& patch4() {
    static const AdjacencyMap m = build_patch(4);
    return m;
}

// Classifies an edge of a labeled tile by the address relation to its
// neighbor; used to pin the frozen slot tables to the geometry.
CellSlot classify(const AdjacencyMap& m, const PatchTile& t, int e) {
    const PatchTile& u = m.tile(t.nbr[e].tile);
    const TileAddress& a = t.address;
    const TileAddress& b = u.address;
    if (b.is_center() || (!a.is_center() && b == *father(a)))
        return CellSlot::Father;
    const int la = a.level();
    const int lb = b.is_center() ? -1 : b.level();
    if (lb == la - 1)
        return CellSlot::CoFather;
    if (lb == la) {
        // Same ring: right =次 rank, or the first cell of the next sector.
        if (a.sector() == b.sector())
            return b.rank() > a.rank() ? CellSlot::LatRight : CellSlot::LatLeft;
        return ((b.sector() - a.sector() + 7) % 7) == 1 ? CellSlot::LatRight : CellSlot::LatLeft;
    }
    REQUIRE(lb == la + 1);
    const auto f = father(b);
    if (f && *f == a) {
        switch (b.path().back()) {
            case 0: return CellSlot::Son0;
            case 1: return CellSlot::Son1;
            default: return CellSlot::Son2;
        }
    }
    return CellSlot::CoB;
}

}  // namespace

TEST_CASE("patch sizes and ring sizes") {
    const AdjacencyMap m0 = build_patch(0);
    CHECK(m0.size() == 8);  // center plus the seven sector roots

    const AdjacencyMap m2 = build_patch(2);
    CHECK(m2.size() == 85);
    std::map<int, int> rings;
    for (const auto& t : m2.tiles())
        rings[t.ring]++;
    CHECK(rings[0] == 1);
    CHECK(rings[1] == 7);
    CHECK(rings[2] == 21);
    CHECK(rings[3] == 56);
}

TEST_CASE("depth-4 patch: adjacency symmetry and interior degree") {
    const AdjacencyMap& m = patch4();
    CHECK(m.size() == 617);
    int interior = 0;
    for (int i = 0; i < m.size(); ++i) {
        const PatchTile& t = m.tile(i);
        int resolved = 0;
        for (int e = 0; e < 7; ++e) {
            const NeighborRef& nb = t.nbr[e];
            if (nb.outside())
                continue;
            ++resolved;
            const PatchTile& u = m.tile(nb.tile);
            CHECK(u.nbr[nb.edge].tile == i);  // reciprocal
            CHECK(m.tile(u.nbr[nb.edge].tile).address == t.address);
        }
        if (t.ring < 5) {
            ++interior;
            CHECK(resolved == 7);
        }
    }
    CHECK(interior == 232);  // rings 0..4

}

TEST_CASE("depth-4 patch: three tiles meet at every interior vertex") {
    const AdjacencyMap& m = patch4();
    for (int i = 0; i < m.size(); ++i) {
        const PatchTile& t = m.tile(i);
        for (int e = 0; e < 7; ++e) {
            const NeighborRef& a = t.nbr[e];
            const NeighborRef& b = t.nbr[(e + 1) % 7];
            if (a.outside() || b.outside())
                continue;
            // Consecutive neighbors share the vertex between the two edges and
            // must themselves be edge-adjacent.
            bool adjacent = false;
            for (int f = 0; f < 7; ++f)
                if (m.tile(a.tile).nbr[f].tile == b.tile)
                    adjacent = true;
            CHECK(adjacent);
        }
    }
}

TEST_CASE("depth-4 patch: level sizes and ring sizes match the recurrence") {
    const AdjacencyMap& m = patch4();
    std::map<int, int> rings;
    std::map<std::pair<int, int>, int> sector_levels;
    for (const auto& t : m.tiles()) {
        rings[t.ring]++;
        if (!t.address.is_center())
            sector_levels[{t.address.sector(), t.address.level()}]++;
    }
    const int expected_ring[] = {1, 7, 21, 56, 147, 385};
    for (int r = 0; r <= 5; ++r)
        CHECK(rings[r] == expected_ring[r]);
    for (int s = 0; s < 7; ++s)
        for (int l = 0; l <= 4; ++l)
            CHECK(sector_levels[{s, l}] == static_cast<int>(level_size(l)));
}

TEST_CASE("depth-4 patch: geometric and combinatorial adjacency agree") {
    const AdjacencyMap& m = patch4();
    const double step = 2.0 * heptagon_inradius();  // center distance of edge-adjacent cells
    for (int i = 0; i < m.size(); ++i) {
        std::set<int> combinatorial;
        for (int e = 0; e < 7; ++e)
            if (!m.tile(i).nbr[e].outside())
                combinatorial.insert(m.tile(i).nbr[e].tile);
        for (int j = 0; j < m.size(); ++j) {
            if (i == j)
                continue;
            const double d = hyperbolic_distance(m.tile(i).center, m.tile(j).center);
            const bool geometric = std::abs(d - step) < 1e-6;
            const bool listed = combinatorial.count(j) > 0;
            if (geometric || listed) {
                CHECK(geometric == listed);
            }
        }
    }
}

TEST_CASE("consecutive same-level cells of one sector share an edge") {
    const AdjacencyMap& m = patch4();
    for (int s = 0; s < 7; ++s) {
        for (int l = 1; l <= 4; ++l) {
            for (uint64_t r = 0; r + 1 < level_size(l); ++r) {
                const auto i = m.index_of(address_at(s, l, r));
                const auto j = m.index_of(address_at(s, l, r + 1));
                REQUIRE(i);
                REQUIRE(j);
                bool adjacent = false;
                for (int e = 0; e < 7; ++e)
                    if (m.tile(*i).nbr[e].tile == *j)
                        adjacent = true;
                CHECK(adjacent);
            }
        }
    }
}

TEST_CASE("edge slots are uniform per node kind and match the frozen tables") {
    const AdjacencyMap& m = patch4();
    for (int i = 0; i < m.size(); ++i) {
        const PatchTile& t = m.tile(i);
        if (t.address.is_center()) {
            for (int e = 0; e < 7; ++e) {
                const PatchTile& u = m.tile(t.nbr[e].tile);
                CHECK(u.address == TileAddress::sector_root(e));
            }
            continue;
        }
        const NodeKind k = t.address.kind();
        for (int e = 0; e < 7; ++e) {
            if (t.nbr[e].outside()) {
                // Only son-side or co-B edges can be unresolved, on the last ring.
                const CellSlot s = edge_slot(k, e);
                CHECK(t.ring == 5);
                CHECK((s == CellSlot::Son0 || s == CellSlot::Son1 || s == CellSlot::Son2 ||
                       s == CellSlot::CoB));
                continue;
            }
            CHECK(classify(m, t, e) == edge_slot(k, e));
        }
    }
}

TEST_CASE("heptagon metrics and root placement") {
    const double R = heptagon_circumradius();
    CHECK(std::cosh(R) == doctest::Approx(1.19887).epsilon(1e-4));
    CHECK(R == doctest::Approx(0.62049).epsilon(1e-3));

    const AdjacencyMap m = build_patch(1);
    const DiscPoint c = m.geometric_center(TileAddress::center());
    CHECK(std::abs(c.x) < 1e-12);
    CHECK(std::abs(c.y) < 1e-12);

    // Vertices of the central cell lie at distance R from its center.
    const auto ci = m.index_of(TileAddress::center());
    REQUIRE(ci);
    for (const auto& v : m.tile(*ci).vertices)
        CHECK(hyperbolic_distance({0, 0}, v) == doctest::Approx(R).epsilon(1e-9));

    // The seven sector roots sit at one radius with angular spacing 2*pi/7.
    double radius0 = -1;
    for (int s = 0; s < 7; ++s) {
        const DiscPoint p = m.geometric_center(TileAddress::sector_root(s));
        const double rad = std::hypot(p.x, p.y);
        const double ang = std::atan2(p.y, p.x);
        if (s == 0) {
            radius0 = rad;
            CHECK(std::abs(ang) < 1e-9);
        } else {
            CHECK(rad == doctest::Approx(radius0).epsilon(1e-9));
            const double expected = 2.0 * std::numbers::pi * s / 7.0;
            const double wrapped = ang < 0 ? ang + 2.0 * std::numbers::pi : ang;
            CHECK(wrapped == doctest::Approx(expected).epsilon(1e-9));
        }
    }
}

TEST_CASE("geometric_center rejects addresses outside the patch") {
    const AdjacencyMap m = build_patch(1);
    CHECK_THROWS_AS(m.geometric_center(address_at(0, 4, 0)), std::invalid_argument);
}
