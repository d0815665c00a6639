#include "hept/heptagrid.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace hept {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMergeTol = 1e-9;  // duplicates agree to ~1e-12, distinct points are > 1e-4 apart

void require(bool cond, const char* what) {
    if (!cond)
        throw std::logic_error(std::string("heptagrid construction: ") + what);
}

// Spatial hash identifying points closer than a tolerance.
class PointIndex {
public:
    explicit PointIndex(double cell) : cell_(cell) {}

    int find(Complex p, double tol) const {
        const auto [ix, iy] = key(p);
        for (long dx = -1; dx <= 1; ++dx) {
            for (long dy = -1; dy <= 1; ++dy) {
                auto it = grid_.find({ix + dx, iy + dy});
                if (it == grid_.end())
                    continue;
                for (int id : it->second)
                    if (std::abs(points_[id] - p) <= tol)
                        return id;
            }
        }
        return -1;
    }

    int find_or_insert(Complex p, double tol) {
        const int found = find(p, tol);
        if (found >= 0)
            return found;
        const int id = static_cast<int>(points_.size());
        points_.push_back(p);
        grid_[key(p)].push_back(id);
        return id;
    }

private:
    std::pair<long, long> key(Complex p) const {
        return {static_cast<long>(std::floor(p.real() / cell_)),
                static_cast<long>(std::floor(p.imag() / cell_))};
    }

    double cell_;
    std::map<std::pair<long, long>, std::vector<int>> grid_;
    std::vector<Complex> points_;
};

struct RawTile {
    Complex center;
    std::array<Complex, 7> verts{};
    int ring = 0;
    std::array<int, 7> nbr_tile;   // by raw edge index
    std::array<int, 7> nbr_edge;
    std::array<int, 7> vert_id{};  // deduplicated corner ids
    TileAddress address;
    bool labeled = false;
};

struct Generation {
    std::vector<RawTile> tiles;
    std::vector<std::vector<int>> rings;  // tile ids per ring
};

Generation generate(int max_ring) {
    Generation g;
    PointIndex centers(1e-4);

    const double radius = heptagon_circumradius();
    const double rho = std::tanh(radius / 2.0);

    RawTile seed;
    seed.center = {0.0, 0.0};
    for (int k = 0; k < 7; ++k) {
        const double ang = (2.0 * k - 1.0) * kPi / 7.0;  // edge k midpoint sits at angle 2*pi*k/7
        seed.verts[k] = std::polar(rho, ang);
    }
    seed.ring = 0;
    centers.find_or_insert(seed.center, kMergeTol);
    g.tiles.push_back(seed);

    std::deque<int> queue{0};
    while (!queue.empty()) {
        const int cur = queue.front();
        queue.pop_front();
        if (g.tiles[cur].ring >= max_ring)
            continue;
        for (int k = 0; k < 7; ++k) {
            const RawTile base = g.tiles[cur];  // copy: vector may grow below
            const GeodesicReflection refl(base.verts[k], base.verts[(k + 1) % 7]);
            const Complex c = refl.apply(base.center);
            if (centers.find(c, kMergeTol) >= 0)
                continue;
            RawTile t;
            t.center = c;
            for (int j = 0; j < 7; ++j)
                t.verts[j] = refl.apply(base.verts[j]);
            t.ring = base.ring + 1;
            centers.find_or_insert(c, kMergeTol);
            g.tiles.push_back(t);
            queue.push_back(static_cast<int>(g.tiles.size()) - 1);
        }
    }

    int max_seen = 0;
    for (const auto& t : g.tiles)
        max_seen = std::max(max_seen, t.ring);
    g.rings.assign(max_seen + 1, {});
    for (int i = 0; i < static_cast<int>(g.tiles.size()); ++i)
        g.rings[g.tiles[i].ring].push_back(i);
    return g;
}

void build_raw_adjacency(Generation& g) {
    PointIndex verts(1e-4);
    for (auto& t : g.tiles)
        for (int k = 0; k < 7; ++k)
            t.vert_id[k] = verts.find_or_insert(t.verts[k], kMergeTol);

    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> edges;
    for (int i = 0; i < static_cast<int>(g.tiles.size()); ++i) {
        for (int k = 0; k < 7; ++k) {
            const int a = g.tiles[i].vert_id[k];
            const int b = g.tiles[i].vert_id[(k + 1) % 7];
            edges[std::minmax(a, b)].push_back({i, k});
        }
    }
    for (auto& t : g.tiles) {
        t.nbr_tile.fill(-1);
        t.nbr_edge.fill(-1);
    }
    for (const auto& [key, owners] : edges) {
        require(owners.size() <= 2, "an edge is shared by more than two tiles");
        if (owners.size() == 2) {
            const auto [t0, e0] = owners[0];
            const auto [t1, e1] = owners[1];
            g.tiles[t0].nbr_tile[e0] = t1;
            g.tiles[t0].nbr_edge[e0] = e1;
            g.tiles[t1].nbr_tile[e1] = t0;
            g.tiles[t1].nbr_edge[e1] = e0;
        }
    }
}

// Same-ring neighbors of a tile (raw adjacency).
std::vector<int> ring_neighbors(const Generation& g, int tile) {
    std::vector<int> out;
    for (int k = 0; k < 7; ++k) {
        const int nb = g.tiles[tile].nbr_tile[k];
        if (nb >= 0 && g.tiles[nb].ring == g.tiles[tile].ring)
            out.push_back(nb);
    }
    return out;
}

// The cells of one ring as a counterclockwise cycle.
std::vector<int> ring_cycle(const Generation& g, int ring) {
    const auto& members = g.rings[ring];
    require(!members.empty(), "empty ring");
    std::vector<int> cycle;
    cycle.reserve(members.size());
    const int start = members[0];
    auto nbs = ring_neighbors(g, start);
    require(nbs.size() == 2, "ring cell without two ring neighbors");
    cycle.push_back(start);
    cycle.push_back(nbs[0]);
    while (cycle.back() != start) {
        const int cur = cycle.back();
        const int prev = cycle[cycle.size() - 2];
        auto cur_nbs = ring_neighbors(g, cur);
        require(cur_nbs.size() == 2, "ring cell without two ring neighbors");
        const int next = cur_nbs[0] == prev ? cur_nbs[1] : cur_nbs[0];
        cycle.push_back(next);
    }
    cycle.pop_back();
    require(cycle.size() == members.size(), "ring cycle does not cover the ring");

    double area2 = 0.0;
    for (size_t i = 0; i < cycle.size(); ++i) {
        const Complex a = g.tiles[cycle[i]].center;
        const Complex b = g.tiles[cycle[(i + 1) % cycle.size()]].center;
        area2 += a.real() * b.imag() - b.real() * a.imag();
    }
    if (area2 < 0.0)
        std::reverse(cycle.begin(), cycle.end());
    return cycle;
}

std::vector<int> outward_neighbors(const Generation& g, int tile) {
    std::vector<int> out;
    for (int k = 0; k < 7; ++k) {
        const int nb = g.tiles[tile].nbr_tile[k];
        if (nb >= 0 && g.tiles[nb].ring == g.tiles[tile].ring + 1)
            out.push_back(nb);
    }
    return out;
}

int inward_degree(const Generation& g, int tile) {
    int n = 0;
    for (int k = 0; k < 7; ++k) {
        const int nb = g.tiles[tile].nbr_tile[k];
        if (nb >= 0 && g.tiles[nb].ring == g.tiles[tile].ring - 1)
            ++n;
    }
    return n;
}

void label(Generation& g, int max_ring) {
    g.tiles[0].address = TileAddress::center();
    g.tiles[0].labeled = true;

    // Ring 1: the neighbor across the center's raw edge k is the sector-k root.
    for (int k = 0; k < 7; ++k) {
        const int root = g.tiles[0].nbr_tile[k];
        require(root >= 0 && g.tiles[root].ring == 1, "center neighbor is not on ring 1");
        g.tiles[root].address = TileAddress::sector_root(k);
        g.tiles[root].labeled = true;
    }
    {
        auto cyc = ring_cycle(g, 1);
        const auto it = std::find(cyc.begin(), cyc.end(), g.tiles[0].nbr_tile[0]);
        require(it != cyc.end(), "sector 0 root missing from ring 1 cycle");
        std::rotate(cyc.begin(), it, cyc.end());
        for (int k = 0; k < 7; ++k)
            require(cyc[k] == g.tiles[0].nbr_tile[k], "sector order disagrees with ring orientation");
    }

    for (int ring = 1; ring < max_ring; ++ring) {
        const auto cyc = ring_cycle(g, ring);
        const auto next_cyc = ring_cycle(g, ring + 1);
        std::map<int, int> pos;
        for (size_t i = 0; i < next_cyc.size(); ++i)
            pos[next_cyc[i]] = static_cast<int>(i);
        const int len = static_cast<int>(next_cyc.size());

        // Shared outward cell of each consecutive pair: the leftmost (B) son
        // of the counterclockwise-later cell.
        std::map<int, int> shared_after;  // cycle position of c -> shared(c, ccw-next(c))
        for (size_t i = 0; i < cyc.size(); ++i) {
            const int c = cyc[i];
            const int d = cyc[(i + 1) % cyc.size()];
            const auto oc = outward_neighbors(g, c);
            const auto od = outward_neighbors(g, d);
            int common = -1;
            for (int x : oc)
                if (std::find(od.begin(), od.end(), x) != od.end()) {
                    require(common < 0, "consecutive cells share two outward neighbors");
                    common = x;
                }
            require(common >= 0, "consecutive cells share no outward neighbor");
            shared_after[static_cast<int>(i)] = common;
        }

        for (size_t i = 0; i < cyc.size(); ++i) {
            const int c = cyc[i];
            require(g.tiles[c].labeled, "unlabeled cell while assigning sons");
            const int with_prev = shared_after[static_cast<int>((i + cyc.size() - 1) % cyc.size())];
            const int with_next = shared_after[static_cast<int>(i)];
            auto outward = outward_neighbors(g, c);
            const NodeKind kind = g.tiles[c].address.kind();
            require(static_cast<int>(outward.size()) == son_count(kind) + 1,
                    "outward degree does not match node kind");

            // Sons: the shared cell with the previous ring cell first, then the
            // unshared outward cells, contiguous counterclockwise on the next ring.
            const int base = pos.at(with_prev);
            for (int j = 0; j < son_count(kind); ++j) {
                const int son = next_cyc[(base + j) % len];
                require(son != with_next, "son arc runs into the next cell's arc");
                require(std::find(outward.begin(), outward.end(), son) != outward.end(),
                        "son arc is not contiguous");
                require(!g.tiles[son].labeled, "son labeled twice");
                g.tiles[son].address = g.tiles[c].address.child(j);
                g.tiles[son].labeled = true;
                const int fathers = inward_degree(g, son);
                require(fathers == (j == 0 ? 2 : 1), "inward degree does not match son kind");
            }
        }
        for (int t : next_cyc)
            require(g.tiles[t].labeled, "ring not fully labeled");
    }
}

// Counterclockwise order of a tile's raw edges, starting from a given edge.
std::array<int, 7> ccw_edge_order(const RawTile& t, int first_edge) {
    std::array<double, 7> ang{};
    for (int k = 0; k < 7; ++k) {
        const Complex a = translate_to_origin(t.center, t.verts[k]);
        const Complex b = translate_to_origin(t.center, t.verts[(k + 1) % 7]);
        const Complex m = (a + b) / 2.0;
        ang[k] = std::atan2(m.imag(), m.real());
    }
    std::array<int, 7> order{};
    for (int k = 0; k < 7; ++k)
        order[k] = k;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return ang[a] < ang[b]; });
    const auto it = std::find(order.begin(), order.end(), first_edge);
    std::rotate(order.begin(), it, order.end());
    return order;
}

}  // namespace

int slot_edge(NodeKind k, CellSlot s) {
    // Frozen from the geometric construction (validated against it in tests):
    // counterclockwise from the father edge, W cells read
    //   father, left lateral, sons 0..2, co-B, right lateral
    // and B cells read
    //   father, co-father, left lateral, sons 0..1, co-B, right lateral.
    if (k == NodeKind::W) {
        switch (s) {
            case CellSlot::Father: return 0;
            case CellSlot::LatLeft: return 1;
            case CellSlot::Son0: return 2;
            case CellSlot::Son1: return 3;
            case CellSlot::Son2: return 4;
            case CellSlot::CoB: return 5;
            case CellSlot::LatRight: return 6;
            case CellSlot::CoFather: return -1;
        }
    } else {
        switch (s) {
            case CellSlot::Father: return 0;
            case CellSlot::CoFather: return 1;
            case CellSlot::LatLeft: return 2;
            case CellSlot::Son0: return 3;
            case CellSlot::Son1: return 4;
            case CellSlot::CoB: return 5;
            case CellSlot::LatRight: return 6;
            case CellSlot::Son2: return -1;
        }
    }
    return -1;
}

CellSlot edge_slot(NodeKind k, int edge) {
    static constexpr CellSlot all[] = {CellSlot::Father,  CellSlot::CoFather, CellSlot::LatLeft,
                                       CellSlot::LatRight, CellSlot::Son0,    CellSlot::Son1,
                                       CellSlot::Son2,     CellSlot::CoB};
    for (CellSlot s : all)
        if (slot_edge(k, s) == edge)
            return s;
    throw std::invalid_argument("edge_slot: edge out of range");
}

std::optional<int> AdjacencyMap::index_of(const TileAddress& a) const {
    const auto it = index_.find(a);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

DiscPoint AdjacencyMap::geometric_center(const TileAddress& a) const {
    const auto i = index_of(a);
    if (!i)
        throw std::invalid_argument("geometric_center: address outside the patch");
    return to_disc_point(tiles_[*i].center);
}

AdjacencyMap build_patch(int levels) {
    if (levels < 0)
        throw std::invalid_argument("build_patch: negative level count");
    const int max_ring = levels + 1;

    Generation g = generate(max_ring);
    build_raw_adjacency(g);
    require(static_cast<int>(g.rings.size()) == max_ring + 1, "unexpected ring count");
    label(g, max_ring);

    // Final edge numbering per tile: counterclockwise from the father edge
    // (the center keeps its construction order, edge k facing sector k).
    const int n = static_cast<int>(g.tiles.size());
    std::vector<std::array<int, 7>> perm(n);  // final edge index -> raw edge index
    for (int i = 0; i < n; ++i) {
        const RawTile& t = g.tiles[i];
        if (t.address.is_center()) {
            for (int k = 0; k < 7; ++k)
                perm[i][k] = k;
            continue;
        }
        const TileAddress fa = *father(t.address);
        int father_edge = -1;
        for (int k = 0; k < 7; ++k) {
            const int nb = t.nbr_tile[k];
            if (nb >= 0 && g.tiles[nb].address == fa)
                father_edge = k;
        }
        require(father_edge >= 0, "father tile is not adjacent");
        perm[i] = ccw_edge_order(t, father_edge);
    }

    // Deterministic tile order: by address.
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return g.tiles[a].address < g.tiles[b].address; });
    std::vector<int> final_index(n);
    for (int i = 0; i < n; ++i)
        final_index[order[i]] = i;

    AdjacencyMap map;
    map.levels_ = levels;
    map.tiles_.resize(n);
    for (int i = 0; i < n; ++i) {
        const RawTile& t = g.tiles[order[i]];
        PatchTile out;
        out.address = t.address;
        out.ring = t.ring;
        out.center = t.center;
        for (int e = 0; e < 7; ++e) {
            const int raw = perm[order[i]][e];
            const int nb = t.nbr_tile[raw];
            out.nbr[e].tile = nb < 0 ? -1 : final_index[nb];
        }
        // Rebuild the vertex array to match the new edge order: vertex e is
        // the corner shared by edges e-1 and e.
        for (int e = 0; e < 7; ++e) {
            const int raw_prev = perm[order[i]][(e + 6) % 7];
            const int raw_cur = perm[order[i]][e];
            const std::array<int, 2> prev_ids = {t.vert_id[raw_prev], t.vert_id[(raw_prev + 1) % 7]};
            const std::array<int, 2> cur_ids = {t.vert_id[raw_cur], t.vert_id[(raw_cur + 1) % 7]};
            int shared = -1;
            Complex shared_pt;
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    if (prev_ids[a] == cur_ids[b]) {
                        shared = prev_ids[a];
                        shared_pt = b == 0 ? t.verts[raw_cur] : t.verts[(raw_cur + 1) % 7];
                    }
                }
            }
            require(shared >= 0, "consecutive edges share no vertex");
            out.vertices[e] = shared_pt;
        }
        map.tiles_[i] = out;
        map.index_[out.address] = i;
    }

    // Reciprocal edge indices.
    for (int i = 0; i < n; ++i) {
        for (int e = 0; e < 7; ++e) {
            const int nb = map.tiles_[i].nbr[e].tile;
            if (nb < 0)
                continue;
            int rec = -1;
            for (int f = 0; f < 7; ++f)
                if (map.tiles_[nb].nbr[f].tile == i)
                    rec = f;
            require(rec >= 0, "adjacency is not symmetric");
            map.tiles_[i].nbr[e].edge = rec;
        }
    }
    return map;
}

}  // namespace hept
