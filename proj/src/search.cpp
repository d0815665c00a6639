#include "hept/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <set>
#include <thread>

namespace hept {

namespace {

using Clock = std::chrono::steady_clock;

struct Shared {
    const TileSet* ts = nullptr;
    const AdjacencyMap* patch = nullptr;
    SearchBudget budget;
    Clock::time_point deadline;
    // Candidate index: color -> (prototype, prototype edge carrying it).
    std::map<EdgeColor, std::vector<std::pair<int, int>>> by_color;
    std::atomic<bool> stop{false};  // set on Found (existence mode only)
};

void init_shared(Shared& sh, const TileSet& ts, const AdjacencyMap& patch,
                 const SearchBudget& b) {
    sh.ts = &ts;
    sh.patch = &patch;
    sh.budget = b;
    sh.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(b.time_limit_s));
    for (int p = 0; p < static_cast<int>(ts.prototypes.size()); ++p)
        for (int e = 0; e < 7; ++e)
            sh.by_color[ts.prototypes[p].edges[e]].push_back({p, e});
}

// Per-anchor exhaustive depth-first search over edge-forced cells.
class AnchoredSearch {
public:
    AnchoredSearch(const Shared& shared, bool count_mode)
        : sh_(shared), count_mode_(count_mode) {
        const int n = sh_.patch->size();
        placed_.assign(n, -1);
        rot_.assign(n, 0);
    }

    // Runs one anchor placement; returns false when the node budget or the
    // clock cut the exploration short (the subtree verdict is then unknown).
    bool run(int anchor_cell, int proto, int rot) {
        exhausted_ = false;
        if (fits(anchor_cell, proto, rot)) {
            place(anchor_cell, proto, rot);
            dfs();
            unplace(anchor_cell);
        }
        return !exhausted_;
    }

    bool found() const { return found_.has_value(); }
    const Configuration& solution() const { return *found_; }
    uint64_t solutions() const { return solutions_; }
    const SearchStats& stats() const { return stats_; }

private:
    const EdgeColor& color_at(int cell, int edge) const {
        const TilePrototype& p = sh_.ts->prototypes[placed_[cell]];
        return placed_color(p, rot_[cell], edge);
    }

    bool fits(int cell, int proto, int rot) const {
        const PatchTile& t = sh_.patch->tile(cell);
        const TilePrototype& p = sh_.ts->prototypes[proto];
        for (int e = 0; e < 7; ++e) {
            const EdgeColor& c = placed_color(p, rot, e);
            const NeighborRef& nb = t.nbr[e];
            if (nb.outside()) {
                if (!c.is_blank())
                    return false;  // nothing beyond the patch may be forced
                continue;
            }
            if (placed_[nb.tile] >= 0) {
                if (!(color_at(nb.tile, nb.edge) == c))
                    return false;
            }
        }
        return true;
    }

    // One constraint pinning an unplaced cell: a placed neighbor's non-blank
    // color on the shared edge, seen from the unplaced side.
    struct Constraint {
        int cell;
        int edge;         // edge index on the unplaced cell
        EdgeColor color;  // required there
    };

    // Candidate placements for a constrained cell, via the color index.
    std::vector<std::pair<int, int>> candidates(const Constraint& c) const {
        std::vector<std::pair<int, int>> out;
        const auto it = sh_.by_color.find(c.color);
        if (it == sh_.by_color.end())
            return out;
        for (const auto& [proto, proto_edge] : it->second) {
            const int rot = ((c.edge - proto_edge) % 7 + 7) % 7;
            if (fits(c.cell, proto, rot))
                out.push_back({proto, rot});
        }
        return out;
    }

    // All currently forced cells, each with one of its constraints.
    std::vector<Constraint> forced_cells() const {
        std::map<int, Constraint> forced;
        for (int cell : order_) {
            const PatchTile& t = sh_.patch->tile(cell);
            for (int e = 0; e < 7; ++e) {
                const NeighborRef& nb = t.nbr[e];
                if (nb.outside() || placed_[nb.tile] >= 0)
                    continue;
                const EdgeColor& c = color_at(cell, e);
                if (!c.is_blank())
                    forced.emplace(nb.tile, Constraint{nb.tile, nb.edge, c});
            }
        }
        std::vector<Constraint> out;
        out.reserve(forced.size());
        for (const auto& [cell, constraint] : forced)
            out.push_back(constraint);
        return out;
    }

    void place(int cell, int proto, int rot) {
        placed_[cell] = proto;
        rot_[cell] = rot;
        order_.push_back(cell);
        stats_.max_depth = std::max(stats_.max_depth, order_.size());
    }

    void unplace(int cell) {
        placed_[cell] = -1;
        order_.pop_back();
    }

    void record_solution() {
        ++solutions_;
        if (!found_) {
            Configuration cfg;
            for (int cell : order_) {
                cfg.cells[sh_.patch->tile(cell).address] =
                    Placement{sh_.ts->prototypes[placed_[cell]].id, rot_[cell]};
            }
            found_ = std::move(cfg);
        }
    }

    void dfs() {
        if (exhausted_ || (found_ && !count_mode_) || sh_.stop.load(std::memory_order_relaxed))
            return;
        if (++stats_.nodes > sh_.budget.max_nodes || Clock::now() > sh_.deadline) {
            exhausted_ = true;
            return;
        }
        const auto forced = forced_cells();
        if (forced.empty()) {
            record_solution();
            return;
        }
        // Every forced cell must eventually be filled.
        if (order_.size() + forced.size() > sh_.budget.max_cells)
            return;

        // Forward checking: expand the most constrained cell; prune when any
        // forced cell has no candidate left.
        std::vector<std::pair<int, int>> best;
        size_t best_index = 0;
        bool first = true;
        for (size_t i = 0; i < forced.size(); ++i) {
            auto cand = candidates(forced[i]);
            if (cand.empty())
                return;
            if (first || cand.size() < best.size()) {
                best = std::move(cand);
                best_index = i;
                first = false;
            }
            if (best.size() == 1)
                break;  // cannot do better; skip scanning the rest
        }

        const int cell = forced[best_index].cell;
        for (const auto& [proto, rot] : best) {
            place(cell, proto, rot);
            dfs();
            unplace(cell);
            if (exhausted_ || (found_ && !count_mode_) ||
                sh_.stop.load(std::memory_order_relaxed))
                return;
        }
    }

    const Shared& sh_;
    bool count_mode_;
    std::vector<int> placed_;  // prototype index per patch cell, -1 = blank
    std::vector<int> rot_;
    std::vector<int> order_;
    std::optional<Configuration> found_;
    uint64_t solutions_ = 0;
    SearchStats stats_;
    bool exhausted_ = false;
};

struct AnchorJob {
    int proto;
    int rot;
};

struct AnchorOutcome {
    bool exhausted = false;
    std::optional<Configuration> config;
    uint64_t count = 0;
    SearchStats stats;
};

// Runs every anchor job; each job gets the full per-anchor node budget so
// the combined verdict does not depend on scheduling.
std::vector<AnchorOutcome> run_anchors(Shared& shared, const std::vector<AnchorJob>& jobs,
                                       bool count_mode) {
    std::vector<AnchorOutcome> outcomes(jobs.size());
    const int anchor_cell = *shared.patch->index_of(TileAddress::center());
    const int threads = std::max(1, shared.budget.threads);
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= jobs.size())
                return;
            if (!count_mode && shared.stop.load(std::memory_order_relaxed))
                continue;  // verdict already Found; remaining anchors are moot
            AnchoredSearch search(shared, count_mode);
            const bool complete = search.run(anchor_cell, jobs[i].proto, jobs[i].rot);
            AnchorOutcome& out = outcomes[i];
            out.exhausted = !complete;
            out.count = search.solutions();
            out.stats = search.stats();
            if (search.found()) {
                out.config = search.solution();
                if (!count_mode)
                    shared.stop.store(true, std::memory_order_relaxed);
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int i = 0; i < threads; ++i)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }
    return outcomes;
}

}  // namespace

SearchResult find_finite_tiling(const TileSet& ts, const SearchBudget& budget) {
    const AdjacencyMap patch = build_patch(budget.radius);
    Shared shared;
    init_shared(shared, ts, patch, budget);

    std::vector<AnchorJob> jobs;
    for (int p = 0; p < static_cast<int>(ts.prototypes.size()); ++p)
        for (int r = 0; r < 7; ++r)
            jobs.push_back({p, r});

    const auto outcomes = run_anchors(shared, jobs, /*count_mode=*/false);

    SearchResult res;
    bool any_exhausted = false;
    for (const auto& out : outcomes) {
        res.stats.nodes += out.stats.nodes;
        res.stats.max_depth = std::max(res.stats.max_depth, out.stats.max_depth);
        any_exhausted |= out.exhausted;
        if (out.config && !res.config)
            res.config = out.config;
    }
    if (res.config)
        res.status = SearchStatus::Found;
    else if (any_exhausted)
        res.status = SearchStatus::BudgetExhausted;
    else
        res.status = SearchStatus::NoneInSpace;
    return res;
}

CountResult count_solutions(const TileSet& ts, const SearchBudget& budget) {
    const AdjacencyMap patch = build_patch(budget.radius);
    Shared shared;
    init_shared(shared, ts, patch, budget);

    std::vector<AnchorJob> jobs;
    for (int p = 0; p < static_cast<int>(ts.prototypes.size()); ++p)
        jobs.push_back({p, 0});

    const auto outcomes = run_anchors(shared, jobs, /*count_mode=*/true);

    CountResult res;
    for (const auto& out : outcomes) {
        res.stats.nodes += out.stats.nodes;
        res.stats.max_depth = std::max(res.stats.max_depth, out.stats.max_depth);
        res.exhausted |= out.exhausted;
        res.count += out.count;
    }
    return res;
}

}  // namespace hept
