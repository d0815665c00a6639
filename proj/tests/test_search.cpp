#include <algorithm>

#include "doctest.h"
#include "hept/search.hpp"
#include "support.hpp"

using namespace hept;

namespace {

TileSet single_tile_set(TilePrototype proto) {
    TileSet ts;
    ts.blank.id = "b";
    ts.blank.edges.fill(EdgeColor::blank());
    ts.prototypes.push_back(std::move(proto));
    return ts;
}

SearchBudget small_budget(int radius, size_t cells = 64) {
    SearchBudget b;
    b.radius = radius;
    b.max_cells = cells;
    b.max_nodes = 2'000'000;
    b.time_limit_s = 120.0;
    return b;
}

}  // namespace

TEST_CASE("a free-standing tile is found immediately") {
    TilePrototype p;
    p.id = "free";
    p.role = Role::RootHalt;
    p.edges.fill(EdgeColor::blank());
    const TileSet ts = single_tile_set(p);
    const SearchResult res = find_finite_tiling(ts, small_budget(1));
    REQUIRE(res.status == SearchStatus::Found);
    CHECK(res.config->cells.size() == 1);
}

TEST_CASE("a lone color still matches a mirrored copy of itself") {
    // Colors are symmetric, so one non-blank edge closes against a second
    // copy of the same tile; the smallest solution has two cells.
    TilePrototype p;
    p.id = "pairable";
    p.role = Role::Root;
    p.edges.fill(EdgeColor::blank());
    p.edges[2] = EdgeColor::border_l();
    const TileSet ts = single_tile_set(p);
    const SearchResult res = find_finite_tiling(ts, small_budget(2));
    REQUIRE(res.status == SearchStatus::Found);
    CHECK(res.config->cells.size() == 2);
}

TEST_CASE("a tile with no blank edge cannot close in bounded space") {
    // Seven distinct colors: every placement forces all seven neighbors, so
    // the support can never stop growing and every radius is refuted.
    TilePrototype p;
    p.id = "grower";
    p.role = Role::Root;
    for (int e = 0; e < 7; ++e)
        p.edges[e] = EdgeColor::tree_sym(1, "c" + std::to_string(e));
    const TileSet ts = single_tile_set(p);
    for (int radius : {1, 2, 3}) {
        const SearchResult res = find_finite_tiling(ts, small_budget(radius));
        CHECK(res.status == SearchStatus::NoneInSpace);
    }
}

TEST_CASE("an empty tile set T has no solution (the blank alone does not count)") {
    TileSet ts;
    ts.blank.id = "b";
    ts.blank.edges.fill(EdgeColor::blank());
    const SearchResult res = find_finite_tiling(ts, small_budget(2));
    CHECK(res.status == SearchStatus::NoneInSpace);
    const CountResult cnt = count_solutions(ts, small_budget(2));
    CHECK(!cnt.exhausted);
    CHECK(cnt.count == 0);
}

TEST_CASE("the immediate-halt tile set has exactly the one-tile solution") {
    const TileSet ts = compile(fixture_machine("immediate_halt.tm"));
    const SearchResult res = find_finite_tiling(ts, small_budget(2));
    REQUIRE(res.status == SearchStatus::Found);
    REQUIRE(res.config->cells.size() == 1);
    CHECK(res.config->cells.begin()->second.tile == "root-halt");

    // Equals the built harp up to the anchoring isometry.
    const HarpResult hr = build_harp(fixture_machine("immediate_halt.tm"), 10);
    CHECK(hr.config.cells.begin()->second.tile == res.config->cells.begin()->second.tile);

    const CountResult cnt = count_solutions(ts, small_budget(2));
    CHECK(!cnt.exhausted);
    CHECK(cnt.count == 1);  // one representative per anchor rotation orbit
}

TEST_CASE("found configurations satisfy the checker") {
    const TileSet ts = compile(fixture_machine("halt1.tm"));
    const SearchBudget b = small_budget(2, 8);
    const SearchResult res = find_finite_tiling(ts, b);
    REQUIRE(res.status == SearchStatus::Found);
    const AdjacencyMap patch = build_patch(b.radius + 1);
    CHECK(is_finite_solution(*res.config, ts, patch));
    CHECK(res.config->cells.size() == 4);  // the t=1 harp, re-anchored
}

TEST_CASE("no solution smaller than the harp exists for the incrementer") {
    const TileSet ts = compile(fixture_machine("inc3.tm"));
    SearchBudget b = small_budget(4, 32);  // the harp needs 33 cells
    const CountResult cnt = count_solutions(ts, b);
    CHECK(!cnt.exhausted);
    CHECK(cnt.count == 0);
}

TEST_CASE("looping machines admit no finite tiling at small radii") {
    for (const char* name : {"loop_swap.tm", "loop_right.tm"}) {
        const TileSet ts = compile(fixture_machine(name));
        for (int radius : {1, 2, 3}) {
            const SearchResult res = find_finite_tiling(ts, small_budget(radius, 20));
            INFO(name << " radius " << radius);
            CHECK(res.status == SearchStatus::NoneInSpace);
        }
    }
}

TEST_CASE("the verdict does not depend on prototype order or thread count") {
    const TileSet ts = compile(fixture_machine("loop_swap.tm"));
    TileSet reversed = ts;
    std::reverse(reversed.prototypes.begin(), reversed.prototypes.end());
    const SearchBudget b = small_budget(2, 16);
    CHECK(find_finite_tiling(ts, b).status == SearchStatus::NoneInSpace);
    CHECK(find_finite_tiling(reversed, b).status == SearchStatus::NoneInSpace);

    SearchBudget threaded = b;
    threaded.threads = 4;
    CHECK(find_finite_tiling(ts, threaded).status == SearchStatus::NoneInSpace);

    const TileSet found_ts = compile(fixture_machine("halt1.tm"));
    SearchBudget fb = small_budget(2, 8);
    fb.threads = 4;
    CHECK(find_finite_tiling(found_ts, fb).status == SearchStatus::Found);
}

TEST_CASE("a tiny node budget reports exhaustion, not absence") {
    const TileSet ts = compile(fixture_machine("loop_right.tm"));
    SearchBudget b = small_budget(2, 20);
    b.max_nodes = 3;
    const SearchResult res = find_finite_tiling(ts, b);
    CHECK(res.status == SearchStatus::BudgetExhausted);
    CHECK(res.stats.nodes > 0);
}
