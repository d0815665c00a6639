#include <set>

#include "doctest.h"
#include "hept/harp.hpp"
#include "hept/heptagrid.hpp"
#include "support.hpp"

using namespace hept;

namespace {

uint64_t harp_size(int t) {
    if (t == 0)
        return 1;
    uint64_t n = 0;
    for (int l = 0; l <= t; ++l)
        n += level_size(l);
    return n;
}

// Symbol carried by the chord-k column at level n, read off the placed
// tile's father edge; the chord start itself carries the blank implicitly.
std::string chord_symbol(const Configuration& cfg, const TileSet& ts, const TuringMachine& tm,
                         int k, int n) {
    if (n == k)
        return tm.symbols[tm.blank_symbol];
    const auto it = cfg.cells.find(chord_of(k, n));
    REQUIRE(it != cfg.cells.end());
    const TilePrototype* proto = ts.find(it->second.tile);
    REQUIRE(proto != nullptr);
    const EdgeColor& c = proto->edges[((0 - it->second.rot) % 7 + 7) % 7];
    REQUIRE(c.payload == EdgeColor::Payload::Sym);
    return c.sym;
}

}  // namespace

TEST_CASE("route_signal stays between chords") {
    const TuringMachine imm = fixture_machine("immediate_halt.tm");
    const Itinerary it0 = route_signal(run(imm, 10));
    REQUIRE(it0.steps.size() == 1);
    CHECK(it0.steps[0].exec == TileAddress::sector_root(0));
    CHECK(it0.steps[0].walked.empty());

    const TuringMachine inc = fixture_machine("inc3.tm");
    const Trace tr = run(inc, 10);
    const Itinerary it = route_signal(tr);
    REQUIRE(it.steps.size() == 4);  // configurations 0..3
    for (int n = 0; n <= 3; ++n)
        CHECK(it.steps[n].exec == chord_of(n, n));

    for (const char* name : {"inc3.tm", "halt2.tm", "stay3.tm"}) {
        const Trace trace = run(fixture_machine(name), 50);
        const Itinerary itin = route_signal(trace);
        for (size_t n = 0; n < itin.steps.size(); ++n) {
            const auto& step = itin.steps[n];
            CHECK(step.exec == chord_of(trace.head_at[n], static_cast<int>(n)));
            std::set<uint64_t> chord_ranks;
            for (int k = 0; k <= static_cast<int>(n); ++k)
                chord_ranks.insert(chord_of(k, static_cast<int>(n)).rank());
            for (size_t i = 0; i < step.walked.size(); ++i) {
                const bool is_chord = chord_ranks.count(step.walked[i].rank()) > 0;
                if (i + 1 < step.walked.size())
                    CHECK(!is_chord);  // only the endpoint may lie on a chord
                else
                    CHECK(step.walked[i] == step.exec);
            }
        }
    }
}

TEST_CASE("itinerary steps of route_signal match the trace head") {
    const Trace tr = run(fixture_machine("inc3.tm"), 10);
    const Itinerary it = route_signal(tr);
    REQUIRE(it.steps.size() == static_cast<size_t>(tr.times()));
}

TEST_CASE("immediate halt builds the single-tile configuration") {
    const HarpResult hr = build_harp(fixture_machine("immediate_halt.tm"), 10);
    REQUIRE(hr.status == HarpStatus::Built);
    CHECK(hr.halt_time == 0);
    REQUIRE(hr.config.cells.size() == 1);
    const auto& [addr, pl] = *hr.config.cells.begin();
    CHECK(addr == TileAddress::sector_root(0));
    CHECK(pl.tile == "root-halt");
    CHECK(pl.rot == 0);
}

TEST_CASE("support sizes follow the level-size sum") {
    const std::pair<const char*, int> cases[] = {
        {"halt1.tm", 1}, {"halt2.tm", 2}, {"inc3.tm", 3}, {"stay3.tm", 3}};
    for (const auto& [name, t] : cases) {
        const HarpResult hr = build_harp(fixture_machine(name), 50);
        REQUIRE(hr.status == HarpStatus::Built);
        CHECK(hr.halt_time == t);
        CHECK(hr.config.cells.size() == harp_size(t));
        // Everything lives on sector-0 levels 0..t.
        for (const auto& [addr, pl] : hr.config.cells) {
            CHECK(!addr.is_center());
            CHECK(addr.sector() == 0);
            CHECK(addr.level() <= t);
            CHECK(pl.rot == 0);
        }
    }
}

TEST_CASE("loops report a budget miss") {
    const HarpResult hr = build_harp(fixture_machine("loop_swap.tm"), 50);
    CHECK(hr.status == HarpStatus::NotHaltedWithinBudget);
    CHECK(hr.config.cells.empty());
}

TEST_CASE("left-edge violations propagate") {
    const TuringMachine tm = parse_machine(
        "states: a h\nalphabet: _\nblank: _\nstart: a\nhalts: h\nrule: a _ -> h _ L\n");
    const HarpResult hr = build_harp(tm, 10);
    CHECK(hr.status == HarpStatus::LeftEdgeViolation);
    CHECK(hr.violation_step == 0);
}

TEST_CASE("chord symbols equal the cell histories (oracle equivalence)") {
    for (const char* name : {"halt1.tm", "halt2.tm", "inc3.tm", "stay3.tm"}) {
        const TuringMachine tm = fixture_machine(name);
        const TileSet ts = compile(tm);
        const Trace tr = run(tm, 50);
        REQUIRE(tr.status == RunStatus::Halted);
        const HarpResult hr = build_harp(tm, 50);
        REQUIRE(hr.status == HarpStatus::Built);
        const int t = tr.halt_time;
        int checked = 0;
        for (int k = 0; k <= tr.max_excursion(); ++k) {
            const auto hist = cell_history(tr, k);
            for (int n = 0; n <= t; ++n) {
                if (n < k) {
                    CHECK(hist[n] == tm.blank_symbol);  // cells are blank before their chord starts
                    continue;
                }
                CHECK(chord_symbol(hr.config, ts, tm, k, n) == tm.symbols[hist[n]]);
                ++checked;
            }
        }
        CHECK(checked > 0);
    }
}

TEST_CASE("borders of the three kinds are present, with exactly one root") {
    const HarpResult hr = build_harp(fixture_machine("inc3.tm"), 50);
    REQUIRE(hr.status == HarpStatus::Built);
    const int t = hr.halt_time;
    int roots = 0, left = 0, right = 0, silver = 0;
    for (const auto& [addr, pl] : hr.config.cells) {
        if (pl.tile == "root")
            ++roots;
        if (pl.tile == "border-l")
            ++left;
        if (pl.tile.rfind("border-r", 0) == 0)
            ++right;
        if (addr.level() == t) {
            CHECK((pl.tile.rfind("silver-", 0) == 0 || pl.tile.rfind("corner-", 0) == 0));
            ++silver;
        }
    }
    CHECK(roots == 1);
    CHECK(left == t - 1);
    CHECK(right == t - 1);
    CHECK(silver == static_cast<int>(level_size(t)));
}

TEST_CASE("configurations serialize deterministically and round-trip") {
    const HarpResult a = build_harp(fixture_machine("halt2.tm"), 50);
    const HarpResult b = build_harp(fixture_machine("halt2.tm"), 50);
    const std::string sa = serialize_config(a.config);
    CHECK(sa == serialize_config(b.config));
    const Configuration back = parse_config(sa);
    CHECK(back == a.config);
    CHECK(serialize_config(back) == sa);
}
