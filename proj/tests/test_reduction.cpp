#include <map>
#include <set>

#include "doctest.h"
#include "hept/reduction.hpp"
#include "support.hpp"

using namespace hept;

namespace {

size_t census_total(const std::map<Role, size_t>& c) {
    size_t n = 0;
    for (const auto& [role, count] : c)
        n += count;
    return n;
}

std::map<Role, size_t> enumerate_roles(const TileSet& ts) {
    std::map<Role, size_t> out;
    for (const auto& p : ts.prototypes)
        out[p.role]++;
    return out;
}

}  // namespace

TEST_CASE("immediate halt compiles to a skeleton-and-silver set with rootHalt") {
    const TileSet ts = compile(fixture_machine("immediate_halt.tm"));
    const TilePrototype* rh = ts.find("root-halt");
    REQUIRE(rh != nullptr);
    CHECK(rh->role == Role::RootHalt);
    for (const auto& c : rh->edges)
        CHECK(c.is_blank());
    CHECK(ts.find("root") == nullptr);

    const auto census = prototile_census(fixture_machine("immediate_halt.tm"));
    CHECK(census.at(Role::ChordExec) == 0);
    CHECK(census.at(Role::TransitSignal) == 0);
    CHECK(census.at(Role::BorderRExec) == 0);
    CHECK(census.at(Role::SilverEmit) == 0);  // no rule raises the closing signal
    CHECK(census.at(Role::SilverChordCross) == 2);
    CHECK(census.at(Role::CornerLeftM) == 1);
    CHECK(census.at(Role::RootHalt) == 1);
    CHECK(census_total(census) == ts.prototypes.size());
}

TEST_CASE("census formula equals enumeration for every fixture") {
    for (const char* name : {"immediate_halt.tm", "halt1.tm", "halt2.tm", "inc3.tm",
                             "stay3.tm", "loop_swap.tm", "loop_right.tm"}) {
        const TuringMachine tm = fixture_machine(name);
        const TileSet ts = compile(tm);
        const auto predicted = prototile_census(tm);
        const auto actual = enumerate_roles(ts);
        for (const auto& [role, count] : predicted) {
            const auto it = actual.find(role);
            CHECK((it == actual.end() ? 0 : it->second) == count);
        }
        CHECK(census_total(predicted) == ts.prototypes.size());
    }
}

TEST_CASE("the blank tile has seven blank edges and a reserved id") {
    const TileSet ts = compile(fixture_machine("inc3.tm"));
    CHECK(ts.blank.id == "b");
    for (const auto& c : ts.blank.edges)
        CHECK(c.is_blank());
    CHECK(ts.find("b") == nullptr);  // b is not a member of T
}

TEST_CASE("compiled sets validate cleanly; hand-built breakages are reported") {
    for (const char* name : {"immediate_halt.tm", "halt2.tm", "inc3.tm", "loop_right.tm"}) {
        const TileSet ts = compile(fixture_machine(name));
        CHECK(validate_tileset(ts).empty());
    }

    TileSet bad = compile(fixture_machine("halt1.tm"));
    TilePrototype leaky;
    leaky.id = "leaky";
    leaky.role = Role::Inside;
    leaky.edges.fill(EdgeColor::inside());
    leaky.edges[3] = EdgeColor::blank();
    bad.prototypes.push_back(leaky);
    auto violations = validate_tileset(bad);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].find("blank edge on non-border role") != std::string::npos);

    bad.prototypes.push_back(bad.prototypes.front());
    violations = validate_tileset(bad);
    bool dup = false;
    for (const auto& v : violations)
        dup |= v.find("duplicate id") != std::string::npos;
    CHECK(dup);
}

TEST_CASE("payload placement rules are enforced") {
    TileSet ts;
    ts.blank.id = "b";
    ts.blank.edges.fill(EdgeColor::blank());
    TilePrototype p;
    p.id = "x";
    p.role = Role::BorderL;
    p.edges.fill(EdgeColor::inside());
    EdgeColor misplaced = EdgeColor::head("q", 'R');
    misplaced.tag = EdgeColor::Tag::TreeV;  // head payload off a lateral edge
    p.edges[0] = misplaced;
    ts.prototypes.push_back(p);
    const auto violations = validate_tileset(ts);
    REQUIRE(!violations.empty());
    CHECK(violations[0].find("head payload") != std::string::npos);
}

TEST_CASE("census is monotone under machine growth") {
    const auto small = prototile_census(fixture_machine("halt2.tm"));
    // Same machine with one more symbol and the rules to keep the table total.
    const TuringMachine bigger = parse_machine(
        "states: q0 q1 h\nalphabet: _ 1 2\nblank: _\nstart: q0\nhalts: h\n"
        "rule: q0 _ -> q1 1 R\nrule: q0 1 -> q0 1 R\nrule: q0 2 -> q0 2 R\n"
        "rule: q1 _ -> h 1 L\nrule: q1 1 -> q1 1 L\nrule: q1 2 -> q1 2 L\n");
    const auto big = prototile_census(bigger);
    for (const auto& [role, count] : small)
        CHECK(big.at(role) >= count);
}

TEST_CASE("tile set size is runtime-independent for equal signatures") {
    // Same states, alphabet, rule count and hand-over structure; halting
    // times 1 and 4.
    const TuringMachine fast = parse_machine(
        "states: a b h\nalphabet: _ 1\nblank: _\nstart: a\nhalts: h\n"
        "rule: a _ -> h _ S\nrule: a 1 -> b 1 S\nrule: b _ -> b _ S\nrule: b 1 -> a 1 S\n");
    const TuringMachine slow = parse_machine(
        "states: a b h\nalphabet: _ 1\nblank: _\nstart: a\nhalts: h\n"
        "rule: a _ -> b 1 S\nrule: a 1 -> b _ S\nrule: b _ -> h _ S\nrule: b 1 -> a 1 S\n");
    CHECK(run(fast, 100).halt_time == 1);
    CHECK(run(slow, 100).halt_time == 4);
    CHECK(prototile_census(fast) == prototile_census(slow));
    CHECK(compile(fast).prototypes.size() == compile(slow).prototypes.size());
}

TEST_CASE("serialize -> parse -> serialize is byte-identical") {
    for (const char* name : {"immediate_halt.tm", "inc3.tm", "loop_swap.tm"}) {
        const TileSet ts = compile(fixture_machine(name));
        const std::string once = serialize_tileset(ts);
        const TileSet back = parse_tileset(once);
        CHECK(serialize_tileset(back) == once);
        CHECK(back.prototypes.size() == ts.prototypes.size());
    }
}

TEST_CASE("compiled prototypes have pairwise distinct edge tuples") {
    for (const char* name : {"halt2.tm", "inc3.tm", "stay3.tm"}) {
        const TileSet ts = compile(fixture_machine(name));
        std::set<std::string> layouts;
        for (const auto& p : ts.prototypes) {
            std::string key;
            for (const auto& c : p.edges)
                key += c.token() + "|";
            CHECK(layouts.insert(key).second);
        }
    }
}

TEST_CASE("every emitted color has both of its sides in the set") {
    // Non-blank colors appear on at least two prototype edges, with vertical
    // channels present on both the father side and a son side.
    for (const char* name : {"immediate_halt.tm", "halt1.tm", "halt2.tm", "inc3.tm", "stay3.tm",
                             "loop_swap.tm", "loop_right.tm"}) {
        const TileSet ts = compile(fixture_machine(name));
        std::map<std::string, int> total, on_father, off_father;
        std::map<std::string, EdgeColor::Tag> tag_of;
        for (const auto& p : ts.prototypes) {
            for (int e = 0; e < 7; ++e) {
                const EdgeColor& c = p.edges[e];
                if (c.is_blank())
                    continue;
                total[c.token()]++;
                (e == 0 ? on_father : off_father)[c.token()]++;
                tag_of[c.token()] = c.tag;
            }
        }
        for (const auto& [token, count] : total) {
            CHECK(count >= 2);
            const auto tag = tag_of[token];
            if (tag == EdgeColor::Tag::TreeV || tag == EdgeColor::Tag::BorderL ||
                tag == EdgeColor::Tag::BorderR) {
                CHECK(on_father[token] >= 1);
                CHECK(off_father[token] >= 1);
            }
        }
    }
}

TEST_CASE("edge color tokens parse back to themselves") {
    const TileSet ts = compile(fixture_machine("stay3.tm"));
    for (const auto& p : ts.prototypes) {
        for (const auto& c : p.edges) {
            const auto back = EdgeColor::parse(c.token());
            REQUIRE(back.has_value());
            CHECK(*back == c);
        }
    }
    CHECK(!EdgeColor::parse("nope").has_value());
    CHECK(!EdgeColor::parse("v3").has_value());
    CHECK(!EdgeColor::parse("ag:flow=X").has_value());
    CHECK(!EdgeColor::parse("h:q=").has_value());
}
