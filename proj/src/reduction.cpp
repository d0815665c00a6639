#include "hept/reduction.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

#include "hept/heptagrid.hpp"

namespace hept {

const char* role_name(Role r) {
    switch (r) {
        case Role::Root: return "root";
        case Role::RootHalt: return "rootHalt";
        case Role::BorderL: return "borderL";
        case Role::BorderR: return "borderR";
        case Role::BorderRChordStart: return "borderRChordStart";
        case Role::BorderRExec: return "borderRExec";
        case Role::Inside: return "inside";
        case Role::ChordPass: return "chordPass";
        case Role::ChordExec: return "chordExec";
        case Role::TransitSignal: return "transitSignal";
        case Role::SilverEmit: return "silverEmit_i";
        case Role::SilverTransit: return "silverTransit";
        case Role::SilverChordCross: return "silverChordCross";
        case Role::CornerLeftM: return "cornerLeft_m";
        case Role::CornerRightN: return "cornerRight_n";
        case Role::BorderSilverEnd: return "borderSilverEnd";
    }
    return "?";
}

std::optional<Role> role_from_name(std::string_view name) {
    for (int i = 0; i <= static_cast<int>(Role::BorderSilverEnd); ++i) {
        const Role r = static_cast<Role>(i);
        if (role_name(r) == name)
            return r;
    }
    return std::nullopt;
}

bool border_role(Role r) {
    switch (r) {
        case Role::Inside:
        case Role::ChordPass:
        case Role::ChordExec:
        case Role::TransitSignal:
            return false;
        default:
            return true;
    }
}

namespace {
EdgeColor tagged(EdgeColor::Tag t) {
    EdgeColor c;
    c.tag = t;
    return c;
}
}  // namespace

EdgeColor EdgeColor::border_l() { return tagged(Tag::BorderL); }
EdgeColor EdgeColor::border_r() { return tagged(Tag::BorderR); }
EdgeColor EdgeColor::inside() { return tagged(Tag::Inside); }
EdgeColor EdgeColor::level_h() { return tagged(Tag::LevelH); }
EdgeColor EdgeColor::silver() { return tagged(Tag::Silver); }

EdgeColor EdgeColor::flow(char d) {
    EdgeColor c = tagged(Tag::Silver);
    c.payload = Payload::Flow;
    c.dir = d;
    return c;
}

EdgeColor EdgeColor::head(std::string q, char d) {
    EdgeColor c = tagged(Tag::LevelH);
    c.payload = Payload::Head;
    c.state = std::move(q);
    c.dir = d;
    return c;
}

EdgeColor EdgeColor::tree(int slot) {
    EdgeColor c = tagged(Tag::TreeV);
    c.slot = static_cast<Slot>(slot);
    return c;
}

EdgeColor EdgeColor::tree_sym(int slot, std::string s) {
    EdgeColor c = tree(slot);
    c.payload = Payload::Sym;
    c.sym = std::move(s);
    return c;
}

EdgeColor EdgeColor::tree_halt(std::string s) {
    EdgeColor c = tagged(Tag::TreeV);
    c.slot = Slot::Halt;
    c.payload = Payload::Sym;
    c.sym = std::move(s);
    return c;
}

EdgeColor EdgeColor::tree_stay(std::string q, std::string s) {
    EdgeColor c = tagged(Tag::TreeV);
    c.slot = Slot::Stay;
    c.state = std::move(q);
    c.payload = Payload::Sym;
    c.sym = std::move(s);
    return c;
}

EdgeColor EdgeColor::tree_move(std::string q, char d, std::string s) {
    EdgeColor c = tagged(Tag::TreeV);
    c.slot = Slot::Move;
    c.state = std::move(q);
    c.dir = d;
    c.payload = Payload::Sym;
    c.sym = std::move(s);
    return c;
}

bool EdgeColor::operator<(const EdgeColor& o) const {
    return std::tie(tag, slot, payload, sym, state, dir) <
           std::tie(o.tag, o.slot, o.payload, o.sym, o.state, o.dir);
}

std::string EdgeColor::token() const {
    std::string base;
    switch (tag) {
        case Tag::Blank: return "blank";
        case Tag::BorderL: return "bl";
        case Tag::BorderR: return "br";
        case Tag::Inside: return "in";
        case Tag::Silver:
            if (payload == Payload::Flow)
                return std::string("ag:flow=") + dir;
            return "ag";
        case Tag::LevelH:
            if (payload == Payload::Head)
                return "h:q=" + state + ",d=" + dir;
            return "h";
        case Tag::TreeV:
            switch (slot) {
                case Slot::Son0: base = "v0"; break;
                case Slot::Son1: base = "v1"; break;
                case Slot::Son2: base = "v2"; break;
                case Slot::Halt: base = "vhalt"; break;
                case Slot::Stay: base = "vstay." + state; break;
                case Slot::Move: base = "vmove." + state + "." + dir; break;
            }
            if (payload == Payload::Sym)
                base += ":sym=" + sym;
            return base;
    }
    return base;
}

std::optional<EdgeColor> EdgeColor::parse(std::string_view tok) {
    std::string_view base = tok;
    std::string_view args;
    if (const size_t colon = tok.find(':'); colon != std::string_view::npos) {
        base = tok.substr(0, colon);
        args = tok.substr(colon + 1);
    }
    EdgeColor c;
    if (base == "blank") {
        c.tag = Tag::Blank;
    } else if (base == "bl") {
        c.tag = Tag::BorderL;
    } else if (base == "br") {
        c.tag = Tag::BorderR;
    } else if (base == "in") {
        c.tag = Tag::Inside;
    } else if (base == "ag") {
        c.tag = Tag::Silver;
        if (!args.empty()) {
            if (args.substr(0, 5) != "flow=" || args.size() != 6)
                return std::nullopt;
            c.payload = Payload::Flow;
            c.dir = args[5];
            if (c.dir != 'L' && c.dir != 'R')
                return std::nullopt;
        }
        return c;
    } else if (base == "h") {
        c.tag = Tag::LevelH;
        if (!args.empty()) {
            if (args.substr(0, 2) != "q=")
                return std::nullopt;
            const size_t comma = args.find(",d=");
            if (comma == std::string_view::npos || comma + 4 != args.size())
                return std::nullopt;
            c.payload = Payload::Head;
            c.state = std::string(args.substr(2, comma - 2));
            c.dir = args[comma + 3];
            if (c.state.empty() || (c.dir != 'L' && c.dir != 'R' && c.dir != 'S'))
                return std::nullopt;
        }
        return c;
    } else if (!base.empty() && base[0] == 'v') {
        c.tag = Tag::TreeV;
        const std::string_view slot = base.substr(1);
        if (slot == "0") {
            c.slot = Slot::Son0;
        } else if (slot == "1") {
            c.slot = Slot::Son1;
        } else if (slot == "2") {
            c.slot = Slot::Son2;
        } else if (slot == "halt") {
            c.slot = Slot::Halt;
        } else if (slot.substr(0, 5) == "stay.") {
            c.slot = Slot::Stay;
            c.state = std::string(slot.substr(5));
            if (c.state.empty())
                return std::nullopt;
        } else if (slot.substr(0, 5) == "move.") {
            c.slot = Slot::Move;
            const std::string_view rest = slot.substr(5);
            const size_t dot = rest.rfind('.');
            if (dot == std::string_view::npos || dot + 2 != rest.size())
                return std::nullopt;
            c.state = std::string(rest.substr(0, dot));
            c.dir = rest[dot + 1];
            if (c.state.empty() || (c.dir != 'L' && c.dir != 'R'))
                return std::nullopt;
        } else {
            return std::nullopt;
        }
        if (!args.empty()) {
            if (args.substr(0, 4) != "sym=")
                return std::nullopt;
            c.payload = Payload::Sym;
            c.sym = std::string(args.substr(4));
            if (c.sym.empty())
                return std::nullopt;
        }
        return c;
    } else {
        return std::nullopt;
    }
    if (!args.empty())
        return std::nullopt;
    return c;
}

const TilePrototype* TileSet::find(std::string_view id) const {
    for (const auto& p : prototypes)
        if (p.id == id)
            return &p;
    return nullptr;
}

std::optional<int> TileSet::index_of(std::string_view id) const {
    for (size_t i = 0; i < prototypes.size(); ++i)
        if (prototypes[i].id == id)
            return static_cast<int>(i);
    return std::nullopt;
}

namespace {

// Assembles a 7-edge tuple through the slot layout of a node kind; every
// slot the kind owns must be set exactly once.
class ProtoBuilder {
public:
    explicit ProtoBuilder(NodeKind k) : kind_(k) {}

    ProtoBuilder& set(CellSlot s, EdgeColor c) {
        const int e = slot_edge(kind_, s);
        if (e < 0)
            throw std::logic_error("proto builder: slot not present on this kind");
        if (set_[e])
            throw std::logic_error("proto builder: slot set twice");
        set_[e] = true;
        edges_[e] = std::move(c);
        return *this;
    }

    std::array<EdgeColor, 7> build() const {
        for (bool b : set_)
            if (!b)
                throw std::logic_error("proto builder: slot left unset");
        return edges_;
    }

private:
    NodeKind kind_;
    std::array<EdgeColor, 7> edges_{};
    std::array<bool, 7> set_{};
};

char move_char(Move m) { return m == Move::L ? 'L' : (m == Move::R ? 'R' : 'S'); }

// Color of the vertical edge below an execution: plain symbol hand-off for a
// lateral move, Stay for an S move, Halt when the rule enters a halt state.
EdgeColor descent_color(const TuringMachine& tm, const Rule& r) {
    const std::string& w = tm.symbols[r.write_symbol];
    if (tm.is_halt(r.next_state))
        return EdgeColor::tree_halt(w);
    const std::string& q = tm.states[r.next_state];
    if (r.move == Move::S)
        return EdgeColor::tree_stay(q, w);
    return EdgeColor::tree_move(q, move_char(r.move), w);
}

// What the rule table can actually hand over between levels.  Signal tiles
// are emitted per entry so that every color has both of its sides in the set
// and the counts depend only on the table, never on a run.
struct RuleFeatures {
    std::set<int> enters_r;                         // states some rule enters moving R
    std::set<int> enters_l;                         // ... moving L
    std::set<std::pair<int, int>> stays;            // (state, written symbol) of S rules
    std::set<std::tuple<int, char, int>> turns;     // (state, dir, written symbol), dir L/R
    std::set<int> halt_writes;                      // symbols written when entering a halt state
};

RuleFeatures rule_features(const TuringMachine& tm) {
    RuleFeatures f;
    for (size_t q = 0; q < tm.states.size(); ++q) {
        if (tm.halt[q])
            continue;
        for (size_t s = 0; s < tm.symbols.size(); ++s) {
            const Rule& r = tm.rules[q][s];
            if (tm.is_halt(r.next_state)) {
                f.halt_writes.insert(r.write_symbol);
                continue;
            }
            if (r.move == Move::S) {
                f.stays.insert({r.next_state, r.write_symbol});
            } else {
                (r.move == Move::R ? f.enters_r : f.enters_l).insert(r.next_state);
                f.turns.insert({r.next_state, move_char(r.move), r.write_symbol});
            }
        }
    }
    return f;
}

}  // namespace

TileSet compile(const TuringMachine& tm) {
    TileSet ts;
    const std::string blank_sym = tm.symbols[tm.blank_symbol];
    const RuleFeatures feat = rule_features(tm);
    std::vector<int> working;
    for (size_t q = 0; q < tm.states.size(); ++q)
        if (!tm.halt[q])
            working.push_back(static_cast<int>(q));

    auto add = [&](std::string id, Role role, std::array<EdgeColor, 7> edges) {
        ts.prototypes.push_back(TilePrototype{std::move(id), role, std::move(edges)});
    };

    const EdgeColor bl = EdgeColor::border_l();
    const EdgeColor br = EdgeColor::border_r();
    const EdgeColor in = EdgeColor::inside();
    const EdgeColor lh = EdgeColor::level_h();
    const EdgeColor tv0 = EdgeColor::tree(0);
    const EdgeColor tv1 = EdgeColor::tree(1);
    const EdgeColor tv2 = EdgeColor::tree(2);

    if (tm.is_halt(tm.start_state)) {
        add("root-halt", Role::RootHalt,
            ProtoBuilder(NodeKind::W)
                .set(CellSlot::Father, EdgeColor::blank())
                .set(CellSlot::LatLeft, EdgeColor::blank())
                .set(CellSlot::LatRight, EdgeColor::blank())
                .set(CellSlot::Son0, EdgeColor::blank())
                .set(CellSlot::Son1, EdgeColor::blank())
                .set(CellSlot::Son2, EdgeColor::blank())
                .set(CellSlot::CoB, EdgeColor::blank())
                .build());
    } else {
        add("root", Role::Root,
            ProtoBuilder(NodeKind::W)
                .set(CellSlot::Father, EdgeColor::blank())
                .set(CellSlot::LatLeft, EdgeColor::blank())
                .set(CellSlot::LatRight, EdgeColor::blank())
                .set(CellSlot::Son0, bl)
                .set(CellSlot::Son1, descent_color(tm, tm.rule(tm.start_state, tm.blank_symbol)))
                .set(CellSlot::Son2, br)
                .set(CellSlot::CoB, EdgeColor::blank())
                .build());
    }

    add("border-l", Role::BorderL,
        ProtoBuilder(NodeKind::B)
            .set(CellSlot::Father, bl)
            .set(CellSlot::CoFather, EdgeColor::blank())
            .set(CellSlot::LatLeft, EdgeColor::blank())
            .set(CellSlot::LatRight, lh)
            .set(CellSlot::Son0, bl)
            .set(CellSlot::Son1, tv1)
            .set(CellSlot::CoB, in)
            .build());

    add("border-r-start", Role::BorderRChordStart,
        ProtoBuilder(NodeKind::W)
            .set(CellSlot::Father, br)
            .set(CellSlot::LatLeft, lh)
            .set(CellSlot::LatRight, EdgeColor::blank())
            .set(CellSlot::Son0, tv0)
            .set(CellSlot::Son1, EdgeColor::tree_sym(1, blank_sym))
            .set(CellSlot::Son2, br)
            .set(CellSlot::CoB, EdgeColor::blank())
            .build());

    for (int q : working) {
        if (!feat.enters_r.count(q))
            continue;  // the frame is only ever executed on arriving from the left
        add("border-r-exec." + tm.states[q], Role::BorderRExec,
            ProtoBuilder(NodeKind::W)
                .set(CellSlot::Father, br)
                .set(CellSlot::LatLeft, EdgeColor::head(tm.states[q], 'R'))
                .set(CellSlot::LatRight, EdgeColor::blank())
                .set(CellSlot::Son0, tv0)
                .set(CellSlot::Son1, descent_color(tm, tm.rule(q, tm.blank_symbol)))
                .set(CellSlot::Son2, br)
                .set(CellSlot::CoB, EdgeColor::blank())
                .build());
    }

    add("inside.b", Role::Inside,
        ProtoBuilder(NodeKind::B)
            .set(CellSlot::Father, tv0)
            .set(CellSlot::CoFather, in)
            .set(CellSlot::LatLeft, lh)
            .set(CellSlot::LatRight, lh)
            .set(CellSlot::Son0, tv0)
            .set(CellSlot::Son1, tv1)
            .set(CellSlot::CoB, in)
            .build());
    for (int up : {1, 2}) {
        add("inside.w" + std::to_string(up), Role::Inside,
            ProtoBuilder(NodeKind::W)
                .set(CellSlot::Father, EdgeColor::tree(up))
                .set(CellSlot::LatLeft, lh)
                .set(CellSlot::LatRight, lh)
                .set(CellSlot::Son0, tv0)
                .set(CellSlot::Son1, tv1)
                .set(CellSlot::Son2, tv2)
                .set(CellSlot::CoB, in)
                .build());
    }

    for (const auto& s : tm.symbols) {
        add("pass." + s, Role::ChordPass,
            ProtoBuilder(NodeKind::W)
                .set(CellSlot::Father, EdgeColor::tree_sym(1, s))
                .set(CellSlot::LatLeft, lh)
                .set(CellSlot::LatRight, lh)
                .set(CellSlot::Son0, tv0)
                .set(CellSlot::Son1, EdgeColor::tree_sym(1, s))
                .set(CellSlot::Son2, tv2)
                .set(CellSlot::CoB, in)
                .build());
    }

    // Turn tiles: the state arrives vertically (Move slot) and leaves on the
    // lateral edge toward the chord it must reach next.  One per hand-over
    // the rule table can produce.
    for (int q : working) {
        for (char d : {'L', 'R'}) {
            for (size_t s = 0; s < tm.symbols.size(); ++s) {
                if (!feat.turns.count({q, d, static_cast<int>(s)}))
                    continue;
                const std::string& sym = tm.symbols[s];
                ProtoBuilder b(NodeKind::W);
                b.set(CellSlot::Father, EdgeColor::tree_move(tm.states[q], d, sym))
                    .set(CellSlot::Son0, tv0)
                    .set(CellSlot::Son1, EdgeColor::tree_sym(1, sym))
                    .set(CellSlot::Son2, tv2)
                    .set(CellSlot::CoB, in);
                if (d == 'R') {
                    b.set(CellSlot::LatLeft, lh)
                        .set(CellSlot::LatRight, EdgeColor::head(tm.states[q], 'R'));
                } else {
                    b.set(CellSlot::LatLeft, EdgeColor::head(tm.states[q], 'L'))
                        .set(CellSlot::LatRight, lh);
                }
                add("turn." + tm.states[q] + "." + d + "." + sym, Role::TransitSignal, b.build());
            }
        }
    }

    // Pass-through transits: the state crosses a cell laterally.
    for (int q : working) {
        for (char d : {'L', 'R'}) {
            if (!(d == 'R' ? feat.enters_r : feat.enters_l).count(q))
                continue;
            const EdgeColor hd = EdgeColor::head(tm.states[q], d);
            const std::string stem = "transit." + tm.states[q] + "." + d + ".";
            add(stem + "b", Role::TransitSignal,
                ProtoBuilder(NodeKind::B)
                    .set(CellSlot::Father, tv0)
                    .set(CellSlot::CoFather, in)
                    .set(CellSlot::LatLeft, hd)
                    .set(CellSlot::LatRight, hd)
                    .set(CellSlot::Son0, tv0)
                    .set(CellSlot::Son1, tv1)
                    .set(CellSlot::CoB, in)
                    .build());
            for (int up : {1, 2}) {
                add(stem + "w" + std::to_string(up), Role::TransitSignal,
                    ProtoBuilder(NodeKind::W)
                        .set(CellSlot::Father, EdgeColor::tree(up))
                        .set(CellSlot::LatLeft, hd)
                        .set(CellSlot::LatRight, hd)
                        .set(CellSlot::Son0, tv0)
                        .set(CellSlot::Son1, tv1)
                        .set(CellSlot::Son2, tv2)
                        .set(CellSlot::CoB, in)
                        .build());
            }
        }
    }

    // Execution tiles: one per rule and reachable arrival side (from the
    // left after an R move, from the right after an L move, from above after
    // an S move that wrote the symbol now being read).
    for (int q : working) {
        for (size_t s = 0; s < tm.symbols.size(); ++s) {
            const Rule& r = tm.rule(q, static_cast<int>(s));
            for (char arr : {'l', 'r', 'a'}) {
                if (arr == 'l' && !feat.enters_r.count(q))
                    continue;
                if (arr == 'r' && !feat.enters_l.count(q))
                    continue;
                if (arr == 'a' && !feat.stays.count({q, static_cast<int>(s)}))
                    continue;
                ProtoBuilder b(NodeKind::W);
                b.set(CellSlot::Father,
                      arr == 'a' ? EdgeColor::tree_stay(tm.states[q], tm.symbols[s])
                                 : EdgeColor::tree_sym(1, tm.symbols[s]))
                    .set(CellSlot::LatLeft, arr == 'l' ? EdgeColor::head(tm.states[q], 'R') : lh)
                    .set(CellSlot::LatRight, arr == 'r' ? EdgeColor::head(tm.states[q], 'L') : lh)
                    .set(CellSlot::Son0, tv0)
                    .set(CellSlot::Son1, descent_color(tm, r))
                    .set(CellSlot::Son2, tv2)
                    .set(CellSlot::CoB, in);
                add("exec." + tm.states[q] + "." + tm.symbols[s] + "." + arr, Role::ChordExec,
                    b.build());
            }
        }
    }

    // Silver closure: the emit tile below the halting execution, chord caps,
    // transits and the two corners.
    for (size_t s = 0; s < tm.symbols.size(); ++s) {
        if (!feat.halt_writes.count(static_cast<int>(s)))
            continue;
        add("silver-emit." + tm.symbols[s], Role::SilverEmit,
            ProtoBuilder(NodeKind::W)
                .set(CellSlot::Father, EdgeColor::tree_halt(tm.symbols[s]))
                .set(CellSlot::LatLeft, EdgeColor::flow('L'))
                .set(CellSlot::LatRight, EdgeColor::flow('R'))
                .set(CellSlot::Son0, EdgeColor::blank())
                .set(CellSlot::Son1, EdgeColor::blank())
                .set(CellSlot::Son2, EdgeColor::blank())
                .set(CellSlot::CoB, EdgeColor::blank())
                .build());
    }
    for (char side : {'L', 'R'}) {
        for (const auto& s : tm.symbols) {
            add(std::string("silver-cross.") + side + "." + s, Role::SilverChordCross,
                ProtoBuilder(NodeKind::W)
                    .set(CellSlot::Father, EdgeColor::tree_sym(1, s))
                    .set(CellSlot::LatLeft, EdgeColor::flow(side))
                    .set(CellSlot::LatRight, EdgeColor::flow(side))
                    .set(CellSlot::Son0, EdgeColor::blank())
                    .set(CellSlot::Son1, EdgeColor::blank())
                    .set(CellSlot::Son2, EdgeColor::blank())
                    .set(CellSlot::CoB, EdgeColor::blank())
                    .build());
        }
    }
    for (char side : {'L', 'R'}) {
        add(std::string("silver-transit.b.") + side, Role::SilverTransit,
            ProtoBuilder(NodeKind::B)
                .set(CellSlot::Father, tv0)
                .set(CellSlot::CoFather, in)
                .set(CellSlot::LatLeft, EdgeColor::flow(side))
                .set(CellSlot::LatRight, EdgeColor::flow(side))
                .set(CellSlot::Son0, EdgeColor::blank())
                .set(CellSlot::Son1, EdgeColor::blank())
                .set(CellSlot::CoB, EdgeColor::blank())
                .build());
        for (int up : {1, 2}) {
            add(std::string("silver-transit.w") + std::to_string(up) + "." + side,
                Role::SilverTransit,
                ProtoBuilder(NodeKind::W)
                    .set(CellSlot::Father, EdgeColor::tree(up))
                    .set(CellSlot::LatLeft, EdgeColor::flow(side))
                    .set(CellSlot::LatRight, EdgeColor::flow(side))
                    .set(CellSlot::Son0, EdgeColor::blank())
                    .set(CellSlot::Son1, EdgeColor::blank())
                    .set(CellSlot::Son2, EdgeColor::blank())
                    .set(CellSlot::CoB, EdgeColor::blank())
                    .build());
        }
    }
    add("corner-m", Role::CornerLeftM,
        ProtoBuilder(NodeKind::B)
            .set(CellSlot::Father, bl)
            .set(CellSlot::CoFather, EdgeColor::blank())
            .set(CellSlot::LatLeft, EdgeColor::blank())
            .set(CellSlot::LatRight, EdgeColor::flow('L'))
            .set(CellSlot::Son0, EdgeColor::blank())
            .set(CellSlot::Son1, EdgeColor::blank())
            .set(CellSlot::CoB, EdgeColor::blank())
            .build());
    add("corner-n", Role::CornerRightN,
        ProtoBuilder(NodeKind::W)
            .set(CellSlot::Father, br)
            .set(CellSlot::LatLeft, EdgeColor::flow('R'))
            .set(CellSlot::LatRight, EdgeColor::blank())
            .set(CellSlot::Son0, EdgeColor::blank())
            .set(CellSlot::Son1, EdgeColor::blank())
            .set(CellSlot::Son2, EdgeColor::blank())
            .set(CellSlot::CoB, EdgeColor::blank())
            .build());

    ts.blank.id = "b";
    ts.blank.role = Role::Inside;
    ts.blank.edges.fill(EdgeColor::blank());
    return ts;
}

std::map<Role, size_t> prototile_census(const TuringMachine& tm) {
    // The formula the compiler implements.  All parameters come from the rule
    // table alone, so tile-set size never depends on how long a machine runs:
    //   m  = |alphabet|
    //   eR = states entered by some R rule, eL likewise for L
    //   st = distinct (state, written symbol) pairs of S rules
    //   tn = distinct (state, direction, written symbol) of L/R rules
    //   hw = distinct symbols written by halt-entering rules
    const size_t m = tm.symbols.size();
    const RuleFeatures f = rule_features(tm);
    const size_t eR = f.enters_r.size();
    const size_t eL = f.enters_l.size();

    std::map<Role, size_t> c;
    const bool halt_at_start = tm.is_halt(tm.start_state);
    c[Role::Root] = halt_at_start ? 0 : 1;
    c[Role::RootHalt] = halt_at_start ? 1 : 0;
    c[Role::BorderL] = 1;
    c[Role::BorderR] = 0;
    c[Role::BorderRChordStart] = 1;
    c[Role::BorderRExec] = eR;
    c[Role::Inside] = 3;
    c[Role::ChordPass] = m;
    c[Role::ChordExec] = m * (eR + eL) + f.stays.size();
    c[Role::TransitSignal] = f.turns.size() + 3 * (eR + eL);
    c[Role::SilverEmit] = f.halt_writes.size();
    c[Role::SilverChordCross] = 2 * m;
    c[Role::SilverTransit] = 6;
    c[Role::CornerLeftM] = 1;
    c[Role::CornerRightN] = 1;
    c[Role::BorderSilverEnd] = 0;
    return c;
}

std::vector<std::string> validate_tileset(const TileSet& ts) {
    std::vector<std::string> out;
    std::set<std::string> ids;
    auto check_color = [&](const std::string& id, int e, const EdgeColor& c) {
        using Tag = EdgeColor::Tag;
        using Payload = EdgeColor::Payload;
        if (c.payload == Payload::Sym && c.tag != Tag::TreeV)
            out.push_back("tile " + id + " edge " + std::to_string(e) +
                          ": symbol payload off a vertical edge");
        if (c.payload == Payload::Head && c.tag != Tag::LevelH)
            out.push_back("tile " + id + " edge " + std::to_string(e) +
                          ": head payload off a lateral edge");
        if (c.payload == Payload::Flow && c.tag != Tag::Silver)
            out.push_back("tile " + id + " edge " + std::to_string(e) +
                          ": flow payload off a silver edge");
        if (c.tag == Tag::Blank && c.payload != Payload::None)
            out.push_back("tile " + id + " edge " + std::to_string(e) +
                          ": blank edge with payload");
    };

    if (!ts.blank.id.empty() && ids.count(ts.blank.id))
        out.push_back("duplicate id " + ts.blank.id);
    ids.insert(ts.blank.id);
    for (const auto& c : ts.blank.edges)
        if (!c.is_blank()) {
            out.push_back("blank tile " + ts.blank.id + " has a non-blank edge");
            break;
        }

    for (const auto& p : ts.prototypes) {
        if (ids.count(p.id))
            out.push_back("duplicate id " + p.id);
        ids.insert(p.id);
        int blanks = 0;
        for (int e = 0; e < 7; ++e) {
            check_color(p.id, e, p.edges[e]);
            if (p.edges[e].is_blank())
                ++blanks;
        }
        if (!border_role(p.role) && blanks > 0)
            out.push_back("tile " + p.id + ": blank edge on non-border role " +
                          role_name(p.role));
    }
    return out;
}

std::string serialize_tileset(const TileSet& ts) {
    std::ostringstream out;
    out << "tileset v1\n";
    out << "blank " << ts.blank.id << "\n";
    for (const auto& p : ts.prototypes) {
        out << "tile " << p.id << " role=" << role_name(p.role) << " edges=";
        for (int e = 0; e < 7; ++e) {
            if (e)
                out << ",";
            out << p.edges[e].token();
        }
        out << "\n";
    }
    return out.str();
}

TileSet parse_tileset(const std::string& text) {
    TileSet ts;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool saw_header = false, saw_blank = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (!saw_header) {
            std::string ver;
            ls >> ver;
            if (key != "tileset" || ver != "v1")
                throw FormatError(lineno, "expected 'tileset v1' header");
            saw_header = true;
            continue;
        }
        if (key == "blank") {
            std::string id;
            if (!(ls >> id))
                throw FormatError(lineno, "blank line without id");
            ts.blank.id = id;
            ts.blank.edges.fill(EdgeColor::blank());
            saw_blank = true;
            continue;
        }
        if (key != "tile")
            throw FormatError(lineno, "expected 'tile' or 'blank', got '" + key + "'");
        std::string id, role_kv, edges_kv;
        if (!(ls >> id >> role_kv >> edges_kv))
            throw FormatError(lineno, "tile line needs '<id> role=<r> edges=<7 colors>'");
        if (role_kv.substr(0, 5) != "role=" || edges_kv.substr(0, 6) != "edges=")
            throw FormatError(lineno, "malformed tile line");
        const auto role = role_from_name(role_kv.substr(5));
        if (!role)
            throw FormatError(lineno, "unknown role '" + role_kv.substr(5) + "'");
        TilePrototype p;
        p.id = id;
        p.role = *role;
        const std::string edges = edges_kv.substr(6);
        // Split on commas, except that a ",d=..." belongs to the preceding
        // head token (its own grammar uses a comma).
        std::vector<std::string> toks;
        size_t pos = 0;
        while (pos <= edges.size()) {
            size_t comma = edges.find(',', pos);
            if (comma == std::string::npos)
                comma = edges.size();
            std::string piece = edges.substr(pos, comma - pos);
            if (piece.rfind("d=", 0) == 0 && !toks.empty())
                toks.back() += "," + piece;
            else
                toks.push_back(std::move(piece));
            pos = comma + 1;
        }
        if (toks.size() != 7)
            throw FormatError(lineno, "expected 7 edge colors");
        for (int e = 0; e < 7; ++e) {
            const auto c = EdgeColor::parse(toks[e]);
            if (!c)
                throw FormatError(lineno, "bad color token '" + toks[e] + "'");
            p.edges[e] = *c;
        }
        ts.prototypes.push_back(std::move(p));
    }
    if (!saw_header)
        throw FormatError(lineno, "missing 'tileset v1' header");
    if (!saw_blank)
        throw FormatError(lineno, "missing 'blank' line");
    return ts;
}

}  // namespace hept
