#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hept/machine.hpp"

namespace hept {

enum class Role {
    Root,
    RootHalt,
    BorderL,
    BorderR,
    BorderRChordStart,
    BorderRExec,
    Inside,
    ChordPass,
    ChordExec,
    TransitSignal,
    SilverEmit,
    SilverTransit,
    SilverChordCross,
    CornerLeftM,
    CornerRightN,
    BorderSilverEnd,
};

const char* role_name(Role r);
std::optional<Role> role_from_name(std::string_view name);
bool border_role(Role r);  // roles that may carry blank edges

// Color of one tile edge.  Colors are symmetric: a shared edge is valid when
// both sides carry the same color.
//
// Tags:  blank, the two side borders, the silver channel, vertical tree
// edges, lateral level edges, and the diagonal edge between a cell and the
// leftmost son of its right neighbor ("in").
//
// Vertical edges carry a slot.  Son0..Son2 are the plain father/son links;
// Halt marks the descent of a computation that just reached a halt state;
// Stay(q) keeps the head on the same chord across one level (S move);
// Move(q, d) is the descent edge right above a turn, carrying the state that
// will travel in direction d on the next level.  Head states travel on
// lateral edges only; the Stay/Move slots pin the vertical hand-over without
// a lateral payload.
struct EdgeColor {
    enum class Tag { Blank, BorderL, BorderR, Silver, TreeV, LevelH, Inside };
    enum class Slot { Son0, Son1, Son2, Halt, Stay, Move };
    enum class Payload { None, Sym, Head, Flow };

    Tag tag = Tag::Blank;
    Slot slot = Slot::Son0;       // TreeV only
    Payload payload = Payload::None;
    std::string sym;              // payload Sym
    std::string state;            // slot Stay/Move, payload Head
    char dir = 0;                 // 'L'/'R'/'S': slot Move, payload Head/Flow

    static EdgeColor blank() { return {}; }
    static EdgeColor border_l();
    static EdgeColor border_r();
    static EdgeColor inside();
    static EdgeColor level_h();
    static EdgeColor silver();
    static EdgeColor flow(char d);
    static EdgeColor head(std::string q, char d);
    static EdgeColor tree(int slot);
    static EdgeColor tree_sym(int slot, std::string s);
    static EdgeColor tree_halt(std::string s);
    static EdgeColor tree_stay(std::string q, std::string s);
    static EdgeColor tree_move(std::string q, char d, std::string s);

    bool is_blank() const { return tag == Tag::Blank; }
    std::string token() const;
    static std::optional<EdgeColor> parse(std::string_view tok);

    bool operator==(const EdgeColor& o) const = default;
    bool operator<(const EdgeColor& o) const;
};

struct TilePrototype {
    std::string id;
    Role role = Role::Inside;
    std::array<EdgeColor, 7> edges{};
};

// The compiled set T plus the distinguished all-blank tile b (not in T).
struct TileSet {
    std::vector<TilePrototype> prototypes;
    TilePrototype blank;

    const TilePrototype* find(std::string_view id) const;
    std::optional<int> index_of(std::string_view id) const;
};

// Emits the finite tile set realizing the machine's computations: harp
// skeleton, chord and signal tiles per rule, and the silver closure tiles.
// The result depends only on the machine's states, alphabet and rules, never
// on how long it runs.
TileSet compile(const TuringMachine& tm);

// Predicted prototype counts per role; the exact formula the compiler
// implements (cross-checked against enumeration in the tests).
std::map<Role, size_t> prototile_census(const TuringMachine& tm);

// Structural checks: unique ids, blank tile shape, the blank-edge rule
// (non-border roles carry no blank edge), tag/payload pairing.  Returns the
// violations instead of throwing.
std::vector<std::string> validate_tileset(const TileSet& ts);

struct FormatError : std::runtime_error {
    FormatError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
    int line;
};

std::string serialize_tileset(const TileSet& ts);
TileSet parse_tileset(const std::string& text);

}  // namespace hept
