#include "hept/harp.hpp"

#include <algorithm>
#include <sstream>

namespace hept {

std::string serialize_config(const Configuration& cfg) {
    std::ostringstream out;
    out << "config v1\n";
    out << "tileset " << (cfg.tileset_ref.empty() ? "-" : cfg.tileset_ref) << "\n";
    for (const auto& [addr, pl] : cfg.cells)
        out << "cell " << addr.to_string() << " tile=" << pl.tile << " rot=" << pl.rot << "\n";
    return out.str();
}

Configuration parse_config(const std::string& text) {
    Configuration cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool saw_header = false, saw_tileset = false;
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
            if (key != "config" || ver != "v1")
                throw FormatError(lineno, "expected 'config v1' header");
            saw_header = true;
            continue;
        }
        if (key == "tileset") {
            std::string ref;
            if (!(ls >> ref))
                throw FormatError(lineno, "tileset line without reference");
            cfg.tileset_ref = ref == "-" ? "" : ref;
            saw_tileset = true;
            continue;
        }
        if (key != "cell")
            throw FormatError(lineno, "expected 'cell' line, got '" + key + "'");
        std::string addr_s, tile_kv, rot_kv;
        if (!(ls >> addr_s >> tile_kv >> rot_kv))
            throw FormatError(lineno, "cell line needs '<address> tile=<id> rot=<r>'");
        const auto addr = TileAddress::parse(addr_s);
        if (!addr)
            throw FormatError(lineno, "bad address '" + addr_s + "'");
        if (tile_kv.substr(0, 5) != "tile=" || rot_kv.substr(0, 4) != "rot=")
            throw FormatError(lineno, "malformed cell line");
        Placement pl;
        pl.tile = tile_kv.substr(5);
        try {
            pl.rot = std::stoi(rot_kv.substr(4));
        } catch (...) {
            throw FormatError(lineno, "bad rotation");
        }
        if (pl.rot < 0 || pl.rot > 6)
            throw FormatError(lineno, "rotation out of range 0..6");
        if (cfg.cells.count(*addr))
            throw FormatError(lineno, "cell " + addr_s + " placed twice");
        cfg.cells[*addr] = std::move(pl);
    }
    if (!saw_header)
        throw FormatError(lineno, "missing 'config v1' header");
    if (!saw_tileset)
        throw FormatError(lineno, "missing 'tileset' line");
    return cfg;
}

TileAddress chord_of(int k, int n) {
    if (k < 0 || n < k)
        throw std::invalid_argument("chord_of: chord " + std::to_string(k) +
                                    " does not exist above level " + std::to_string(k));
    std::vector<uint8_t> path;
    path.reserve(n);
    for (int i = 0; i < k; ++i)
        path.push_back(2);
    for (int i = k; i < n; ++i)
        path.push_back(1);
    return TileAddress(0, std::move(path));
}

Itinerary route_signal(const Trace& trace) {
    Itinerary it;
    const int times = trace.times();
    for (int n = 0; n < times; ++n) {
        ItineraryStep step;
        step.exec = chord_of(trace.head_at[n], n);
        if (n > 0 && trace.head_at[n] != trace.head_at[n - 1]) {
            const int from = trace.head_at[n - 1];
            const int to = trace.head_at[n];
            const uint64_t r0 = chord_of(from, n).rank();
            const uint64_t r1 = chord_of(to, n).rank();
            uint64_t r = r0;
            while (r != r1) {
                r = to > from ? r + 1 : r - 1;
                step.walked.push_back(address_at(0, n, r));
            }
        }
        it.steps.push_back(std::move(step));
    }
    return it;
}

namespace {

char arrival_of(Move prev) {
    switch (prev) {
        case Move::S: return 'a';
        case Move::R: return 'l';  // moving right arrives on the left edge
        case Move::L: return 'r';
    }
    return 'a';
}

std::string position_suffix(const TileAddress& a) {
    if (a.kind() == NodeKind::B)
        return "b";
    return a.path().back() == 1 ? "w1" : "w2";
}

}  // namespace

HarpResult build_harp(const TuringMachine& tm, int max_steps) {
    HarpResult res;
    const Trace trace = run(tm, max_steps);
    if (trace.status == RunStatus::LeftEdgeViolation) {
        res.status = HarpStatus::LeftEdgeViolation;
        res.violation_step = trace.violation_step;
        return res;
    }
    if (trace.status != RunStatus::Halted) {
        res.status = HarpStatus::NotHaltedWithinBudget;
        return res;
    }

    const int t = trace.halt_time;
    res.status = HarpStatus::Built;
    res.halt_time = t;
    res.itinerary = route_signal(trace);
    auto& cells = res.config.cells;

    if (t == 0) {
        cells[TileAddress::sector_root(0)] = Placement{"root-halt", 0};
        return res;
    }

    cells[TileAddress::sector_root(0)] = Placement{"root", 0};

    // Executed moves per step; step n runs rule(state_at[n], symbol under head).
    auto move_of = [&](int n) {
        return tm.rule(trace.state_at[n], trace.symbol(n, trace.head_at[n])).move;
    };

    for (int n = 1; n <= t; ++n) {
        const uint64_t width = level_size(n);
        // Chord columns of this level by rank.
        std::map<uint64_t, int> chord_at;
        for (int k = 0; k <= n; ++k)
            chord_at[chord_of(k, n).rank()] = k;

        const Move prev_move = move_of(n - 1);
        const std::string& cur_state = tm.states[trace.state_at[n]];

        if (n == t) {
            // Silver row: the emit tile sits below the execution that entered
            // the halt state; everything else carries the flow to the corners.
            const int emit_col = trace.head_at[t - 1];
            const uint64_t emit_rank = chord_of(emit_col, t).rank();
            for (uint64_t r = 0; r < width; ++r) {
                const TileAddress addr = address_at(0, t, r);
                std::string id;
                if (r == 0) {
                    id = "corner-m";
                } else if (r == width - 1) {
                    id = "corner-n";
                } else if (auto it = chord_at.find(r); it != chord_at.end()) {
                    const std::string& sym = tm.symbols[trace.symbol(t, it->second)];
                    if (it->second == emit_col)
                        id = "silver-emit." + sym;
                    else
                        id = std::string("silver-cross.") + (r < emit_rank ? 'L' : 'R') + "." + sym;
                } else {
                    id = std::string("silver-transit.") + position_suffix(addr) + "." +
                         (r < emit_rank ? 'L' : 'R');
                }
                cells[addr] = Placement{id, 0};
            }
            break;
        }

        // Computation row n: the signal descends from level n-1 on chord
        // p(n-1), turns, walks to chord p(n) and executes there.
        const int exec_col = trace.head_at[n];
        const uint64_t exec_rank = chord_of(exec_col, n).rank();
        uint64_t turn_rank = exec_rank;
        bool has_turn = prev_move != Move::S;
        if (has_turn)
            turn_rank = chord_of(trace.head_at[n - 1], n).rank();
        const uint64_t walk_lo = std::min(turn_rank, exec_rank);
        const uint64_t walk_hi = std::max(turn_rank, exec_rank);

        for (uint64_t r = 0; r < width; ++r) {
            const TileAddress addr = address_at(0, n, r);
            std::string id;
            if (r == 0) {
                id = "border-l";
            } else if (r == width - 1) {
                if (exec_col == n)
                    id = "border-r-exec." + cur_state;
                else
                    id = "border-r-start";
            } else if (auto it = chord_at.find(r); it != chord_at.end()) {
                const std::string& sym = tm.symbols[trace.symbol(n, it->second)];
                if (it->second == exec_col) {
                    id = "exec." + cur_state + "." + sym + "." + arrival_of(prev_move);
                } else if (has_turn && it->second == trace.head_at[n - 1]) {
                    id = "turn." + cur_state + "." + (prev_move == Move::R ? std::string("R") : std::string("L")) +
                         "." + sym;
                } else {
                    id = "pass." + sym;
                }
            } else if (has_turn && r > walk_lo && r < walk_hi) {
                id = "transit." + cur_state + "." + (prev_move == Move::R ? 'R' : 'L') + "." +
                     position_suffix(addr);
            } else {
                id = "inside." + position_suffix(addr);
            }
            cells[addr] = Placement{id, 0};
        }
    }
    return res;
}

}  // namespace hept
