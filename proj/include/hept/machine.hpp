#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hept {

enum class Move { L, R, S };

struct Rule {
    int next_state = -1;
    int write_symbol = -1;
    Move move = Move::S;
};

// Deterministic machine on a semi-infinite tape, run from an empty tape with
// the head on cell 0.  The transition table is total on non-halt states and
// undefined on halt states.
class TuringMachine {
public:
    std::vector<std::string> states;
    std::vector<std::string> symbols;
    std::vector<bool> halt;  // per state
    int start_state = -1;
    int blank_symbol = -1;
    // rules[q][s]; rows for halt states stay empty
    std::vector<std::vector<Rule>> rules;

    int state_id(const std::string& name) const;
    int symbol_id(const std::string& name) const;
    bool is_halt(int q) const { return halt[q]; }
    const Rule& rule(int q, int s) const;
    int working_states() const;
    size_t rule_count() const;
};

struct MachineParseError : std::runtime_error {
    MachineParseError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
    int line;
};

// Line-based format:
//   states: a b h
//   alphabet: _ 1
//   blank: _
//   start: a
//   halts: h
//   rule: a _ -> b 1 R
// '#' starts a comment.  Names are [A-Za-z0-9_]+.
TuringMachine parse_machine(const std::string& text);

enum class RunStatus { Halted, OutOfBudget, LeftEdgeViolation };

// Time-indexed record of a run: configurations 0..T where T is the halting
// time, the step budget, or the step of the left-edge violation.
struct Trace {
    RunStatus status = RunStatus::OutOfBudget;
    int halt_time = -1;        // valid when status == Halted
    int violation_step = -1;   // valid when status == LeftEdgeViolation
    std::vector<int> state_at;  // per time
    std::vector<int> head_at;   // per time
    std::vector<std::vector<int>> tape_at;  // per time; cells beyond the vector are blank
    int blank_symbol = -1;

    int times() const { return static_cast<int>(state_at.size()); }
    int symbol(int time, int cell) const;
    int max_excursion() const;
};

Trace run(const TuringMachine& tm, int max_steps);

// Symbol of one cell at each recorded time.
std::vector<int> cell_history(const Trace& trace, int cell);

}  // namespace hept
