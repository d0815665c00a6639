#include "hept/machine.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace hept {

int TuringMachine::state_id(const std::string& name) const {
    const auto it = std::find(states.begin(), states.end(), name);
    return it == states.end() ? -1 : static_cast<int>(it - states.begin());
}

int TuringMachine::symbol_id(const std::string& name) const {
    const auto it = std::find(symbols.begin(), symbols.end(), name);
    return it == symbols.end() ? -1 : static_cast<int>(it - symbols.begin());
}

const Rule& TuringMachine::rule(int q, int s) const {
    if (q < 0 || q >= static_cast<int>(states.size()) || halt[q])
        throw std::invalid_argument("rule: not a working state");
    return rules[q][s];
}

int TuringMachine::working_states() const {
    int n = 0;
    for (bool h : halt)
        if (!h)
            ++n;
    return n;
}

size_t TuringMachine::rule_count() const {
    return static_cast<size_t>(working_states()) * symbols.size();
}

namespace {

bool valid_name(const std::string& s) {
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            return false;
    return true;
}

std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok)
        out.push_back(tok);
    return out;
}

}  // namespace

TuringMachine parse_machine(const std::string& text) {
    TuringMachine tm;
    std::string blank_name, start_name;
    std::vector<std::string> halt_names;
    bool saw_states = false, saw_alphabet = false, saw_blank = false, saw_start = false,
         saw_halts = false;
    struct PendingRule {
        int line;
        std::string q, s, q2, s2, move;
    };
    std::vector<PendingRule> pending;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const size_t hash = raw.find('#');
        if (hash != std::string::npos)
            raw.erase(hash);
        auto toks = tokens_of(raw);
        if (toks.empty())
            continue;
        const std::string key = toks[0];
        toks.erase(toks.begin());
        if (key == "states:") {
            saw_states = true;
            for (const auto& name : toks) {
                if (!valid_name(name))
                    throw MachineParseError(lineno, "invalid state name '" + name + "'");
                if (tm.state_id(name) >= 0)
                    throw MachineParseError(lineno, "duplicate state '" + name + "'");
                tm.states.push_back(name);
            }
        } else if (key == "alphabet:") {
            saw_alphabet = true;
            for (const auto& name : toks) {
                if (!valid_name(name))
                    throw MachineParseError(lineno, "invalid symbol name '" + name + "'");
                if (tm.symbol_id(name) >= 0)
                    throw MachineParseError(lineno, "duplicate symbol '" + name + "'");
                tm.symbols.push_back(name);
            }
        } else if (key == "blank:") {
            if (toks.size() != 1)
                throw MachineParseError(lineno, "blank: expects one symbol");
            saw_blank = true;
            blank_name = toks[0];
        } else if (key == "start:") {
            if (toks.size() != 1)
                throw MachineParseError(lineno, "start: expects one state");
            saw_start = true;
            start_name = toks[0];
        } else if (key == "halts:") {
            saw_halts = true;
            halt_names = toks;
        } else if (key == "rule:") {
            if (toks.size() != 6 || toks[2] != "->")
                throw MachineParseError(lineno, "rule: expects '<q> <s> -> <q'> <s'> <L|R|S>'");
            pending.push_back({lineno, toks[0], toks[1], toks[3], toks[4], toks[5]});
        } else {
            throw MachineParseError(lineno, "unknown directive '" + key + "'");
        }
    }

    if (!saw_states)
        throw MachineParseError(lineno, "missing states: line");
    if (!saw_alphabet)
        throw MachineParseError(lineno, "missing alphabet: line");
    if (!saw_blank)
        throw MachineParseError(lineno, "missing blank: line");
    if (!saw_start)
        throw MachineParseError(lineno, "missing start: line");
    if (!saw_halts)
        throw MachineParseError(lineno, "missing halts: line");
    if (tm.states.empty())
        throw MachineParseError(0, "no states declared");
    if (tm.symbols.empty())
        throw MachineParseError(0, "no symbols declared");

    tm.blank_symbol = tm.symbol_id(blank_name);
    if (tm.blank_symbol < 0)
        throw MachineParseError(0, "blank symbol '" + blank_name + "' not in alphabet");
    tm.start_state = tm.state_id(start_name);
    if (tm.start_state < 0)
        throw MachineParseError(0, "start state '" + start_name + "' unknown");
    tm.halt.assign(tm.states.size(), false);
    for (const auto& name : halt_names) {
        const int q = tm.state_id(name);
        if (q < 0)
            throw MachineParseError(0, "halt state '" + name + "' unknown");
        tm.halt[q] = true;
    }

    tm.rules.assign(tm.states.size(), {});
    std::vector<std::vector<bool>> have(tm.states.size(),
                                        std::vector<bool>(tm.symbols.size(), false));
    for (size_t q = 0; q < tm.states.size(); ++q)
        if (!tm.halt[q])
            tm.rules[q].assign(tm.symbols.size(), Rule{});

    for (const auto& pr : pending) {
        const int q = tm.state_id(pr.q);
        if (q < 0)
            throw MachineParseError(pr.line, "unknown state '" + pr.q + "'");
        if (tm.halt[q])
            throw MachineParseError(pr.line, "rule from halt state '" + pr.q + "'");
        const int s = tm.symbol_id(pr.s);
        if (s < 0)
            throw MachineParseError(pr.line, "unknown symbol '" + pr.s + "'");
        const int q2 = tm.state_id(pr.q2);
        if (q2 < 0)
            throw MachineParseError(pr.line, "unknown state '" + pr.q2 + "'");
        const int s2 = tm.symbol_id(pr.s2);
        if (s2 < 0)
            throw MachineParseError(pr.line, "unknown symbol '" + pr.s2 + "'");
        Move mv;
        if (pr.move == "L")
            mv = Move::L;
        else if (pr.move == "R")
            mv = Move::R;
        else if (pr.move == "S")
            mv = Move::S;
        else
            throw MachineParseError(pr.line, "move must be L, R or S");
        if (have[q][s])
            throw MachineParseError(pr.line, "duplicate rule for (" + pr.q + ", " + pr.s + ")");
        have[q][s] = true;
        tm.rules[q][s] = Rule{q2, s2, mv};
    }

    for (size_t q = 0; q < tm.states.size(); ++q) {
        if (tm.halt[q])
            continue;
        for (size_t s = 0; s < tm.symbols.size(); ++s)
            if (!have[q][s])
                throw MachineParseError(
                    0, "non-total transition table: no rule for (" + tm.states[q] + ", " +
                           tm.symbols[s] + ")");
    }
    return tm;
}

int Trace::symbol(int time, int cell) const {
    if (time < 0 || time >= times() || cell < 0)
        throw std::invalid_argument("trace symbol: out of range");
    const auto& tape = tape_at[time];
    if (cell >= static_cast<int>(tape.size()))
        return blank_symbol;
    return tape[cell];
}

int Trace::max_excursion() const {
    int m = 0;
    for (int h : head_at)
        m = std::max(m, h);
    return m;
}

Trace run(const TuringMachine& tm, int max_steps) {
    if (max_steps < 0)
        throw std::invalid_argument("run: negative step budget");
    Trace tr;
    tr.blank_symbol = tm.blank_symbol;

    int q = tm.start_state;
    int head = 0;
    std::vector<int> tape;

    auto record = [&]() {
        tr.state_at.push_back(q);
        tr.head_at.push_back(head);
        tr.tape_at.push_back(tape);
    };

    record();
    for (int step = 0; step < max_steps; ++step) {
        if (tm.is_halt(q)) {
            tr.status = RunStatus::Halted;
            tr.halt_time = step;
            return tr;
        }
        if (head >= static_cast<int>(tape.size()))
            tape.resize(head + 1, tm.blank_symbol);
        const Rule& r = tm.rule(q, tape[head]);
        if (r.move == Move::L && head == 0) {
            tr.status = RunStatus::LeftEdgeViolation;
            tr.violation_step = step;
            return tr;
        }
        tape[head] = r.write_symbol;
        q = r.next_state;
        head += r.move == Move::L ? -1 : (r.move == Move::R ? 1 : 0);
        record();
    }
    if (tm.is_halt(q)) {
        tr.status = RunStatus::Halted;
        tr.halt_time = max_steps;
    } else {
        tr.status = RunStatus::OutOfBudget;
    }
    return tr;
}

std::vector<int> cell_history(const Trace& trace, int cell) {
    std::vector<int> out;
    out.reserve(trace.times());
    for (int t = 0; t < trace.times(); ++t)
        out.push_back(trace.symbol(t, cell));
    return out;
}

}  // namespace hept
