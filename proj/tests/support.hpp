#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "hept/machine.hpp"

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline std::string fixture_text(const std::string& name) {
    return read_file(std::string(FIXTURES_DIR) + "/" + name);
}

inline hept::TuringMachine fixture_machine(const std::string& name) {
    return hept::parse_machine(fixture_text(name));
}
