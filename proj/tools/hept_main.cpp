// Command-line front end: compile machines to tile sets, build and check
// harp configurations, search for finite tilings, render to SVG.
//
// Exit codes: 0 success / solution found, 1 violations or nothing found,
// 2 input error, 3 budget exhausted.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "hept/checker.hpp"
#include "hept/harp.hpp"
#include "hept/heptagrid.hpp"
#include "hept/machine.hpp"
#include "hept/reduction.hpp"
#include "hept/render.hpp"
#include "hept/search.hpp"

namespace {

constexpr const char* kVersion = "hept 1.0 (formats: machine v1, tileset v1, config v1)";

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << content;
}

std::string stem_of(const std::string& path) {
    const size_t slash = path.find_last_of('/');
    const std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
    const size_t dot = name.find_last_of('.');
    return dot == std::string::npos ? name : name.substr(0, dot);
}

int needed_radius(const hept::Configuration& cfg) {
    int max_level = 0;
    for (const auto& [addr, pl] : cfg.cells)
        if (!addr.is_center())
            max_level = std::max(max_level, addr.level());
    return max_level + 1;
}

int run_check(const hept::TileSet& ts, const hept::Configuration& cfg, int radius) {
    const hept::AdjacencyMap patch = hept::build_patch(radius);
    const hept::CheckResult res = hept::check(cfg, ts, patch);
    if (res.status == hept::CheckStatus::PatchTooSmall) {
        std::cerr << "error: " << res.error << "\n";
        return kExitInput;
    }
    if (res.status == hept::CheckStatus::Ok) {
        std::cout << "OK cells=" << cfg.cells.size() << "\n";
        return kExitOk;
    }
    for (const auto& v : res.violations)
        std::cout << hept::violation_line(v) << "\n";
    return kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite tilings of the heptagonal grid from Turing machine computations"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // compile
    std::string c_machine, c_out;
    auto* cmd_compile = app.add_subcommand("compile", "compile a machine into a tile set");
    cmd_compile->add_option("-m,--machine", c_machine, "machine file")->required();
    cmd_compile->add_option("-o,--output", c_out, "tile set output file")->required();

    // harp
    std::string h_machine, h_out, h_ref;
    int h_max_steps = 1000;
    auto* cmd_harp = app.add_subcommand("harp", "build the finite configuration of a halting run");
    cmd_harp->add_option("-m,--machine", h_machine, "machine file")->required();
    cmd_harp->add_option("--max-steps", h_max_steps, "step budget");
    cmd_harp->add_option("-o,--output", h_out, "configuration output file")->required();
    cmd_harp->add_option("--tileset-ref", h_ref, "tileset reference recorded in the file");

    // check
    std::string k_tiles, k_config;
    int k_radius = -1;
    auto* cmd_check = app.add_subcommand("check", "verify a configuration against a tile set");
    cmd_check->add_option("-t,--tileset", k_tiles, "tile set file")->required();
    cmd_check->add_option("-c,--config", k_config, "configuration file")->required();
    cmd_check->add_option("--radius", k_radius, "patch levels (default: fits the support)");

    // search
    std::string s_tiles;
    hept::SearchBudget budget;
    bool s_count = false;
    auto* cmd_search = app.add_subcommand("search", "look for any valid finite configuration");
    cmd_search->add_option("-t,--tileset", s_tiles, "tile set file")->required();
    cmd_search->add_option("--max-cells", budget.max_cells, "placement limit");
    cmd_search->add_option("--radius", budget.radius, "patch levels to search over");
    cmd_search->add_option("--max-nodes", budget.max_nodes, "backtracking nodes per anchor");
    cmd_search->add_option("--time-limit", budget.time_limit_s, "wall clock limit, seconds");
    cmd_search->add_option("--threads", budget.threads, "parallel anchor workers");
    cmd_search->add_flag("--count", s_count, "count anchored solutions instead");

    // render
    std::string r_config, r_tiles, r_out;
    int r_depth = 3;
    double r_disc = 560.0, r_stroke = 0.0035;
    bool r_guides = false;
    auto* cmd_render = app.add_subcommand("render", "draw a patch or configuration as SVG");
    cmd_render->add_option("-c,--config", r_config, "configuration file (optional)");
    cmd_render->add_option("-t,--tileset", r_tiles, "tile set file (needed with -c)");
    cmd_render->add_option("--depth", r_depth, "patch levels to draw");
    cmd_render->add_option("-o,--output", r_out, "SVG output file (default: stdout)");
    cmd_render->add_option("--disc-px", r_disc, "disc radius in pixels");
    cmd_render->add_option("--stroke", r_stroke, "stroke width in disc units");
    cmd_render->add_flag("--guides", r_guides, "draw sector guide rays");

    // demo
    std::string d_machine;
    int d_max_steps = 200;
    auto* cmd_demo = app.add_subcommand("demo", "run the whole pipeline on one machine");
    cmd_demo->add_option("-m,--machine", d_machine, "machine file")->required();
    cmd_demo->add_option("--max-steps", d_max_steps, "step budget");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_compile) {
            const hept::TuringMachine tm = hept::parse_machine(read_file(c_machine));
            const hept::TileSet ts = hept::compile(tm);
            const auto problems = hept::validate_tileset(ts);
            if (!problems.empty()) {
                for (const auto& p : problems)
                    std::cerr << "error: " << p << "\n";
                return kExitInput;
            }
            write_file(c_out, hept::serialize_tileset(ts));
            std::cout << "tiles=" << ts.prototypes.size() << "\n";
            return kExitOk;
        }

        if (*cmd_harp) {
            const hept::TuringMachine tm = hept::parse_machine(read_file(h_machine));
            const hept::HarpResult hr = hept::build_harp(tm, h_max_steps);
            if (hr.status == hept::HarpStatus::LeftEdgeViolation) {
                std::cerr << "error: head moves left of cell 0 at step " << hr.violation_step
                          << "; the machine is outside the supported class\n";
                return kExitInput;
            }
            if (hr.status == hept::HarpStatus::NotHaltedWithinBudget) {
                std::cout << "NOT-HALTED within " << h_max_steps << " steps\n";
                return kExitBudget;
            }
            hept::Configuration cfg = hr.config;
            cfg.tileset_ref = h_ref.empty() ? stem_of(h_machine) + ".tileset" : h_ref;
            write_file(h_out, hept::serialize_config(cfg));
            std::cout << "halt=" << hr.halt_time << " cells=" << cfg.cells.size() << "\n";
            return kExitOk;
        }

        if (*cmd_check) {
            const hept::TileSet ts = hept::parse_tileset(read_file(k_tiles));
            const hept::Configuration cfg = hept::parse_config(read_file(k_config));
            return run_check(ts, cfg, k_radius >= 0 ? k_radius : needed_radius(cfg));
        }

        if (*cmd_search) {
            const hept::TileSet ts = hept::parse_tileset(read_file(s_tiles));
            if (s_count) {
                const hept::CountResult res = hept::count_solutions(ts, budget);
                if (res.exhausted) {
                    std::cout << "EXHAUSTED nodes=" << res.stats.nodes << "\n";
                    return kExitBudget;
                }
                std::cout << "COUNT " << res.count << "\n";
                return res.count > 0 ? kExitOk : kExitNegative;
            }
            const hept::SearchResult res = hept::find_finite_tiling(ts, budget);
            switch (res.status) {
                case hept::SearchStatus::Found:
                    std::cout << "FOUND " << res.config->cells.size() << "\n"
                              << hept::serialize_config(*res.config);
                    return kExitOk;
                case hept::SearchStatus::NoneInSpace:
                    std::cout << "NONE radius=" << budget.radius << "\n";
                    return kExitNegative;
                case hept::SearchStatus::BudgetExhausted:
                    std::cout << "EXHAUSTED nodes=" << res.stats.nodes << "\n";
                    return kExitBudget;
            }
        }

        if (*cmd_render) {
            hept::RenderStyle style = hept::RenderStyle::defaults();
            style.disc_px = r_disc;
            style.stroke_width = r_stroke;
            style.guides = r_guides;
            std::string svg;
            if (!r_config.empty()) {
                if (r_tiles.empty()) {
                    std::cerr << "error: rendering a configuration needs -t <tileset>\n";
                    return kExitInput;
                }
                const hept::TileSet ts = hept::parse_tileset(read_file(r_tiles));
                const hept::Configuration cfg = hept::parse_config(read_file(r_config));
                const int depth = std::max(r_depth, needed_radius(cfg));
                const hept::AdjacencyMap patch = hept::build_patch(depth);
                svg = hept::to_svg(hept::layout(patch), &cfg, &ts, style);
            } else {
                const hept::AdjacencyMap patch = hept::build_patch(r_depth);
                svg = hept::to_svg(hept::layout(patch), nullptr, nullptr, style);
            }
            if (r_out.empty())
                std::cout << svg;
            else
                write_file(r_out, svg);
            return kExitOk;
        }

        if (*cmd_demo) {
            const hept::TuringMachine tm = hept::parse_machine(read_file(d_machine));
            const hept::TileSet ts = hept::compile(tm);
            std::cout << "machine: " << d_machine << "\n";
            std::cout << "tiles: " << ts.prototypes.size() << "\n";
            const hept::HarpResult hr = hept::build_harp(tm, d_max_steps);
            if (hr.status == hept::HarpStatus::LeftEdgeViolation) {
                std::cerr << "error: head moves left of cell 0 at step " << hr.violation_step
                          << "\n";
                return kExitInput;
            }
            if (hr.status == hept::HarpStatus::NotHaltedWithinBudget) {
                std::cout << "halt: no (within " << d_max_steps << " steps)\n";
                hept::SearchBudget b;
                b.radius = 3;
                b.max_cells = 20;
                const hept::SearchResult sr = hept::find_finite_tiling(ts, b);
                std::cout << "search: "
                          << (sr.status == hept::SearchStatus::Found
                                  ? "FOUND (unexpected)"
                                  : sr.status == hept::SearchStatus::NoneInSpace
                                        ? "NONE up to radius 3"
                                        : "EXHAUSTED")
                          << "\n";
                std::cout << "equivalence: consistent (no halt observed and no small finite "
                             "solution; bounded evidence only)\n";
                return kExitBudget;
            }
            std::cout << "halt: yes t=" << hr.halt_time << "\n";
            std::cout << "cells: " << hr.config.cells.size() << "\n";
            const int radius = hr.halt_time + 1;
            const hept::AdjacencyMap patch = hept::build_patch(radius);
            const hept::CheckResult chk = hept::check(hr.config, ts, patch);
            std::cout << "check: " << (chk.ok() ? "OK" : "VIOLATIONS") << "\n";
            if (!chk.ok()) {
                for (const auto& v : chk.violations)
                    std::cout << hept::violation_line(v) << "\n";
                return kExitNegative;
            }
            hept::SearchBudget b;
            b.radius = std::max(2, radius);
            b.max_cells = hr.config.cells.size();
            const hept::SearchResult sr = hept::find_finite_tiling(ts, b);
            const bool witnessed = sr.status == hept::SearchStatus::Found;
            if (witnessed)
                std::cout << "search: FOUND " << sr.config->cells.size() << " cells\n";
            else
                std::cout << "search: NOT FOUND\n";
            std::cout << "equivalence: " << (witnessed ? "witnessed" : "not witnessed")
                      << " (halting run <-> finite solution)\n";
            const std::string svg_path = stem_of(d_machine) + ".harp.svg";
            write_file(svg_path, hept::to_svg(hept::layout(patch), &hr.config, &ts,
                                              hept::RenderStyle::defaults()));
            std::cout << "svg: " << svg_path << "\n";
            return witnessed ? kExitOk : kExitNegative;
        }
    } catch (const hept::MachineParseError& e) {
        std::cerr << "machine parse error: " << e.what() << "\n";
        return kExitInput;
    } catch (const hept::FormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
