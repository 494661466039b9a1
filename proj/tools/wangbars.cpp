// wangbars: command-line front end.
//
// Exit status: 0 success / sat, 1 unsat or failed check, 2 usage or parse
// error, 3 search budget exhausted.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "wangbars/analysis.hpp"
#include "wangbars/cnf.hpp"
#include "wangbars/io.hpp"
#include "wangbars/reduction.hpp"
#include "wangbars/solver.hpp"

using namespace wangbars;

namespace {

enum Exit { ok = 0, negative = 1, usage = 2, budget = 3 };

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") std::cout << text;
    else write_file(path, text);
}

std::string kind_of(const std::string& text) {
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ws(line);
        std::string w;
        if (!(ws >> w)) continue;
        if (w == "tile" || w == "bar" || w == "domain" || w == "lattice") return w;
        if (w.find('=') != std::string::npos) return "manifest";
        return "";
    }
    return "";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wang bar reduction toolkit"};
    app.require_subcommand(1);
    int status = Exit::ok;

    // reduce
    std::string r_in, r_out, r_manifest, r_order;
    auto* reduce_cmd = app.add_subcommand("reduce", "Build the 29 Wang bars for a tile set");
    reduce_cmd->add_option("tiles", r_in, "tiles file")->required();
    reduce_cmd->add_option("-o,--out", r_out, "bars file (default stdout)");
    reduce_cmd->add_option("--manifest", r_manifest, "manifest file to write");
    reduce_cmd->add_option("--order", r_order, "comma-separated color order override");
    reduce_cmd->callback([&] {
        const TileSet tiles = parse_tiles(read_file(r_in));
        std::optional<std::vector<Color>> order;
        if (!r_order.empty()) order = detail::split(r_order, ',');
        const Reduction red = reduce(tiles, order);
        emit(r_out, format_bars(red.bars));
        if (!r_manifest.empty()) write_file(r_manifest, format_manifest(red.manifest));
    });

    // solve
    std::string s_in, s_mode = "torus", s_cnf, s_witness;
    int s_w = 0, s_h = 0;
    std::vector<std::string> s_exclude;
    std::optional<std::uint64_t> s_budget, s_time;
    auto* solve_cmd = app.add_subcommand("solve", "Decide tileability of a torus or rectangle");
    solve_cmd->add_option("bars", s_in, "bars or tiles file")->required();
    solve_cmd->add_option("--mode", s_mode, "torus or rect")->check(CLI::IsMember({"torus", "rect"}));
    solve_cmd->add_option("--width", s_w, "domain width")->required();
    solve_cmd->add_option("--height", s_h, "domain height")->required();
    solve_cmd->add_option("--exclude", s_exclude, "bars to leave out")->delimiter(',');
    solve_cmd->add_option("--budget", s_budget, "node budget");
    solve_cmd->add_option("--time-budget", s_time, "time budget in ms");
    solve_cmd->add_option("--cnf-out", s_cnf, "write the instance as DIMACS");
    solve_cmd->add_option("--witness-out", s_witness, "write the witness placements when sat");
    solve_cmd->callback([&] {
        const std::string text = read_file(s_in);
        const BarSet bars = kind_of(text) == "tile" ? tiles_as_bars(parse_tiles(text)) : parse_bars(text);
        const Domain d = s_mode == "torus" ? Domain::torus(s_w, s_h) : Domain::rect(s_w, s_h);
        SearchConfig cfg;
        cfg.excluded.insert(s_exclude.begin(), s_exclude.end());
        cfg.node_budget = s_budget;
        if (s_time) cfg.time_budget = std::chrono::milliseconds(*s_time);
        if (!s_cnf.empty()) {
            std::vector<Bar> kept;
            for (const auto& b : bars.bars())
                if (!cfg.excluded.count(b.name)) kept.push_back(b);
            write_file(s_cnf, to_dimacs(export_cnf(BarSet(std::move(kept)), d)));
        }
        const SolveResult r = solve(bars, d, cfg);
        std::cout << format_kv({{"verdict", std::string(to_string(r.verdict))},
                                {"nodes", std::to_string(r.stats.nodes)},
                                {"elapsed_us", std::to_string(r.stats.elapsed.count())}});
        if (r.witness && !s_witness.empty()) write_file(s_witness, format_placements(*r.witness));
        status = r.verdict == Verdict::sat ? Exit::ok : r.verdict == Verdict::unsat ? Exit::negative : Exit::budget;
    });

    // dpll
    std::string d_in, d_model;
    auto* dpll_cmd = app.add_subcommand("dpll", "Run the bundled DPLL on a DIMACS file");
    dpll_cmd->add_option("cnf", d_in, "DIMACS file")->required();
    dpll_cmd->add_option("--placements-out", d_model, "decode the model into a free-domain placement file");
    dpll_cmd->callback([&] {
        const CnfDocument doc = parse_dimacs(read_file(d_in));
        const auto model = dpll(doc);
        std::cout << "verdict=" << (model ? "sat" : "unsat") << '\n';
        if (model && !d_model.empty()) write_file(d_model, format_placements(decode_model(doc, *model, Domain::unbounded())));
        status = model ? Exit::ok : Exit::negative;
    });

    // verify-facts
    std::string f_in;
    std::uint64_t f_budget = 10'000'000;
    int f_w = 12, f_h = 8;
    auto* facts_cmd = app.add_subcommand("verify-facts", "Run the forced-pattern scenarios on reduce(tiles)");
    facts_cmd->add_option("tiles", f_in, "tiles file")->required();
    facts_cmd->add_option("--budget", f_budget, "node budget per search");
    facts_cmd->add_option("--f1-width", f_w, "largest torus width for the selector-free check");
    facts_cmd->add_option("--f1-height", f_h, "largest torus height for the selector-free check");
    facts_cmd->callback([&] {
        FactSuiteConfig cfg;
        cfg.node_budget = f_budget;
        cfg.f1_max_width = f_w;
        cfg.f1_max_height = f_h;
        const FactReport rep = run_fact_suite(parse_tiles(read_file(f_in)), cfg);
        bool exhausted = false;
        int failed = 0, skipped = 0;
        for (const auto& r : rep.results) {
            std::cout << (r.passed() ? "PASS " : r.observed == "skipped" ? "SKIP " : "FAIL ") << r.name << " expected=" << r.expected
                      << " observed=" << r.observed << " nodes=" << r.nodes << " elapsed_us=" << r.elapsed.count();
            if (!r.detail.empty()) std::cout << " (" << r.detail << ')';
            std::cout << '\n';
            exhausted |= r.observed == "exhausted-budget";
            if (r.observed == "skipped") ++skipped;
            else if (!r.passed()) ++failed;
        }
        std::cout << format_kv({{"scenarios", std::to_string(rep.results.size())}, {"failed", std::to_string(failed)},
                                {"skipped", std::to_string(skipped)}});
        status = exhausted ? Exit::budget : failed ? Exit::negative : Exit::ok;
    });

    // cd
    std::string c_in;
    auto* cd_cmd = app.add_subcommand("cd", "Color deficiency of a tile set");
    cd_cmd->add_option("tiles", c_in, "tiles file")->required();
    cd_cmd->callback([&] {
        const auto d = color_deficiency(parse_tiles(read_file(c_in)));
        std::cout << format_kv({{"n", std::to_string(d.n)}, {"north", std::to_string(d.north)}, {"east", std::to_string(d.east)},
                                {"south", std::to_string(d.south)}, {"west", std::to_string(d.west)}, {"c", std::to_string(d.c)},
                                {"cd", std::to_string(d.cd)}});
    });

    // cut
    std::string k_in, k_out;
    auto* cut_cmd = app.add_subcommand("cut", "Cut bars into Wang tiles");
    cut_cmd->add_option("bars", k_in, "bars file")->required();
    cut_cmd->add_option("-o,--out", k_out, "tiles file to write");
    cut_cmd->callback([&] {
        const CutResult r = cut_bars(parse_bars(read_file(k_in)));
        const auto d = color_deficiency(r.tiles);
        std::cout << "tiles=" << r.tiles.size() << " t=" << r.t << " cd=" << d.cd << '\n';
        if (!k_out.empty()) write_file(k_out, format_tiles(r.tiles));
    });

    // pad
    std::string p_in, p_out;
    int p_target = 0;
    auto* pad_cmd = app.add_subcommand("pad", "Add unusable tiles until the deficiency reaches a target");
    pad_cmd->add_option("tiles", p_in, "tiles file")->required();
    pad_cmd->add_option("--target", p_target, "target deficiency")->required();
    pad_cmd->add_option("-o,--out", p_out, "tiles file (default stdout)");
    pad_cmd->callback([&] { emit(p_out, format_tiles(pad_to_deficiency(parse_tiles(read_file(p_in)), p_target))); });

    // simulate
    std::string m_manifest, m_lattice, m_out;
    auto* sim_cmd = app.add_subcommand("simulate", "Lay out the bar tiling for a periodic tile lattice");
    sim_cmd->add_option("manifest", m_manifest, "manifest file")->required();
    sim_cmd->add_option("lattice", m_lattice, "lattice file")->required();
    sim_cmd->add_option("-o,--out", m_out, "placements file (default stdout)");
    sim_cmd->callback([&] {
        const auto mf = parse_manifest(read_file(m_manifest));
        emit(m_out, format_placements(simulate_tiling(mf, parse_lattice(read_file(m_lattice)))));
    });

    // decode
    std::string x_manifest, x_in, x_out;
    auto* dec_cmd = app.add_subcommand("decode", "Recover the tile lattice from a bar tiling");
    dec_cmd->add_option("manifest", x_manifest, "manifest file")->required();
    dec_cmd->add_option("placements", x_in, "placements file")->required();
    dec_cmd->add_option("-o,--out", x_out, "lattice file (default stdout)");
    dec_cmd->callback([&] {
        const auto mf = parse_manifest(read_file(x_manifest));
        emit(x_out, format_lattice(decode_tiling(mf, parse_placements(read_file(x_in)))));
    });

    // render
    std::string v_in, v_bars, v_manifest, v_format = "svg", v_out;
    auto* render_cmd = app.add_subcommand("render", "Draw a tiles, bars, placements or lattice file");
    render_cmd->add_option("file", v_in, "input file")->required();
    render_cmd->add_option("--bars", v_bars, "bars file for placements");
    render_cmd->add_option("--manifest", v_manifest, "manifest: supplies bars and role labels");
    render_cmd->add_option("--tiles", v_bars, "tiles file for lattices (alias of --bars)");
    render_cmd->add_option("--format", v_format, "svg or ascii")->check(CLI::IsMember({"svg", "ascii"}));
    render_cmd->add_option("-o,--out", v_out, "output file (default stdout)");
    render_cmd->callback([&] {
        const std::string text = read_file(v_in);
        const std::string kind = kind_of(text);
        std::optional<ReductionManifest> mf;
        if (!v_manifest.empty()) mf = parse_manifest(read_file(v_manifest));
        auto side_bars = [&]() -> BarSet {
            if (!v_bars.empty()) {
                const std::string s = read_file(v_bars);
                return kind_of(s) == "tile" ? tiles_as_bars(parse_tiles(s)) : parse_bars(s);
            }
            if (mf) return bars_from_manifest(*mf);
            throw Error("this file needs --bars, --tiles or --manifest");
        };
        BarSet bars;
        Tiling t;
        if (kind == "tile") {
            bars = tiles_as_bars(parse_tiles(text));
            t = bars_catalogue(bars);
        } else if (kind == "bar") {
            bars = parse_bars(text);
            t = bars_catalogue(bars);
        } else if (kind == "domain") {
            bars = side_bars();
            t = parse_placements(text);
        } else if (kind == "lattice") {
            const TileGrid g = parse_lattice(text);
            bars = side_bars();
            t = grid_as_tiling(g);
        } else if (kind == "manifest") {
            mf = parse_manifest(text);
            bars = bars_from_manifest(*mf);
            t = bars_catalogue(bars);
        } else {
            throw Error("cannot tell the file type of '" + v_in + "'");
        }
        const BarLabels labels = mf ? role_labels(*mf) : BarLabels{};
        emit(v_out, v_format == "svg" ? render_svg(bars, t, labels) : render_ascii(bars, t, labels));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return Exit::usage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Exit::usage;
    }
    return status;
}
