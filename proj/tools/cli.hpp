/*
 * Copyright 2026 The qgame Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <qgame/qgame.hpp>

namespace qg::cli {

inline bool looks_like_pgsolver(const std::string& text)
{
    const auto first = text.find_first_not_of(" \t\r\n");
    return first != std::string::npos && text.compare(first, 6, "parity") == 0;
}

inline LoadedGame load_game(const std::string& path)
{
    const std::string text = read_text_file(path);
    if (looks_like_pgsolver(text)) {
        PgGame pg = import_pgsolver(text);
        LoadedGame r{std::move(pg.game), std::move(pg.objective), {}};
        if (!r.game.initial()) r.game.set_initial(0);
        for (StateId s = 0; s < r.game.size(); ++s) r.sids.push_back(s);
        return r;
    }
    return game_from_document(parse_structure(text));
}

inline void emit(const std::string& text, const std::string& out_path, std::ostream& out)
{
    if (out_path.empty()) out << text;
    else write_text_file(out_path, text);
}

/// Exit codes: 0 success, 1 negative answer, 2 input error, 3 unsatisfiable
/// specification or no sufficient fairness assumption.
inline int cli_main(std::vector<std::string> args, std::ostream& out, std::ostream& err, std::istream& in = std::cin)
{
    CLI::App app{"Qualitative solver for 2-player and 2.5-player games with assumption synthesis", "qgame"};
    app.require_subcommand(1);

    std::string file, out_path, to, mode;
    int player = 0;
    bool complete = false;

    auto* solve = app.add_subcommand("solve", "probability-1 winning region of a player");
    solve->add_option("file", file, "game (XML or PGSolver)")->required();
    solve->add_option("--player", player, "player 0 or 1")->check(CLI::Range(0, 1));

    auto* coop = app.add_subcommand("coop", "cooperative winning region of player 0 (2-player games)");
    coop->add_option("file", file, "game (XML or PGSolver)")->required();

    auto* reduce = app.add_subcommand("reduce", "2-player parity game preserving probability-1 winning of player 0");
    reduce->add_option("file", file, "game (XML or PGSolver)")->required();
    reduce->add_option("-o,--output", out_path, "output XML file");

    auto* synth = app.add_subcommand("synth", "synthesis from a deterministic parity automaton");
    synth->add_option("mode", mode, "check | safety | fairness | assumption | transducer")
        ->required()
        ->check(CLI::IsMember({"check", "safety", "fairness", "assumption", "transducer"}));
    synth->add_option("file", file, "automaton XML with input/output propositions")->required();
    synth->add_option("-o,--output", out_path, "output XML file");
    synth->add_flag("--complete", complete, "complete missing transitions with a rejecting sink");

    std::vector<std::size_t> states, edges;
    std::uint32_t priorities = 3;
    std::size_t reps = 1;
    double frac = 0.1;
    std::uint64_t seed = 1;
    bool csv = false;
    auto* bench = app.add_subcommand("bench", "time almost-sure solving on random games");
    bench->add_option("--states", states, "state counts (one per row)")->required();
    bench->add_option("--edges", edges, "edge counts (one per row)")->required();
    bench->add_option("--priorities", priorities, "number of priorities");
    bench->add_option("--prob-frac", frac, "fraction of random states");
    bench->add_option("--seed", seed, "generator seed");
    bench->add_option("--reps", reps, "games per row");
    bench->add_flag("--csv", csv, "print CSV instead of the table");

    std::string script;
    bool echo = false;
    auto* repl = app.add_subcommand("repl", "interactive console");
    repl->add_option("--script", script, "read statements from a file");
    repl->add_flag("--echo", echo, "echo statements after the prompt (transcript form)");

    auto* convert = app.add_subcommand("convert", "convert between XML and PGSolver formats");
    convert->add_option("file", file, "input game")->required();
    convert->add_option("--to", to, "goal | pgsolver")->required()->check(CLI::IsMember({"goal", "pgsolver"}));
    convert->add_option("-o,--output", out_path, "output file");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (*solve) {
            const LoadedGame g = load_game(file);
            const Player p = player == 0 ? Player::Zero : Player::One;
            const auto r = almost_sure_solve(g.game, g.objective, p);
            out << "winning region of player " << player << ": " << console::format_set(r.region.states) << "\n";
            return r.region.contains(*g.game.initial()) ? 0 : 1;
        }
        if (*coop) {
            const LoadedGame g = load_game(file);
            const auto* parity = std::get_if<Parity>(&g.objective);
            if (!parity) throw Error(Errc::TypeMismatch, "coop expects a parity game");
            const Region r = cooperative_region(g.game, *parity);
            out << "cooperative region: " << console::format_set(r.states) << "\n";
            return r.contains(*g.game.initial()) ? 0 : 1;
        }
        if (*reduce) {
            const LoadedGame g = load_game(file);
            const auto* parity = std::get_if<Parity>(&g.objective);
            ReductionResult red;
            if (parity) {
                red = reduce_stochastic_parity(g.game, *parity);
            } else {
                const ReductionResult lar = lar_reduce(g.game, g.objective);
                red = reduce_stochastic_parity(lar.game, lar.objective);
            }
            emit(write_structure(document_from_game(red.game, red.objective)), out_path, out);
            return 0;
        }
        if (*synth) {
            const SynthesisGame sg =
                dpa_to_synthesis_game(automaton_from_document(parse_structure(read_text_file(file))), complete);
            if (mode == "check") {
                const bool ok = check_realizability(sg).realizable;
                out << (ok ? "realizable" : "unrealizable") << "\n";
                return ok ? 0 : 1;
            }
            if (mode == "safety") {
                const auto s = compute_safety_assumption(sg);
                out << "safety: " << console::format_edges(s.assumption.safety, sg.alphabet) << "\n";
                return 0;
            }
            const Assumption a = compute_assumption(sg);
            if (mode == "fairness") {
                out << "safety: " << console::format_edges(a.safety, sg.alphabet) << "\n";
                out << "fairness: " << console::format_edges(a.fair, sg.alphabet) << "\n";
                return 0;
            }
            if (mode == "assumption") {
                emit(write_structure(document_from_automaton(assumption_to_streett_automaton(sg, a))), out_path, out);
                return 0;
            }
            const auto real = check_realizability(sg);
            const Transducer t = real.realizable ? extract_transducer(sg, *real.strategy) : synthesize(sg, a);
            if (out_path.empty()) out << console::describe(console::TransducerValue{t});
            else write_text_file(out_path, write_structure(document_from_transducer(t)));
            return 0;
        }
        if (*bench) {
            if (states.size() != edges.size()) throw Error(Errc::InvalidSpec, "--states and --edges differ in length");
            std::vector<BenchSpec> specs;
            for (std::size_t k = 0; k < states.size(); ++k) {
                specs.push_back({states[k], edges[k], priorities, frac, seed, reps});
                validate(specs.back());
            }
            const auto rows = run_benchmark(specs);
            out << (csv ? format_csv(rows) : format_table(rows));
            for (const auto& row : rows) {
                if (row.error) err << "row " << row.states << "/" << row.edges << ": " << *row.error << "\n";
            }
            return 0;
        }
        if (*repl) {
            ConsoleState state;
            if (script.empty()) {
                run_session(state, in, out, echo);
                return 0;
            }
            std::ifstream s(script);
            if (!s) throw Error(Errc::IoError, "cannot read " + script);
            state.base_directory = std::filesystem::path(script).parent_path();
            if (state.base_directory.empty()) state.base_directory = ".";
            return run_session(state, s, out, true) == 0 ? 0 : 1;
        }
        if (*convert) {
            const LoadedGame g = load_game(file);
            if (to == "goal") {
                emit(write_structure(document_from_game(g.game, g.objective)), out_path, out);
            } else {
                const auto* parity = std::get_if<Parity>(&g.objective);
                if (!parity) throw Error(Errc::TypeMismatch, "PGSolver games need a parity objective");
                emit(export_pgsolver(g.game, *parity), out_path, out);
            }
            return 0;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.code() == Errc::SpecUnsatisfiable || e.code() == Errc::NoFairnessAssumptionExists ? 3 : 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace qg::cli
