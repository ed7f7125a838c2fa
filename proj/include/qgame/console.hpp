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

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <qgame/almost_sure.hpp>
#include <qgame/cooperative.hpp>
#include <qgame/error.hpp>
#include <qgame/io/convert.hpp>
#include <qgame/io/file.hpp>
#include <qgame/io/structure.hpp>
#include <qgame/reduction.hpp>
#include <qgame/synthesis/assumption_automaton.hpp>
#include <qgame/synthesis/synthesis_game.hpp>
#include <qgame/synthesis/transducer.hpp>

namespace qg {

namespace console {

struct GameValue
{
    std::string kind; ///< ParityGame, RabinGame or StreettGame
    GameGraph game;
    Objective objective;
};

struct AutomatonValue
{
    std::string kind; ///< ParityAutomaton or StreettAutomaton
    DetAutomaton automaton;
};

/// LTL formulas and Büchi automata are carried for file I/O only.
struct OpaqueValue
{
    std::string kind;
    std::string text;
};

struct RegionValue
{
    Region region;
};

struct StrategyValue
{
    Strategy strategy;
    Player player;
    std::vector<StateId> domain; ///< owned states of the player in its region
};

struct AssumptionValue
{
    Assumption assumption;
    PropAlphabet alphabet;
};

struct TransducerValue
{
    Transducer transducer;
};

using Value = std::variant<GameValue, AutomatonValue, SynthesisGame, OpaqueValue, RegionValue, StrategyValue,
                           AssumptionValue, TransducerValue>;

} // namespace console

/// Variable bindings of a console session. Relative file names are
/// resolved against `base_directory`.
struct ConsoleState
{
    std::map<std::string, console::Value> vars;
    std::filesystem::path base_directory = ".";
};

namespace console {

inline const std::vector<std::string>& objects()
{
    static const std::vector<std::string> names{"LTL",           "BuchiAutomaton", "ParityAutomaton",
                                                "SynthesisGame", "StreettAutomaton", "ParityGame",
                                                "RabinGame",     "StreettGame"};
    return names;
}

inline bool is_object(const std::string& s)
{
    return std::find(objects().begin(), objects().end(), s) != objects().end();
}

inline bool is_variable(const std::string& s)
{
    if (s.empty() || s[0] != '$') return false;
    return std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)); });
}

inline std::string help_text(const std::string& object)
{
    const std::string io = "  readFile <path>    read the object from a file\n"
                           "  writeFile <path>   write the object to a file\n"
                           "  help               list the actions of this object\n";
    const std::string games =
        "  winningRegion <k>  states from which player k wins with probability 1\n"
        "  winningStrategy <k> witness strategy of player k on its winning region\n"
        "  cooperativeWinningRegion  states with a path satisfying player 0's objective (2-player only)\n"
        "  toDeterministicGame  2-player parity game preserving probability-1 winning of player 0\n";
    if (object == "LTL" || object == "BuchiAutomaton") {
        return object + " actions:\n" + io +
               "  (translation actions are unsupported: provide a deterministic parity automaton)\n";
    }
    if (object == "ParityAutomaton") {
        return object + " actions:\n" + io + "  toSynthesisGame    split into environment and system moves\n";
    }
    if (object == "StreettAutomaton") return object + " actions:\n" + io;
    if (object == "SynthesisGame") {
        return object + " actions:\n" + io + games +
               "  realizability      whether the system wins from the initial state\n"
               "  safetyAssumption   minimal set of forbidden environment edges\n"
               "  fairnessAssumption safety plus a locally minimal fairness assumption\n"
               "  assumptionAutomaton the computed assumption as a Streett automaton\n"
               "  transducer         implementation under the computed assumption\n";
    }
    return object + " actions:\n" + io + games;
}

inline std::string general_help()
{
    std::string out = "statements:\n"
                      "  $x                      print a variable\n"
                      "  $x = $y                 copy a variable\n"
                      "  $x = Object Action ...  create an object\n"
                      "  $x = $y Action ...      apply an action to a variable\n"
                      "objects:";
    for (const auto& o : objects()) out += " " + o;
    return out + "\nuse '<Object> help' for the actions of an object\n";
}

inline std::string format_set(std::span<const StateId> states)
{
    std::string out = "{";
    for (std::size_t k = 0; k < states.size(); ++k) {
        if (k) out += ", ";
        out += std::to_string(states[k]);
    }
    return out + "}";
}

inline std::string format_edges(const std::vector<EnvEdge>& edges, const PropAlphabet& alpha)
{
    if (edges.empty()) return "none";
    std::string out;
    for (const EnvEdge& e : edges) {
        if (!out.empty()) out += ", ";
        out += "(" + std::to_string(e.env) + ", " + alpha.format_input(e.input) + ")";
    }
    return out;
}

inline std::string mode_name(WinMode m)
{
    switch (m) {
    case WinMode::Sure: return "sure";
    case WinMode::AlmostSure: return "almost-sure";
    case WinMode::Cooperative: return "cooperative";
    }
    return "";
}

inline std::string objective_name(const Objective& obj)
{
    if (const auto* p = std::get_if<Parity>(&obj)) return "parity, max priority " + std::to_string(p->max_priority());
    if (const auto* s = std::get_if<Streett>(&obj)) return "streett, " + std::to_string(s->pairs.size()) + " pairs";
    return "rabin, " + std::to_string(std::get<Rabin>(obj).pairs.size()) + " pairs";
}

inline std::string describe(const Value& v)
{
    std::ostringstream out;
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, GameValue>) {
                out << x.kind << ": " << x.game.size() << " states (" << x.game.count_owned(Owner::Random)
                    << " random), " << x.game.edge_count() << " edges, " << objective_name(x.objective)
                    << ", initial " << x.game.initial().value_or(0) << "\n";
            } else if constexpr (std::is_same_v<T, AutomatonValue>) {
                out << x.kind << ": " << x.automaton.states << " states, inputs {";
                for (std::size_t k = 0; k < x.automaton.alphabet.inputs.size(); ++k) {
                    out << (k ? ", " : "") << x.automaton.alphabet.inputs[k];
                }
                out << "}, outputs {";
                for (std::size_t k = 0; k < x.automaton.alphabet.outputs.size(); ++k) {
                    out << (k ? ", " : "") << x.automaton.alphabet.outputs[k];
                }
                out << "}, " << objective_name(x.automaton.acceptance) << ", initial " << x.automaton.initial << "\n";
            } else if constexpr (std::is_same_v<T, SynthesisGame>) {
                out << "SynthesisGame: " << x.env_count << " environment states, " << x.game.size() - x.env_count
                    << " choice states, " << x.env_edges().size() << " environment edges, initial "
                    << x.game.initial().value_or(0) << "\n";
            } else if constexpr (std::is_same_v<T, OpaqueValue>) {
                out << x.kind << ": " << x.text.size() << " bytes (file I/O only)\n";
            } else if constexpr (std::is_same_v<T, RegionValue>) {
                out << "Region (player " << index(x.region.player) << ", " << mode_name(x.region.mode)
                    << "): " << format_set(x.region.states) << "\n";
            } else if constexpr (std::is_same_v<T, StrategyValue>) {
                const Strategy& s = x.strategy;
                out << "Strategy (player " << index(x.player) << ", " << s.memory_size() << " memory state"
                    << (s.memory_size() == 1 ? "" : "s") << ")\n";
                for (StateId q : x.domain) {
                    for (MemoryId m = 0; m < s.memory_size(); ++m) {
                        const auto t = s.choice(q, m);
                        if (!t) continue;
                        out << "  " << q;
                        if (!s.memoryless()) out << " [" << m << "]";
                        out << " -> " << *t << "\n";
                    }
                }
            } else if constexpr (std::is_same_v<T, AssumptionValue>) {
                out << "Assumption\n  safety: " << format_edges(x.assumption.safety, x.alphabet)
                    << "\n  fairness: " << format_edges(x.assumption.fair, x.alphabet) << "\n";
            } else if constexpr (std::is_same_v<T, TransducerValue>) {
                const Transducer& t = x.transducer;
                out << "Transducer: " << t.states << " state" << (t.states == 1 ? "" : "s") << ", initial "
                    << t.initial << "\n";
                for (StateId q = 0; q < t.states; ++q) {
                    for (Letter i = 0; i < t.alphabet.input_letters(); ++i) {
                        out << "  " << q << " --" << t.alphabet.format_input(i) << " / "
                            << t.alphabet.format_output(t.output(q, i)) << "--> " << t.next(q, i) << "\n";
                    }
                }
            }
        },
        v);
    return out.str();
}

inline std::string kind_of(const Value& v)
{
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, GameValue> || std::is_same_v<T, AutomatonValue> ||
                          std::is_same_v<T, OpaqueValue>) {
                return x.kind;
            } else if constexpr (std::is_same_v<T, SynthesisGame>) {
                return "SynthesisGame";
            } else if constexpr (std::is_same_v<T, RegionValue>) {
                return "Region";
            } else if constexpr (std::is_same_v<T, StrategyValue>) {
                return "Strategy";
            } else if constexpr (std::is_same_v<T, AssumptionValue>) {
                return "Assumption";
            } else {
                return "Transducer";
            }
        },
        v);
}

inline std::vector<std::string> tokenize(const std::string& line)
{
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[pos]))) {
            ++pos;
            continue;
        }
        if (line[pos] == '"') {
            const auto end = line.find('"', pos + 1);
            if (end == std::string::npos) throw Error(Errc::ParseError, "unterminated quoted argument");
            out.push_back(line.substr(pos + 1, end - pos - 1));
            pos = end + 1;
            continue;
        }
        if (line[pos] == '=') {
            out.emplace_back("=");
            ++pos;
            continue;
        }
        const auto start = pos;
        while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos])) && line[pos] != '=') ++pos;
        out.push_back(line.substr(start, pos - start));
    }
    return out;
}

[[noreturn]] inline void mismatch(const std::string& kind, const std::string& action)
{
    throw Error(Errc::TypeMismatch, "action '" + action + "' is not available on " + kind);
}

inline Player player_arg(const std::vector<std::string>& args, const std::string& action)
{
    if (args.size() != 1 || (args[0] != "0" && args[0] != "1")) {
        throw Error(Errc::ParseError, action + " expects a player argument 0 or 1");
    }
    return args[0] == "0" ? Player::Zero : Player::One;
}

inline const std::string& path_arg(const std::vector<std::string>& args, const std::string& action)
{
    if (args.size() != 1) throw Error(Errc::ParseError, action + " expects one file name");
    return args[0];
}

inline void no_args(const std::vector<std::string>& args, const std::string& action)
{
    if (!args.empty()) throw Error(Errc::ParseError, action + " takes no arguments");
}

/// Result of evaluating an expression: a value to bind, or plain text.
struct Outcome
{
    std::optional<Value> value;
    std::string text;
};

class Evaluator
{
public:
    explicit Evaluator(ConsoleState& state) : state_(state) {}

    std::filesystem::path resolve(const std::string& path) const
    {
        std::filesystem::path p(path);
        return p.is_absolute() ? p : state_.base_directory / p;
    }

    Outcome create(const std::string& object, const std::string& action, const std::vector<std::string>& args)
    {
        if (action == "help") {
            no_args(args, action);
            return {std::nullopt, help_text(object)};
        }
        if (action != "readFile") {
            if (object == "LTL" || object == "BuchiAutomaton") {
                throw Error(Errc::Unsupported, "unsupported: provide a deterministic parity automaton");
            }
            throw Error(Errc::TypeMismatch, "object " + object + " needs readFile before '" + action + "'");
        }
        const std::string text = read_text_file(resolve(path_arg(args, action)));
        if (object == "LTL") return {OpaqueValue{object, text}, ""};
        if (object == "BuchiAutomaton") {
            parse_structure(text);
            return {OpaqueValue{object, text}, ""};
        }
        const StructureDocument doc = parse_structure(text);
        if (object == "ParityAutomaton" || object == "StreettAutomaton") {
            DetAutomaton a = automaton_from_document(doc);
            const bool parity = std::holds_alternative<Parity>(a.acceptance);
            if (parity != (object == "ParityAutomaton")) {
                throw Error(Errc::TypeMismatch, "file does not hold a " + object);
            }
            return {AutomatonValue{object, std::move(a)}, ""};
        }
        if (object == "SynthesisGame") return {dpa_to_synthesis_game(automaton_from_document(doc)), ""};
        LoadedGame g = game_from_document(doc);
        const bool ok = (object == "ParityGame" && std::holds_alternative<Parity>(g.objective)) ||
                        (object == "RabinGame" && std::holds_alternative<Rabin>(g.objective)) ||
                        (object == "StreettGame" && std::holds_alternative<Streett>(g.objective));
        if (!ok) throw Error(Errc::TypeMismatch, "file does not hold a " + object);
        return {GameValue{object, std::move(g.game), std::move(g.objective)}, ""};
    }

    Outcome apply(const Value& v, const std::string& action, const std::vector<std::string>& args)
    {
        const std::string kind = kind_of(v);
        if (action == "help") {
            no_args(args, action);
            return {std::nullopt, help_text(kind)};
        }
        if (action == "writeFile") {
            write_text_file(resolve(path_arg(args, action)), serialize(v, action));
            return {std::nullopt, "wrote " + args[0] + "\n"};
        }
        if (action == "readFile") throw Error(Errc::ParseError, "readFile is applied to an object name, not a variable");
        if (const auto* g = std::get_if<GameValue>(&v)) return game_action(*g, action, args);
        if (const auto* sg = std::get_if<SynthesisGame>(&v)) return synthesis_action(*sg, action, args);
        if (const auto* a = std::get_if<AutomatonValue>(&v)) {
            if (a->kind == "ParityAutomaton" && action == "toSynthesisGame") {
                no_args(args, action);
                return {dpa_to_synthesis_game(a->automaton), ""};
            }
        }
        if (const auto* o = std::get_if<OpaqueValue>(&v)) {
            (void)o;
            throw Error(Errc::Unsupported, "unsupported: provide a deterministic parity automaton");
        }
        mismatch(kind, action);
    }

private:
    std::string serialize(const Value& v, const std::string& action)
    {
        if (const auto* g = std::get_if<GameValue>(&v)) {
            return write_structure(document_from_game(g->game, g->objective));
        }
        if (const auto* a = std::get_if<AutomatonValue>(&v)) return write_structure(document_from_automaton(a->automaton));
        if (const auto* sg = std::get_if<SynthesisGame>(&v)) return write_structure(document_from_synthesis_game(*sg));
        if (const auto* o = std::get_if<OpaqueValue>(&v)) return o->text;
        if (const auto* t = std::get_if<TransducerValue>(&v)) {
            return write_structure(document_from_transducer(t->transducer));
        }
        mismatch(kind_of(v), action);
    }

    static Outcome strategy_of(const GameGraph& g, const Objective& obj, Player p)
    {
        auto r = almost_sure_solve(g, obj, p);
        StrategyValue s{std::move(r.strategy), p, {}};
        for (StateId q : r.region.states) {
            if (g.owner(q) == owner_of(p)) s.domain.push_back(q);
        }
        return {std::move(s), ""};
    }

    static Region cooperative(const GameGraph& g, const Objective& obj, const std::string& kind)
    {
        if (g.has_random_states()) {
            throw Error(Errc::TypeMismatch, "cooperativeWinningRegion is only available on 2-player games, " + kind +
                                                " has random states");
        }
        if (const auto* p = std::get_if<Parity>(&obj)) return cooperative_region(g, *p);
        const ReductionResult red = lar_reduce(g, obj);
        const Region product = cooperative_region(red.game, red.objective);
        Region r;
        r.mode = WinMode::Cooperative;
        for (StateId s : product.states) {
            if (s < g.size()) r.states.push_back(s);
        }
        return r;
    }

    static Outcome game_action(const GameValue& g, const std::string& action, const std::vector<std::string>& args)
    {
        if (action == "winningRegion") {
            return {RegionValue{almost_sure_solve(g.game, g.objective, player_arg(args, action)).region}, ""};
        }
        if (action == "winningStrategy") return strategy_of(g.game, g.objective, player_arg(args, action));
        if (action == "cooperativeWinningRegion") {
            no_args(args, action);
            return {RegionValue{cooperative(g.game, g.objective, g.kind)}, ""};
        }
        if (action == "toDeterministicGame") {
            no_args(args, action);
            const GameGraph* source = &g.game;
            Parity obj;
            ReductionResult lar;
            if (const auto* p = std::get_if<Parity>(&g.objective)) {
                obj = *p;
            } else {
                lar = lar_reduce(g.game, g.objective);
                source = &lar.game;
                obj = lar.objective;
            }
            ReductionResult red = reduce_stochastic_parity(*source, obj);
            return {GameValue{"ParityGame", std::move(red.game), std::move(red.objective)}, ""};
        }
        mismatch(g.kind, action);
    }

    static Outcome synthesis_action(const SynthesisGame& sg, const std::string& action,
                                    const std::vector<std::string>& args)
    {
        if (action == "winningRegion") {
            return {RegionValue{almost_sure_solve(sg.game, sg.objective, player_arg(args, action)).region}, ""};
        }
        if (action == "winningStrategy") return strategy_of(sg.game, sg.objective, player_arg(args, action));
        if (action == "cooperativeWinningRegion") {
            no_args(args, action);
            return {RegionValue{cooperative_region(sg.game, sg.objective)}, ""};
        }
        if (action == "realizability") {
            no_args(args, action);
            return {std::nullopt, check_realizability(sg).realizable ? "realizable\n" : "unrealizable\n"};
        }
        if (action == "safetyAssumption") {
            no_args(args, action);
            return {AssumptionValue{compute_safety_assumption(sg).assumption, sg.alphabet}, ""};
        }
        if (action == "fairnessAssumption") {
            no_args(args, action);
            return {AssumptionValue{compute_assumption(sg), sg.alphabet}, ""};
        }
        if (action == "assumptionAutomaton") {
            no_args(args, action);
            return {AutomatonValue{"StreettAutomaton", assumption_to_streett_automaton(sg, compute_assumption(sg))},
                    ""};
        }
        if (action == "transducer") {
            no_args(args, action);
            const auto real = check_realizability(sg);
            if (real.realizable) return {TransducerValue{extract_transducer(sg, *real.strategy)}, ""};
            return {TransducerValue{synthesize(sg, compute_assumption(sg))}, ""};
        }
        if (action == "toDeterministicGame") {
            no_args(args, action);
            return {GameValue{"ParityGame", sg.game, sg.objective}, ""};
        }
        mismatch("SynthesisGame", action);
    }

    ConsoleState& state_;
};

} // namespace console

/**
 * Evaluates one console statement and returns what it prints:
 *
 *   $x                      prints the variable
 *   $x = $y                 copies a binding
 *   $x = Object Action ...  evaluates and binds
 *   $x = $y Action ...      applies an action to a bound value and binds
 *   Object Action ... / $y Action ... / help   evaluates and prints
 *
 * Errors are thrown as qg::Error (ParseError, UnboundVariable, TypeMismatch
 * and the codes of the underlying operations).
 */
inline std::string eval_statement(ConsoleState& state, const std::string& line)
{
    using namespace console;
    const auto tokens = tokenize(line);
    if (tokens.empty()) return "";
    auto lookup = [&](const std::string& name) -> const Value& {
        auto it = state.vars.find(name);
        if (it == state.vars.end()) throw Error(Errc::UnboundVariable, "variable " + name + " is not bound");
        return it->second;
    };
    auto check_variable = [](const std::string& name) {
        if (!is_variable(name)) throw Error(Errc::ParseError, "'" + name + "' is not a variable name ($[a-zA-Z0-9]*)");
    };
    Evaluator eval(state);
    auto expression = [&](std::size_t from) -> Outcome {
        const std::string& head = tokens[from];
        if (from + 1 >= tokens.size()) {
            if (head[0] == '$') {
                check_variable(head);
                return {lookup(head), ""};
            }
            throw Error(Errc::ParseError, "expected 'Object Action' after '" + head + "'");
        }
        const std::string& action = tokens[from + 1];
        const std::vector<std::string> args(tokens.begin() + static_cast<std::ptrdiff_t>(from) + 2, tokens.end());
        if (head[0] == '$') {
            check_variable(head);
            return eval.apply(lookup(head), action, args);
        }
        if (!is_object(head)) throw Error(Errc::ParseError, "unknown object '" + head + "'");
        return eval.create(head, action, args);
    };

    if (tokens.size() == 1 && tokens[0] == "help") return general_help();
    if (tokens[0] == "=") throw Error(Errc::ParseError, "statement starts with '='");

    if (tokens.size() >= 2 && tokens[1] == "=") {
        check_variable(tokens[0]);
        if (tokens.size() == 2) throw Error(Errc::ParseError, "missing expression after '='");
        for (std::size_t k = 2; k < tokens.size(); ++k) {
            if (tokens[k] == "=") throw Error(Errc::ParseError, "unexpected '='");
        }
        Outcome r = expression(2);
        if (!r.value) return r.text;
        const std::string summary = describe(*r.value);
        const std::string text = r.text + tokens[0] + " = " + summary.substr(0, summary.find('\n')) + "\n";
        state.vars.insert_or_assign(tokens[0], std::move(*r.value));
        return text;
    }
    for (const auto& t : tokens) {
        if (t == "=") throw Error(Errc::ParseError, "unexpected '='");
    }
    Outcome r = expression(0);
    if (r.value) return r.text + describe(*r.value);
    return r.text;
}

/// Replays statements from `in`, echoing each after a `qgame> ` prompt when
/// `echo` is set. Errors are printed as `error: <code>: <message>` and the
/// session continues. Returns the number of failed statements.
inline std::size_t run_session(ConsoleState& state, std::istream& in, std::ostream& out, bool echo)
{
    std::size_t failures = 0;
    std::string line;
    while (true) {
        if (!echo) out << "qgame> " << std::flush;
        if (!std::getline(in, line)) break;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first != std::string::npos && line[first] == '#') continue;
        if (echo) out << "qgame> " << line << "\n";
        if (line == "quit" || line == "exit") break;
        try {
            out << eval_statement(state, line);
        } catch (const std::exception& e) {
            ++failures;
            out << "error: " << e.what() << "\n";
        }
    }
    if (!echo) out << "\n";
    return failures;
}

} // namespace qg
