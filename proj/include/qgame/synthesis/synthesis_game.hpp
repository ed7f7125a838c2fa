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
#include <optional>
#include <string>
#include <vector>

#include <qgame/almost_sure.hpp>
#include <qgame/cooperative.hpp>
#include <qgame/error.hpp>
#include <qgame/synthesis/automaton.hpp>
#include <qgame/zielonka.hpp>

namespace qg {

/// Environment edge: from env state `env` on input letter `input`.
struct EnvEdge
{
    StateId env = 0;
    Letter input = 0;

    friend auto operator<=>(const EnvEdge&, const EnvEdge&) = default;
};

/**
 * Split game of a deterministic parity automaton. Env states 0..n-1 are the
 * automaton states (player 1); choice state (q, i) is player 0's and sits at
 * index n + q * |inputs| + i. Every choice edge carries the output letters
 * leading to its target.
 */
struct SynthesisGame
{
    GameGraph game;
    Parity objective;
    PropAlphabet alphabet;
    std::size_t env_count = 0;
    Priority neutral = 0;
    std::vector<std::vector<std::vector<Letter>>> outputs; ///< [choice][edge] -> output letters

    Letter input_count() const { return alphabet.input_letters(); }
    StateId choice_state(StateId env, Letter input) const
    {
        return static_cast<StateId>(env_count + static_cast<std::size_t>(env) * input_count() + input);
    }
    bool is_env(StateId s) const { return s < env_count; }
    EnvEdge edge_of_choice(StateId choice) const
    {
        const auto k = choice - env_count;
        return {static_cast<StateId>(k / input_count()), static_cast<Letter>(k % input_count())};
    }
    bool has_env_edge(EnvEdge e) const
    {
        return e.env < env_count && e.input < input_count() && game.has_edge(e.env, choice_state(e.env, e.input));
    }

    /// Environment edges still present, ascending by (source, input).
    std::vector<EnvEdge> env_edges() const
    {
        std::vector<EnvEdge> out;
        for (StateId q = 0; q < env_count; ++q) {
            for (StateId c : game.successors(q)) out.push_back(edge_of_choice(c));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Least output letter on the edge from `choice` to `target`.
    std::optional<Letter> output_towards(StateId choice, StateId target) const
    {
        const auto succ = game.successors(choice);
        for (std::size_t k = 0; k < succ.size(); ++k) {
            if (succ[k] == target) return outputs[choice - env_count][k].front();
        }
        return std::nullopt;
    }
};

/// Safety and fairness parts of an environment assumption.
struct Assumption
{
    std::vector<EnvEdge> safety;
    std::vector<EnvEdge> fair;

    friend bool operator==(const Assumption&, const Assumption&) = default;
};

/// Builds the split game; with `auto_complete` missing transitions go to a
/// rejecting sink, otherwise they raise IncompleteAutomaton.
inline SynthesisGame dpa_to_synthesis_game(DetParityAutomaton aut, bool auto_complete = false)
{
    aut.alphabet.validate(true);
    const auto* parity = std::get_if<Parity>(&aut.acceptance);
    if (!parity) throw Error(Errc::InvalidSpec, "synthesis needs a parity automaton");
    if (parity->priority.size() != aut.states) throw Error(Errc::InvalidSpec, "priority count differs from state count");
    if (!aut.complete()) {
        if (!auto_complete) throw Error(Errc::IncompleteAutomaton, "automaton has missing transitions");
        aut.complete_with_sink();
        parity = std::get_if<Parity>(&aut.acceptance);
    }

    SynthesisGame sg;
    sg.alphabet = aut.alphabet;
    sg.env_count = aut.states;
    const Letter nin = aut.alphabet.input_letters();
    const Letter nout = aut.alphabet.output_letters();
    const Priority top = parity->max_priority();
    sg.neutral = top + 1 + ((top + 1) & 1u); // smallest even above every priority

    for (StateId q = 0; q < aut.states; ++q) {
        std::optional<std::string> name = aut.labels[q] ? aut.labels[q] : std::optional<std::string>("q" + std::to_string(q));
        sg.game.add_state(Owner::Player1, name);
        sg.objective.priority.push_back(parity->priority[q]);
    }
    for (StateId q = 0; q < aut.states; ++q) {
        for (Letter i = 0; i < nin; ++i) {
            sg.game.add_state(Owner::Player0, *sg.game.label(q) + "," + aut.alphabet.format_input(i));
            sg.objective.priority.push_back(sg.neutral);
        }
    }
    sg.outputs.resize(static_cast<std::size_t>(aut.states) * nin);
    for (StateId q = 0; q < aut.states; ++q) {
        for (Letter i = 0; i < nin; ++i) {
            const StateId c = sg.choice_state(q, i);
            sg.game.add_edge(q, c);
            auto& tags = sg.outputs[c - sg.env_count];
            for (Letter o = 0; o < nout; ++o) {
                const StateId t = aut.next(q, aut.alphabet.join(i, o));
                const auto succ = sg.game.successors(c);
                const auto it = std::find(succ.begin(), succ.end(), t);
                if (it == succ.end()) {
                    sg.game.add_edge(c, t);
                    tags.push_back({o});
                } else {
                    tags[static_cast<std::size_t>(it - succ.begin())].push_back(o);
                }
            }
        }
    }
    sg.game.set_initial(aut.initial);
    return sg;
}

struct Realizability
{
    bool realizable = false;
    std::optional<Strategy> strategy; ///< memoryless witness for player 0
};

inline Realizability check_realizability(const SynthesisGame& sg)
{
    auto sol = zielonka_solve(sg.game, sg.objective);
    Realizability r;
    r.realizable = sg.game.initial() && sol.win[0].contains(*sg.game.initial());
    if (r.realizable) r.strategy = std::move(sol.strategy[0]);
    return r;
}

/// Copy of the game without the given environment edges (edges already
/// absent are ignored).
inline SynthesisGame remove_env_edges(const SynthesisGame& sg, std::span<const EnvEdge> removed)
{
    for (const EnvEdge& e : removed) {
        if (e.env >= sg.env_count || e.input >= sg.input_count()) {
            throw Error(Errc::NotEnvEdge, "(" + std::to_string(e.env) + "," + std::to_string(e.input) +
                                              ") is not an environment edge");
        }
    }
    SynthesisGame out = sg;
    out.game = GameGraph();
    for (StateId s = 0; s < sg.game.size(); ++s) out.game.add_state(sg.game.owner(s), sg.game.label(s));
    for (StateId s = 0; s < sg.game.size(); ++s) {
        for (StateId t : sg.game.successors(s)) {
            if (sg.is_env(s)) {
                const EnvEdge e = sg.edge_of_choice(t);
                if (std::find(removed.begin(), removed.end(), e) != removed.end()) continue;
            }
            out.game.add_edge(s, t);
        }
    }
    out.game.set_initial(sg.game.initial());
    return out;
}

struct SafetyResult
{
    Assumption assumption; ///< safety part only
    SynthesisGame safe;
    Region cooperative;
};

/**
 * Forbids every environment edge leaving the cooperative region of player
 * 0 from inside it. Raises SpecUnsatisfiable when the initial state is not
 * cooperatively winning.
 */
inline SafetyResult compute_safety_assumption(const SynthesisGame& sg)
{
    SafetyResult r;
    r.cooperative = cooperative_region(sg.game, sg.objective);
    const auto init = sg.game.initial();
    if (!init || !r.cooperative.contains(*init)) {
        throw Error(Errc::SpecUnsatisfiable, "no play from the initial state satisfies the automaton");
    }
    for (StateId q = 0; q < sg.env_count; ++q) {
        if (!r.cooperative.contains(q)) continue;
        for (StateId c : sg.game.successors(q)) {
            if (!r.cooperative.contains(c)) r.assumption.safety.push_back(sg.edge_of_choice(c));
        }
    }
    std::sort(r.assumption.safety.begin(), r.assumption.safety.end());
    r.safe = remove_env_edges(sg, r.assumption.safety);

    // Every reachable env state must keep a move.
    std::vector<char> seen(r.safe.game.size(), 0);
    std::vector<StateId> stack{*init};
    seen[*init] = 1;
    while (!stack.empty()) {
        const StateId s = stack.back();
        stack.pop_back();
        if (r.safe.game.successors(s).empty()) {
            throw Error(Errc::EnvDeadlocked, "state " + std::to_string(s) + " has no environment move left");
        }
        for (StateId t : r.safe.game.successors(s)) {
            if (!seen[t]) {
                seen[t] = 1;
                stack.push_back(t);
            }
        }
    }
    return r;
}

/// 2½-player game in which each env state with fair edges is entered
/// through a random wrapper state.
struct FairGame
{
    GameGraph game;
    Parity objective;
    std::vector<StateId> wrapper; ///< env state -> wrapper, or kNoState
    std::vector<StateId> wrapped; ///< wrapper index - base -> env state
    std::size_t base = 0;         ///< index of the first wrapper

    /// Env state a game state stands for (wrappers map to what they wrap).
    StateId unwrap(StateId s) const { return s >= base ? wrapped[s - base] : s; }
};

/**
 * Encodes strong transition fairness on `fair` by a random state that
 * picks uniformly among its env state and the fair successors; all edges
 * into the env state (and the initial mark) move to the wrapper.
 */
inline FairGame apply_fairness(const SynthesisGame& sg, std::span<const EnvEdge> fair)
{
    std::vector<std::vector<StateId>> targets(sg.env_count);
    for (const EnvEdge& e : fair) {
        if (!sg.has_env_edge(e)) {
            throw Error(Errc::NotEnvEdge, "(" + std::to_string(e.env) + "," + std::to_string(e.input) +
                                              ") is not an environment edge of the game");
        }
        auto& t = targets[e.env];
        const StateId c = sg.choice_state(e.env, e.input);
        if (std::find(t.begin(), t.end(), c) == t.end()) t.push_back(c);
    }

    FairGame f;
    const GameGraph& g = sg.game;
    f.base = g.size();
    f.wrapper.assign(sg.env_count, kNoState);
    StateId next = static_cast<StateId>(g.size());
    for (StateId q = 0; q < sg.env_count; ++q) {
        if (targets[q].empty()) continue;
        std::sort(targets[q].begin(), targets[q].end());
        f.wrapper[q] = next++;
        f.wrapped.push_back(q);
    }
    auto redirect = [&](StateId t) { return t < sg.env_count && f.wrapper[t] != kNoState ? f.wrapper[t] : t; };

    for (StateId s = 0; s < g.size(); ++s) f.game.add_state(g.owner(s), g.label(s));
    for (StateId q : f.wrapped) {
        f.game.add_state(Owner::Random, g.label(q) ? std::optional<std::string>(*g.label(q) + "~") : std::nullopt);
    }
    for (StateId s = 0; s < g.size(); ++s) {
        for (StateId t : g.successors(s)) f.game.add_edge(s, redirect(t));
    }
    for (StateId q : f.wrapped) {
        const StateId w = f.wrapper[q];
        f.game.add_edge(w, q);
        for (StateId c : targets[q]) f.game.add_edge(w, c);
    }
    f.objective = sg.objective;
    for (StateId q : f.wrapped) f.objective.priority.push_back(sg.objective.priority[q]);
    if (g.initial()) f.game.set_initial(redirect(*g.initial()));
    return f;
}

/// Whether the initial state is almost-sure winning for player 0 once the
/// safety edges are removed and the fair edges are enforced.
inline bool check_sufficiency(const SynthesisGame& sg, const Assumption& asm_)
{
    const SynthesisGame safe = asm_.safety.empty() ? sg : remove_env_edges(sg, asm_.safety);
    const FairGame f = apply_fairness(safe, asm_.fair);
    if (!f.game.initial()) return false;
    const auto r = almost_sure_solve(f.game, f.objective, Player::Zero);
    return r.region.contains(*f.game.initial());
}

/**
 * Greedy weakening: start from all environment edges fair and drop edges in
 * ascending (source, input) order while the assumption stays sufficient,
 * until a full pass changes nothing. Raises NoFairnessAssumptionExists if
 * even full fairness is insufficient.
 */
inline Assumption minimize_fairness(const SynthesisGame& safe)
{
    Assumption a;
    a.fair = safe.env_edges();
    if (!check_sufficiency(safe, a)) {
        throw Error(Errc::NoFairnessAssumptionExists, "even fairness on every environment edge is insufficient");
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t k = 0; k < a.fair.size();) {
            Assumption trial = a;
            trial.fair.erase(trial.fair.begin() + static_cast<std::ptrdiff_t>(k));
            if (check_sufficiency(safe, trial)) {
                a = std::move(trial);
                changed = true;
            } else {
                ++k;
            }
        }
    }
    return a;
}

/// Safety assumption followed by a locally minimal fairness assumption.
inline Assumption compute_assumption(const SynthesisGame& sg)
{
    auto safety = compute_safety_assumption(sg);
    Assumption a = minimize_fairness(safety.safe);
    a.safety = std::move(safety.assumption.safety);
    return a;
}

} // namespace qg
