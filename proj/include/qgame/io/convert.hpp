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
#include <map>
#include <string>
#include <vector>

#include <qgame/error.hpp>
#include <qgame/game.hpp>
#include <qgame/io/label.hpp>
#include <qgame/io/structure.hpp>
#include <qgame/objective.hpp>
#include <qgame/synthesis/automaton.hpp>
#include <qgame/synthesis/synthesis_game.hpp>
#include <qgame/synthesis/transducer.hpp>

namespace qg {

struct LoadedGame
{
    GameGraph game;
    Objective objective;
    std::vector<std::uint64_t> sids; ///< state index -> sid in the file
};

namespace detail {

using SidIndex = std::map<std::uint64_t, StateId>;

inline SidIndex sid_index(const StructureDocument& doc)
{
    SidIndex index;
    std::vector<std::uint64_t> sids;
    for (const auto& s : doc.states) sids.push_back(s.sid);
    std::sort(sids.begin(), sids.end());
    for (auto sid : sids) index.emplace(sid, static_cast<StateId>(index.size()));
    return index;
}

inline std::vector<StateId> map_ids(const SidIndex& index, const std::vector<std::uint64_t>& ids)
{
    std::vector<StateId> out;
    for (auto id : ids) out.push_back(index.at(id));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline Objective objective_from(const Acceptance& acc, const SidIndex& index)
{
    const std::size_t n = index.size();
    switch (acc.type) {
    case AccType::Parity: {
        Parity p;
        p.priority.assign(n, 0);
        for (std::size_t k = 0; k < acc.sets.size(); ++k) {
            for (StateId s : map_ids(index, acc.sets[k].states)) p.priority[s] = static_cast<Priority>(k);
        }
        return p;
    }
    case AccType::Buchi: {
        const auto f = map_ids(index, acc.sets.front().states);
        return buchi(n, f);
    }
    case AccType::Rabin:
    case AccType::Streett: {
        std::vector<AcceptancePair> pairs;
        for (const auto& set : acc.sets) pairs.push_back({map_ids(index, set.e), map_ids(index, set.f)});
        if (acc.type == AccType::Rabin) return Rabin{std::move(pairs)};
        return Streett{std::move(pairs)};
    }
    }
    return Parity{};
}

inline Acceptance acceptance_from(const Objective& obj)
{
    Acceptance acc;
    std::visit(
        [&](const auto& o) {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, Parity>) {
                acc.type = AccType::Parity;
                acc.sets.resize(static_cast<std::size_t>(o.max_priority()) + 1);
                for (StateId s = 0; s < o.priority.size(); ++s) acc.sets[o.priority[s]].states.push_back(s);
            } else {
                acc.type = std::is_same_v<T, Streett> ? AccType::Streett : AccType::Rabin;
                for (const auto& p : o.pairs) {
                    AccSet set;
                    set.paired = true;
                    set.e.assign(p.request.begin(), p.request.end());
                    set.f.assign(p.response.begin(), p.response.end());
                    acc.sets.push_back(std::move(set));
                }
            }
        },
        obj);
    return acc;
}

} // namespace detail

/**
 * Game graph and objective of a `type="game"` document. States are
 * numbered by ascending sid; player -1 becomes a random state with uniform
 * weights; parallel transitions collapse to one edge.
 */
inline LoadedGame game_from_document(const StructureDocument& doc)
{
    if (doc.kind != StructureKind::Game) throw Error(Errc::SchemaError, "expected a structure of type game");
    if (!doc.acceptance) throw Error(Errc::SchemaError, "rule 'acc' violated: a game needs an acceptance condition");
    const auto index = detail::sid_index(doc);
    LoadedGame r;
    const auto states = canonicalize(doc).states;
    for (const auto& s : states) {
        const Owner owner = *s.player == 0 ? Owner::Player0 : *s.player == 1 ? Owner::Player1 : Owner::Random;
        r.game.add_state(owner, s.label);
        r.sids.push_back(s.sid);
    }
    for (const auto& t : canonicalize(doc).transitions) {
        const StateId from = index.at(t.from);
        const StateId to = index.at(t.to);
        if (!r.game.has_edge(from, to)) r.game.add_edge(from, to);
    }
    r.game.set_initial(index.at(doc.initial.front()));
    r.objective = detail::objective_from(*doc.acceptance, index);
    if (const auto v = validate_game(r.game); !v.empty()) {
        throw Error(Errc::InvalidGame, v.front().message());
    }
    return r;
}

/// Document for a game: sid = state index, transitions numbered in edge
/// order. Without an initial state, state 0 is marked initial.
inline StructureDocument document_from_game(const GameGraph& g, const Objective& obj)
{
    StructureDocument doc;
    doc.kind = StructureKind::Game;
    for (StateId s = 0; s < g.size(); ++s) {
        StateDecl d;
        d.sid = s;
        d.player = g.owner(s) == Owner::Player0 ? 0 : g.owner(s) == Owner::Player1 ? 1 : -1;
        d.label = g.label(s);
        doc.states.push_back(std::move(d));
    }
    std::uint64_t tid = 0;
    for (StateId s = 0; s < g.size(); ++s) {
        for (StateId t : g.successors(s)) doc.transitions.push_back({tid++, s, t, std::nullopt});
    }
    doc.initial.push_back(g.initial().value_or(0));
    doc.acceptance = detail::acceptance_from(obj);
    return doc;
}

/**
 * Deterministic automaton of a `type="fa"` document. Props typed output
 * become outputs, all others inputs (declaration order kept). Raises
 * NonDeterministicAutomaton for several initial states or two transitions
 * disagreeing on a letter.
 */
inline DetAutomaton automaton_from_document(const StructureDocument& doc)
{
    if (doc.kind != StructureKind::Fa) throw Error(Errc::SchemaError, "expected a structure of type fa");
    if (!doc.acceptance) throw Error(Errc::SchemaError, "rule 'acc' violated: an automaton needs an acceptance condition");
    if (doc.initial.size() != 1) throw Error(Errc::NonDeterministicAutomaton, "automaton has several initial states");

    PropAlphabet alpha;
    std::vector<std::size_t> bit(doc.props.size());
    for (std::size_t k = 0; k < doc.props.size(); ++k) {
        if (doc.props[k].type != PropType::Output) {
            bit[k] = alpha.inputs.size();
            alpha.inputs.push_back(doc.props[k].name);
        }
    }
    for (std::size_t k = 0; k < doc.props.size(); ++k) {
        if (doc.props[k].type == PropType::Output) {
            bit[k] = alpha.inputs.size() + alpha.outputs.size();
            alpha.outputs.push_back(doc.props[k].name);
        }
    }
    alpha.validate(false);

    const auto index = detail::sid_index(doc);
    const auto names = doc.prop_names();
    DetAutomaton a(alpha, index.size());
    const auto canon = canonicalize(doc);
    for (const auto& s : canon.states) a.labels[index.at(s.sid)] = s.label;
    for (const auto& t : canon.transitions) {
        const Label label = parse_label(t.read.value_or("T"), names);
        Letter care = 0, value = 0;
        for (const Literal& l : label.literals) {
            care |= Letter{1} << bit[l.prop];
            if (l.positive) value |= Letter{1} << bit[l.prop];
        }
        const StateId from = index.at(t.from);
        const StateId to = index.at(t.to);
        for (Letter x = 0; x < alpha.letters(); ++x) {
            if ((x & care) != value) continue;
            const StateId old = a.next(from, x);
            if (old != kNoState && old != to) {
                throw Error(Errc::NonDeterministicAutomaton, "transition " + std::to_string(t.tid) +
                                                                 " conflicts with another on letter " +
                                                                 alpha.format_letter(x));
            }
            a.set_next(from, x, to);
        }
    }
    a.initial = index.at(doc.initial.front());
    a.acceptance = detail::objective_from(*doc.acceptance, index);
    return a;
}

/// Document for an automaton. A state whose letters all lead to one target
/// gets a single `T` transition, otherwise one transition per letter.
inline StructureDocument document_from_automaton(const DetAutomaton& a)
{
    StructureDocument doc;
    doc.kind = StructureKind::Fa;
    for (const auto& p : a.alphabet.inputs) doc.props.push_back({p, PropType::Input});
    for (const auto& p : a.alphabet.outputs) doc.props.push_back({p, PropType::Output});
    for (StateId q = 0; q < a.states; ++q) doc.states.push_back({q, std::nullopt, a.labels[q]});
    std::uint64_t tid = 0;
    for (StateId q = 0; q < a.states; ++q) {
        bool uniform = true;
        for (Letter x = 1; x < a.alphabet.letters(); ++x) uniform = uniform && a.next(q, x) == a.next(q, 0);
        if (uniform && a.next(q, 0) != kNoState) {
            doc.transitions.push_back({tid++, q, a.next(q, 0), "T"});
            continue;
        }
        for (Letter x = 0; x < a.alphabet.letters(); ++x) {
            if (a.next(q, x) == kNoState) continue;
            doc.transitions.push_back({tid++, q, a.next(q, x), a.alphabet.format_letter(x)});
        }
    }
    doc.initial.push_back(a.initial);
    doc.acceptance = detail::acceptance_from(a.acceptance);
    return doc;
}

/// Document for a split game; env edges are labelled with their input and
/// choice edges with their output when a single letter leads there.
inline StructureDocument document_from_synthesis_game(const SynthesisGame& sg)
{
    StructureDocument doc = document_from_game(sg.game, sg.objective);
    for (const auto& p : sg.alphabet.inputs) doc.props.push_back({p, PropType::Input});
    for (const auto& p : sg.alphabet.outputs) doc.props.push_back({p, PropType::Output});
    for (auto& t : doc.transitions) {
        const auto from = static_cast<StateId>(t.from);
        const auto to = static_cast<StateId>(t.to);
        if (sg.is_env(from)) {
            t.read = sg.alphabet.format_input(sg.edge_of_choice(to).input);
        } else if (from < sg.game.size() && !sg.is_env(from)) {
            const auto succ = sg.game.successors(from);
            const auto k = static_cast<std::size_t>(std::find(succ.begin(), succ.end(), to) - succ.begin());
            const auto& tags = sg.outputs[from - sg.env_count][k];
            if (tags.size() == 1) t.read = sg.alphabet.format_output(tags.front());
        }
    }
    return doc;
}

/// Mealy machine as an automaton document without acceptance; each
/// transition reads the full letter (input and emitted output).
inline StructureDocument document_from_transducer(const Transducer& t)
{
    StructureDocument doc;
    doc.kind = StructureKind::Fa;
    for (const auto& p : t.alphabet.inputs) doc.props.push_back({p, PropType::Input});
    for (const auto& p : t.alphabet.outputs) doc.props.push_back({p, PropType::Output});
    for (StateId q = 0; q < t.states; ++q) doc.states.push_back({q, std::nullopt, std::nullopt});
    std::uint64_t tid = 0;
    for (StateId q = 0; q < t.states; ++q) {
        for (Letter i = 0; i < t.alphabet.input_letters(); ++i) {
            doc.transitions.push_back(
                {tid++, q, t.next(q, i), t.alphabet.format_letter(t.alphabet.join(i, t.output(q, i)))});
        }
    }
    doc.initial.push_back(t.initial);
    return doc;
}

} // namespace qg
