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
#include <utility>
#include <vector>

#include <qgame/cooperative.hpp>
#include <qgame/synthesis/automaton.hpp>
#include <qgame/synthesis/synthesis_game.hpp>

namespace qg {

/**
 * Deterministic Streett automaton over full letters accepting exactly the
 * behaviours that satisfy the assumption, or that already violated the
 * specification through a system move.
 *
 * States: env states of the game, an accepting sink, a rejecting sink, and
 * one marker per (fair edge, successor env state). A marker stands for its
 * successor env state and records that the fair edge was just taken. Each
 * fair edge (q, i) yields the pair ({q} + markers standing for q, markers of
 * the edge); a nonempty safety part adds ({rejecting sink}, {}).
 */
inline DetAutomaton assumption_to_streett_automaton(const SynthesisGame& sg, const Assumption& asm_)
{
    const Region coop = cooperative_region(sg.game, sg.objective);
    const PropAlphabet& alpha = sg.alphabet;
    const Letter nin = alpha.input_letters();
    const Letter nout = alpha.output_letters();
    const auto env = static_cast<StateId>(sg.env_count);

    auto is_unsafe = [&](EnvEdge e) {
        return std::find(asm_.safety.begin(), asm_.safety.end(), e) != asm_.safety.end();
    };
    for (const auto* set : {&asm_.fair, &asm_.safety}) {
        for (const EnvEdge& e : *set) {
            if (e.env >= env || e.input >= nin) throw Error(Errc::NotEnvEdge, "assumption names a non-environment edge");
        }
    }

    // Successor env state of q on (i, o) in the split game.
    auto step = [&](StateId q, Letter i, Letter o) -> StateId {
        const StateId c = sg.choice_state(q, i);
        const auto succ = sg.game.successors(c);
        const auto& tags = sg.outputs[c - sg.env_count];
        for (std::size_t k = 0; k < succ.size(); ++k) {
            if (std::find(tags[k].begin(), tags[k].end(), o) != tags[k].end()) return succ[k];
        }
        throw Error(Errc::InvalidGame, "choice state without a successor for some output");
    };

    const StateId accept = env;
    const StateId reject = env + 1;
    std::map<std::pair<std::size_t, StateId>, StateId> markers; // (fair index, env successor)
    std::vector<std::pair<std::size_t, StateId>> marker_info;
    auto marker = [&](std::size_t f, StateId target) {
        auto [it, fresh] = markers.emplace(std::make_pair(f, target), static_cast<StateId>(env + 2 + marker_info.size()));
        if (fresh) marker_info.emplace_back(f, target);
        return it->second;
    };
    std::vector<EnvEdge> fair = asm_.fair;
    std::sort(fair.begin(), fair.end());
    fair.erase(std::unique(fair.begin(), fair.end()), fair.end());

    // Transition targets of an env state; markers are allocated lazily.
    auto row = [&](StateId q) {
        std::vector<StateId> out(alpha.letters());
        for (Letter i = 0; i < nin; ++i) {
            const EnvEdge e{q, i};
            const auto f = std::find(fair.begin(), fair.end(), e);
            for (Letter o = 0; o < nout; ++o) {
                StateId t;
                if (is_unsafe(e)) {
                    t = reject;
                } else {
                    const StateId next = step(q, i, o);
                    if (!coop.contains(next)) t = accept;
                    else if (f != fair.end()) t = marker(static_cast<std::size_t>(f - fair.begin()), next);
                    else t = next;
                }
                out[alpha.join(i, o)] = t;
            }
        }
        return out;
    };
    std::vector<std::vector<StateId>> rows(env);
    for (StateId q = 0; q < env; ++q) rows[q] = row(q);

    DetAutomaton a(alpha, env + 2 + marker_info.size());
    for (StateId q = 0; q < env; ++q) {
        for (Letter l = 0; l < alpha.letters(); ++l) a.set_next(q, l, rows[q][l]);
        a.labels[q] = sg.game.label(q);
    }
    for (Letter l = 0; l < alpha.letters(); ++l) {
        a.set_next(accept, l, accept);
        a.set_next(reject, l, reject);
    }
    a.labels[accept] = "accept";
    a.labels[reject] = "reject";
    for (std::size_t k = 0; k < marker_info.size(); ++k) {
        const auto [f, target] = marker_info[k];
        const auto m = static_cast<StateId>(env + 2 + k);
        for (Letter l = 0; l < alpha.letters(); ++l) a.set_next(m, l, rows[target][l]);
        a.labels[m] = "fair" + std::to_string(f) + ">" + std::to_string(target);
    }

    Streett acc;
    for (std::size_t f = 0; f < fair.size(); ++f) {
        AcceptancePair p;
        p.request.push_back(fair[f].env);
        for (std::size_t k = 0; k < marker_info.size(); ++k) {
            const auto m = static_cast<StateId>(env + 2 + k);
            if (marker_info[k].second == fair[f].env) p.request.push_back(m);
            if (marker_info[k].first == f) p.response.push_back(m);
        }
        std::sort(p.request.begin(), p.request.end());
        acc.pairs.push_back(std::move(p));
    }
    if (!asm_.safety.empty()) acc.pairs.push_back({{reject}, {}});
    a.acceptance = std::move(acc);

    const StateId init = sg.game.initial().value_or(0);
    a.initial = coop.contains(init) ? init : accept;
    return a;
}

} // namespace qg
