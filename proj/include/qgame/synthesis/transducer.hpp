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
#include <deque>
#include <map>
#include <utility>
#include <vector>

#include <qgame/almost_sure.hpp>
#include <qgame/synthesis/synthesis_game.hpp>

namespace qg {

/// Mealy machine: on input letter i in state q, emit output(q, i) and move
/// to next(q, i).
struct Transducer
{
    PropAlphabet alphabet;
    std::size_t states = 0;
    StateId initial = 0;
    std::vector<Letter> out;   ///< states * input letters
    std::vector<StateId> succ; ///< states * input letters

    Letter output(StateId q, Letter i) const { return out[static_cast<std::size_t>(q) * alphabet.input_letters() + i]; }
    StateId next(StateId q, Letter i) const { return succ[static_cast<std::size_t>(q) * alphabet.input_letters() + i]; }

    friend bool operator==(const Transducer&, const Transducer&) = default;
};

namespace detail {

/// Merges equivalent states (partition refinement) and renumbers the rest
/// in breadth-first order from the initial state, inputs ascending.
inline Transducer minimize(const Transducer& t)
{
    const Letter nin = t.alphabet.input_letters();
    std::vector<std::size_t> block(t.states, 0);
    std::size_t blocks = 0;
    while (true) {
        std::map<std::vector<std::size_t>, std::size_t> ids;
        std::vector<std::size_t> next(t.states);
        for (StateId q = 0; q < t.states; ++q) {
            std::vector<std::size_t> sig{block[q]};
            for (Letter i = 0; i < nin; ++i) {
                sig.push_back(t.output(q, i));
                sig.push_back(block[t.next(q, i)]);
            }
            next[q] = ids.emplace(std::move(sig), ids.size()).first->second;
        }
        block = std::move(next);
        if (ids.size() == blocks) break;
        blocks = ids.size();
    }

    std::vector<StateId> order(blocks, kNoState);
    std::vector<StateId> rep(blocks, kNoState);
    for (StateId q = 0; q < t.states; ++q) {
        if (rep[block[q]] == kNoState) rep[block[q]] = q;
    }
    std::deque<std::size_t> queue{block[t.initial]};
    std::vector<std::size_t> visit;
    order[block[t.initial]] = 0;
    while (!queue.empty()) {
        const auto b = queue.front();
        queue.pop_front();
        visit.push_back(b);
        for (Letter i = 0; i < nin; ++i) {
            const auto nb = block[t.next(rep[b], i)];
            if (order[nb] == kNoState) {
                order[nb] = static_cast<StateId>(visit.size() + queue.size());
                queue.push_back(nb);
            }
        }
    }
    Transducer m;
    m.alphabet = t.alphabet;
    m.states = visit.size();
    m.initial = 0;
    for (auto b : visit) {
        for (Letter i = 0; i < nin; ++i) {
            m.out.push_back(t.output(rep[b], i));
            m.succ.push_back(order[block[t.next(rep[b], i)]]);
        }
    }
    return m;
}

} // namespace detail

/**
 * Mealy machine of a player-0 strategy. `played` is the game the strategy
 * was computed on: the split game itself or its fairness-wrapped version
 * (`fair`), whose random wrappers are skipped. Inputs for which the
 * environment edge was removed lead to a state that emits the least output
 * forever. Raises StrategyIncomplete on a reachable choice state without a
 * choice.
 */
inline Transducer extract_transducer(const SynthesisGame& sg, const Strategy& sigma, const FairGame* fair = nullptr)
{
    const GameGraph& played = fair ? fair->game : sg.game;
    const Letter nin = sg.input_count();
    auto unwrap = [&](StateId s) { return fair ? fair->unwrap(s) : s; };
    auto advance = [&](MemoryId m, StateId s) { return sigma.memoryless() ? MemoryId{0} : sigma.update(m, s); };

    const StateId init_played = played.initial().value_or(0);

    // Transducer states are (env state, memory before entering it), where
    // entering passes through the wrapper when there is one.
    std::map<std::pair<StateId, MemoryId>, StateId> index;
    std::vector<std::pair<StateId, MemoryId>> pending;
    auto intern = [&](StateId q, MemoryId m) {
        auto [it, fresh] = index.emplace(std::make_pair(q, m), static_cast<StateId>(pending.size()));
        if (fresh) pending.emplace_back(q, m);
        return it->second;
    };
    auto enter = [&](StateId s, MemoryId m) {
        if (fair && s >= fair->base) {
            m = advance(m, s);
            s = fair->unwrap(s);
        }
        return std::make_pair(s, m);
    };

    Transducer t;
    t.alphabet = sg.alphabet;
    const StateId chaos_marker = kNoState;
    bool need_chaos = false;
    {
        auto [q0, m0] = enter(init_played, sigma.initial_memory());
        intern(q0, m0);
    }
    for (std::size_t k = 0; k < pending.size(); ++k) {
        const auto [q, m] = pending[k];
        const MemoryId m1 = advance(m, q);
        for (Letter i = 0; i < nin; ++i) {
            const StateId c = sg.choice_state(q, i);
            if (!played.has_edge(q, c)) {
                need_chaos = true;
                t.out.push_back(0);
                t.succ.push_back(chaos_marker);
                continue;
            }
            const auto target = sigma.choice(c, m1);
            if (!target) {
                throw Error(Errc::StrategyIncomplete, "no choice at reachable state " + std::to_string(c));
            }
            const auto env_target = unwrap(*target);
            const auto o = sg.output_towards(c, env_target);
            if (!o) throw Error(Errc::StrategyIncomplete, "choice at state " + std::to_string(c) + " is not an edge");
            const auto [q2, m2] = enter(*target, advance(m1, c));
            t.out.push_back(*o);
            t.succ.push_back(intern(q2, m2));
        }
    }
    t.states = pending.size();
    if (need_chaos) {
        const auto chaos = static_cast<StateId>(t.states++);
        for (auto& s : t.succ) {
            if (s == chaos_marker) s = chaos;
        }
        for (Letter i = 0; i < nin; ++i) {
            t.out.push_back(0);
            t.succ.push_back(chaos);
        }
    }
    t.initial = 0;
    return detail::minimize(t);
}

/// Transducer for the game constrained by `asm_`; raises SpecUnsatisfiable
/// if the assumption is not sufficient.
inline Transducer synthesize(const SynthesisGame& sg, const Assumption& asm_)
{
    const SynthesisGame safe = asm_.safety.empty() ? sg : remove_env_edges(sg, asm_.safety);
    const FairGame f = apply_fairness(safe, asm_.fair);
    auto r = almost_sure_solve(f.game, f.objective, Player::Zero);
    if (!f.game.initial() || !r.region.contains(*f.game.initial())) {
        throw Error(Errc::SpecUnsatisfiable, "the assumption is not sufficient");
    }
    return extract_transducer(safe, r.strategy, &f);
}

} // namespace qg
