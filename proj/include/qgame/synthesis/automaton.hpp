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
#include <span>
#include <string>
#include <vector>

#include <qgame/error.hpp>
#include <qgame/game.hpp>
#include <qgame/objective.hpp>
#include <qgame/synthesis/alphabet.hpp>

namespace qg {

/**
 * Deterministic automaton over full letters with state-based acceptance.
 * `next(q, a)` is kNoState where no transition is defined.
 */
struct DetAutomaton
{
    PropAlphabet alphabet;
    std::size_t states = 0;
    StateId initial = 0;
    std::vector<StateId> delta; ///< states * letters
    Objective acceptance = Parity{};
    std::vector<std::optional<std::string>> labels;

    DetAutomaton() = default;
    DetAutomaton(PropAlphabet a, std::size_t n)
        : alphabet(std::move(a)), states(n), delta(n * alphabet.letters(), kNoState), labels(n)
    {
    }

    StateId next(StateId q, Letter a) const { return delta[static_cast<std::size_t>(q) * alphabet.letters() + a]; }
    void set_next(StateId q, Letter a, StateId t) { delta[static_cast<std::size_t>(q) * alphabet.letters() + a] = t; }

    bool complete() const { return std::find(delta.begin(), delta.end(), kNoState) == delta.end(); }

    /// Adds a rejecting sink (parity priority 1) for all missing
    /// transitions; returns false if nothing was missing.
    bool complete_with_sink()
    {
        if (complete()) return false;
        auto* parity = std::get_if<Parity>(&acceptance);
        if (!parity) throw Error(Errc::InvalidSpec, "completion needs parity acceptance");
        const auto sink = static_cast<StateId>(states++);
        delta.resize(states * alphabet.letters(), kNoState);
        labels.emplace_back("sink");
        parity->priority.push_back(1);
        for (auto& t : delta) {
            if (t == kNoState) t = sink;
        }
        return true;
    }

    /// Run on a lasso; returns the sorted set of states seen infinitely
    /// often, or nothing if the run hits a missing transition.
    std::optional<std::vector<StateId>> infinity_set(std::span<const Letter> stem, std::span<const Letter> cycle) const
    {
        StateId q = initial;
        for (Letter a : stem) {
            q = next(q, a);
            if (q == kNoState) return std::nullopt;
        }
        // Iterate the cycle until the state at its start repeats.
        std::vector<StateId> starts;
        while (std::find(starts.begin(), starts.end(), q) == starts.end()) {
            starts.push_back(q);
            for (Letter a : cycle) {
                q = next(q, a);
                if (q == kNoState) return std::nullopt;
            }
        }
        std::vector<StateId> inf;
        const StateId entry = q;
        do {
            for (Letter a : cycle) {
                inf.push_back(q);
                q = next(q, a);
            }
        } while (q != entry);
        std::sort(inf.begin(), inf.end());
        inf.erase(std::unique(inf.begin(), inf.end()), inf.end());
        return inf;
    }

    bool accepts(std::span<const Letter> stem, std::span<const Letter> cycle) const
    {
        auto inf = infinity_set(stem, cycle);
        return inf && accepts_inf_set(acceptance, *inf);
    }
};

/// Deterministic parity automaton: a DetAutomaton whose acceptance is Parity.
using DetParityAutomaton = DetAutomaton;

} // namespace qg
