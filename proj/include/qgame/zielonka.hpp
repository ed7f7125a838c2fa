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
#include <array>
#include <vector>

#include <qgame/attractor.hpp>
#include <qgame/game.hpp>
#include <qgame/objective.hpp>
#include <qgame/strategy.hpp>

namespace qg {

struct ParitySolution
{
    std::array<Region, 2> win;        ///< indexed by player
    std::array<Strategy, 2> strategy; ///< memoryless, on owned states of win[p]
};

/**
 * Recursive (McNaughton/Zielonka) parity game solver, min-even convention.
 *
 * The recursion is driven by an explicit frame stack: the first recursive
 * call of each level is a pushed frame, the second one is turned into a loop
 * on the same frame. Stack depth is bounded by the number of distinct
 * priorities, and native call depth stays constant.
 */
inline ParitySolution zielonka_solve(const GameGraph& g, const Parity& obj)
{
    if (g.has_random_states()) throw Error(Errc::NotDeterministicGame, "zielonka_solve needs a 2-player game");
    if (obj.priority.size() != g.size()) throw Error(Errc::InvalidGame, "priority map size mismatch");

    const std::size_t n = g.size();
    detail::Csr csr(g);
    detail::AttractorEngine engine(g, csr);
    std::vector<char> winner(n, 0), domain(n, 0), in_attr(n, 0);
    std::vector<StateId> str(n, kNoState), queue;

    struct Frame
    {
        std::vector<StateId> states;
        std::vector<StateId> sub;
        int player = 0;
        bool waiting = false;
    };
    std::vector<Frame> stack;
    {
        Frame root;
        root.states.resize(n);
        for (StateId s = 0; s < n; ++s) root.states[s] = s;
        stack.push_back(std::move(root));
    }

    auto set_mask = [](std::vector<char>& m, const std::vector<StateId>& xs, char v) {
        for (StateId s : xs) m[s] = v;
    };

    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.states.empty()) {
            stack.pop_back();
            continue;
        }
        if (!f.waiting) {
            Priority m = obj.priority[f.states.front()];
            for (StateId s : f.states) m = std::min(m, obj.priority[s]);
            const int i = static_cast<int>(m % 2);
            const Player pi = static_cast<Player>(i);

            set_mask(domain, f.states, 1);
            queue.clear();
            for (StateId s : f.states) {
                if (obj.priority[s] != m) continue;
                in_attr[s] = 1;
                queue.push_back(s);
                if (g.owner(s) == owner_of(pi)) {
                    for (StateId t : csr.succ(s)) {
                        if (domain[t]) {
                            str[s] = t;
                            break;
                        }
                    }
                }
            }
            engine.run(pi, RandomMode::Universal, &domain, in_attr, queue, str);
            std::vector<StateId> sub;
            sub.reserve(f.states.size() - queue.size());
            for (StateId s : f.states) {
                if (!in_attr[s]) sub.push_back(s);
            }
            set_mask(in_attr, queue, 0);
            set_mask(domain, f.states, 0);

            f.player = i;
            f.waiting = true;
            f.sub = sub;
            Frame child;
            child.states = std::move(sub);
            stack.push_back(std::move(child));
            continue;
        }

        // the sub-game below the attractor has been solved
        const int i = f.player;
        const char opp = static_cast<char>(1 - i);
        queue.clear();
        for (StateId s : f.sub) {
            if (winner[s] == opp) queue.push_back(s);
        }
        if (queue.empty()) {
            for (StateId s : f.states) winner[s] = static_cast<char>(i);
            stack.pop_back();
            continue;
        }
        set_mask(domain, f.states, 1);
        set_mask(in_attr, queue, 1);
        engine.run(static_cast<Player>(opp), RandomMode::Universal, &domain, in_attr, queue, str);
        for (StateId s : queue) winner[s] = opp;
        std::vector<StateId> rest;
        rest.reserve(f.states.size() - queue.size());
        for (StateId s : f.states) {
            if (!in_attr[s]) rest.push_back(s);
        }
        set_mask(in_attr, queue, 0);
        set_mask(domain, f.states, 0);
        f.states = std::move(rest);
        f.sub.clear();
        f.waiting = false;
    }

    ParitySolution sol;
    for (int p = 0; p < 2; ++p) {
        sol.win[p].player = static_cast<Player>(p);
        sol.win[p].mode = WinMode::Sure;
        sol.strategy[p] = Strategy(n);
    }
    for (StateId s = 0; s < n; ++s) {
        const int w = winner[s];
        sol.win[w].states.push_back(s);
        if (g.owner(s) == owner_of(static_cast<Player>(w)) && str[s] != kNoState) {
            sol.strategy[w].set_choice(s, str[s]);
        }
    }
    return sol;
}

} // namespace qg
