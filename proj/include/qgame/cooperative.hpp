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

#include <vector>

#include <qgame/game.hpp>
#include <qgame/objective.hpp>
#include <qgame/scc.hpp>
#include <qgame/strategy.hpp>

namespace qg {

/// States from which some infinite path satisfies the parity objective of
/// player 0, i.e. both players cooperating.
inline Region cooperative_region(const GameGraph& g, const Parity& obj)
{
    if (g.has_random_states()) {
        throw Error(Errc::NotDeterministicGame, "cooperative region is defined for 2-player games");
    }
    const std::size_t n = g.size();
    detail::Csr csr(g);
    std::vector<char> good(n, 0), mask(n, 0);
    const Priority top = obj.max_priority();
    for (Priority e = 0; e <= top; e += 2) {
        bool any = false;
        for (StateId s = 0; s < n; ++s) {
            mask[s] = obj.priority[s] >= e;
            any |= obj.priority[s] == e;
        }
        if (!any) continue;
        for (const Scc& c : detail::tarjan(csr, n, &mask)) {
            if (!c.nontrivial) continue;
            bool hit = false;
            for (StateId s : c.states) hit |= obj.priority[s] == e;
            if (!hit) continue;
            for (StateId s : c.states) good[s] = 1;
        }
    }
    std::vector<StateId> queue = detail::to_list(good);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (StateId v : csr.pred(queue[head])) {
            if (!good[v]) {
                good[v] = 1;
                queue.push_back(v);
            }
        }
    }
    return Region{detail::to_list(good), Player::Zero, WinMode::Cooperative};
}

} // namespace qg
