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
#include <vector>

#include <qgame/game.hpp>

namespace qg {

struct Scc
{
    std::vector<StateId> states; ///< ascending
    bool nontrivial = false;     ///< has an internal edge (a cycle)
};

namespace detail {

/**
 * Iterative Tarjan over the subgraph induced by `mask` (all states if null).
 * Components come out in reverse topological order: sinks first.
 */
inline std::vector<Scc> tarjan(const Csr& csr, std::size_t n, const std::vector<char>* mask = nullptr)
{
    constexpr std::uint32_t unvisited = kNoState;
    std::vector<std::uint32_t> index(n, unvisited), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<StateId> stack;
    std::vector<std::pair<StateId, std::uint32_t>> call; // state, next edge offset
    std::vector<Scc> out;
    std::uint32_t counter = 0;

    auto in = [&](StateId s) { return !mask || (*mask)[s]; };

    for (StateId root = 0; root < n; ++root) {
        if (!in(root) || index[root] != unvisited) continue;
        call.emplace_back(root, 0);
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            auto& [v, next] = call.back();
            auto succ = csr.succ(v);
            if (next < succ.size()) {
                StateId w = succ[next++];
                if (!in(w)) continue;
                if (index[w] == unvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            const StateId done = v;
            call.pop_back();
            if (!call.empty()) {
                StateId parent = call.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
            if (low[done] != index[done]) continue;
            Scc c;
            StateId w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = 0;
                c.states.push_back(w);
            } while (w != done);
            std::sort(c.states.begin(), c.states.end());
            if (c.states.size() > 1) {
                c.nontrivial = true;
            } else {
                for (StateId t : csr.succ(done)) c.nontrivial |= t == done;
            }
            out.push_back(std::move(c));
        }
    }
    return out;
}

} // namespace detail

/// Maximal strongly connected components in reverse topological order.
inline std::vector<Scc> scc_decompose(const GameGraph& g)
{
    detail::Csr csr(g);
    return detail::tarjan(csr, g.size());
}

} // namespace qg
