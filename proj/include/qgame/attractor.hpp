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
#include <span>
#include <vector>

#include <qgame/game.hpp>
#include <qgame/strategy.hpp>

namespace qg {

/// How random states are attracted: with one successor in the set
/// (Existential) or only with all of them (Universal).
enum class RandomMode { Existential, Universal };

namespace detail {

/**
 * Reusable attractor engine. Scratch buffers are kept between calls so the
 * recursive solvers do not reallocate per level.
 */
class AttractorEngine
{
public:
    AttractorEngine(const GameGraph& g, const Csr& csr) : g_(g), csr_(csr), count_(g.size(), -1) {}

    /**
     * Extends `in_attr` to the attractor of its current content for `player`,
     * restricted to states with `domain[s] != 0` (all states if `domain` is
     * null). `queue` holds the seed states (already marked) and receives every
     * attracted state. `choice[v]` is set for attracted states owned by
     * `player` to a successor that joined earlier.
     */
    void run(Player player, RandomMode mode, const std::vector<char>* domain, std::vector<char>& in_attr,
             std::vector<StateId>& queue, std::vector<StateId>& choice)
    {
        const Owner mine = owner_of(player);
        touched_.clear();
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const StateId u = queue[head];
            for (StateId v : csr_.pred(u)) {
                if (in_attr[v] || (domain && !(*domain)[v])) continue;
                const Owner o = g_.owner(v);
                bool take = false;
                if (o == mine || (o == Owner::Random && mode == RandomMode::Existential)) {
                    take = true;
                } else {
                    if (count_[v] < 0) {
                        int c = 0;
                        for (StateId w : csr_.succ(v)) {
                            if (!domain || (*domain)[w]) ++c;
                        }
                        count_[v] = c;
                        touched_.push_back(v);
                    }
                    take = --count_[v] == 0;
                }
                if (take) {
                    in_attr[v] = 1;
                    if (o == mine) choice[v] = u;
                    queue.push_back(v);
                }
            }
        }
        for (StateId v : touched_) count_[v] = -1;
    }

private:
    const GameGraph& g_;
    const Csr& csr_;
    std::vector<int> count_;
    std::vector<StateId> touched_;
};

} // namespace detail

struct AttractorResult
{
    std::vector<StateId> states; ///< ascending
    Strategy strategy;           ///< memoryless, on attracted owned states outside the target
};

/// Least superset of `target` from which `player` can force a visit to
/// `target`. Random states join per `mode`.
inline AttractorResult attractor(const GameGraph& g, Player player, std::span<const StateId> target,
                                 RandomMode mode = RandomMode::Existential)
{
    detail::Csr csr(g);
    detail::AttractorEngine engine(g, csr);
    std::vector<char> in_attr(g.size(), 0);
    std::vector<StateId> queue;
    for (StateId s : target) {
        if (!in_attr.at(s)) {
            in_attr[s] = 1;
            queue.push_back(s);
        }
    }
    std::vector<StateId> choice(g.size(), kNoState);
    engine.run(player, mode, nullptr, in_attr, queue, choice);

    AttractorResult r;
    r.states = detail::to_list(in_attr);
    r.strategy = Strategy(g.size());
    for (StateId s = 0; s < g.size(); ++s) {
        if (choice[s] != kNoState) r.strategy.set_choice(s, choice[s]);
    }
    return r;
}

} // namespace qg
