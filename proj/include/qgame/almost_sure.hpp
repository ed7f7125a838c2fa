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

#include <variant>
#include <vector>

#include <qgame/game.hpp>
#include <qgame/objective.hpp>
#include <qgame/reduction.hpp>
#include <qgame/strategy.hpp>
#include <qgame/zielonka.hpp>

namespace qg {

struct AlmostSureResult
{
    Region region;
    Strategy strategy;
};

/// Same graph with the two players' states swapped; random states stay.
inline GameGraph swap_players(const GameGraph& g)
{
    GameGraph d = g;
    for (StateId s = 0; s < g.size(); ++s) {
        if (g.owner(s) == Owner::Player0) d.set_owner(s, Owner::Player1);
        else if (g.owner(s) == Owner::Player1) d.set_owner(s, Owner::Player0);
    }
    return d;
}

namespace detail {

inline AlmostSureResult almost_sure_player0(const GameGraph& g, const Objective& obj)
{
    const auto n = static_cast<StateId>(g.size());
    AlmostSureResult out;
    out.region.player = Player::Zero;
    out.region.mode = g.has_random_states() ? WinMode::AlmostSure : WinMode::Sure;

    if (const auto* parity = std::get_if<Parity>(&obj)) {
        if (!g.has_random_states()) {
            ParitySolution sol = zielonka_solve(g, *parity);
            out.region.states = std::move(sol.win[0].states);
            out.strategy = std::move(sol.strategy[0]);
            return out;
        }
        ReductionResult red = reduce_stochastic_parity(g, *parity);
        ParitySolution sol = zielonka_solve(red.game, red.objective);
        for (StateId s : sol.win[0].states) {
            if (s < n) out.region.states.push_back(s);
        }
        out.strategy = pullback_strategy(g, red, sol.strategy[0], Player::Zero, out.region.states);
        return out;
    }

    ReductionResult lar = lar_reduce(g, obj);
    ReductionResult red = reduce_stochastic_parity(lar.game, lar.objective);
    ParitySolution sol = zielonka_solve(red.game, red.objective);
    const auto product_size = static_cast<StateId>(lar.game.size());
    std::vector<StateId> product_win;
    for (StateId x : sol.win[0].states) {
        if (x < product_size) product_win.push_back(x);
    }
    Strategy on_product = pullback_strategy(lar.game, red, sol.strategy[0], Player::Zero, product_win);
    for (StateId x : product_win) {
        if (x < n) out.region.states.push_back(x);
    }
    out.strategy = pullback_strategy(g, lar, on_product, Player::Zero, product_win);
    return out;
}

} // namespace detail

/**
 * States from which `player` wins with probability 1 (sure winning on
 * 2-player games), with a witness strategy.
 *
 * Parity objectives go through the announcement gadget and Zielonka; Rabin
 * and Streett objectives are first multiplied with a latest-appearance
 * record. Player 1 is solved as player 0 of the dual game: owners swapped
 * and the objective complemented.
 */
inline AlmostSureResult almost_sure_solve(const GameGraph& g, const Objective& obj, Player player)
{
    require_valid(g);
    if (auto issues = validate_objective(g, obj); !issues.empty()) throw Error(Errc::InvalidGame, issues.front());
    if (player == Player::Zero) return detail::almost_sure_player0(g, obj);
    AlmostSureResult r = detail::almost_sure_player0(swap_players(g), complement(obj));
    r.region.player = Player::One;
    return r;
}

} // namespace qg
