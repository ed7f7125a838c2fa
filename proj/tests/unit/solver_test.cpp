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

#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace qg;
using qgtest::random_graph;
using qgtest::random_parity;

namespace {

GameGraph self_loop(Owner o = Owner::Player0)
{
    GameGraph g(1, o);
    g.add_edge(0, 0);
    return g;
}

// Every play from `from` where `p`'s states follow `sigma` and the opponent
// plays any memoryless strategy is won by `p` (deterministic games).
bool strategy_wins(const GameGraph& g, const Parity& obj, Player p, const Strategy& sigma, StateId from)
{
    std::vector<StateId> opp;
    for (StateId s = 0; s < g.size(); ++s) {
        if (g.owner(s) == owner_of(opponent(p))) opp.push_back(s);
    }
    std::vector<std::size_t> pick(opp.size(), 0);
    while (true) {
        std::vector<StateId> next(g.size(), kNoState);
        for (StateId s = 0; s < g.size(); ++s) {
            if (g.owner(s) == owner_of(p)) {
                auto t = sigma.choice(s);
                if (!t) return false;
                next[s] = *t;
            }
        }
        for (std::size_t k = 0; k < opp.size(); ++k) next[opp[k]] = g.successors(opp[k])[pick[k]];
        std::vector<std::size_t> seen(g.size(), SIZE_MAX);
        StateId s = from;
        std::size_t step = 0;
        std::vector<StateId> path;
        while (seen[s] == SIZE_MAX) {
            seen[s] = step++;
            path.push_back(s);
            s = next[s];
        }
        Priority least = std::numeric_limits<Priority>::max();
        for (std::size_t k = seen[s]; k < path.size(); ++k) least = std::min(least, obj.priority[path[k]]);
        if (!player_wins_parity(p, least)) return false;
        std::size_t k = 0;
        while (k < opp.size() && ++pick[k] == g.successors(opp[k]).size()) pick[k++] = 0;
        if (k == opp.size()) return true;
    }
}

// States with some lasso path whose cycle has an even least priority.
std::vector<StateId> lasso_cooperative(const GameGraph& g, const Parity& obj)
{
    const auto n = g.size();
    std::vector<StateId> out;
    // s is cooperative iff it reaches a state c lying on a cycle (within the
    // states of priority >= e) containing an even priority e as minimum.
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    auto closure_within = [&](Priority floor) {
        std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
        for (StateId s = 0; s < n; ++s) {
            if (obj.priority[s] < floor) continue;
            std::vector<StateId> stack{s};
            while (!stack.empty()) {
                const StateId u = stack.back();
                stack.pop_back();
                for (StateId t : g.successors(u)) {
                    if (obj.priority[t] >= floor && !r[s][t]) {
                        r[s][t] = 1;
                        stack.push_back(t);
                    }
                }
            }
        }
        return r;
    };
    const auto full = closure_within(0);
    std::vector<char> good(n, 0);
    for (StateId c = 0; c < n; ++c) {
        if (obj.priority[c] % 2 == 0 && closure_within(obj.priority[c])[c][c]) good[c] = 1;
    }
    for (StateId s = 0; s < n; ++s) {
        bool ok = good[s];
        for (StateId c = 0; c < n && !ok; ++c) ok = good[c] && full[s][c];
        if (ok) out.push_back(s);
    }
    return out;
}

} // namespace

TEST(Zielonka, SingleLoops)
{
    auto sol = zielonka_solve(self_loop(), Parity{{0}});
    EXPECT_EQ(sol.win[0].states, std::vector<StateId>{0});
    EXPECT_TRUE(sol.win[1].states.empty());
    sol = zielonka_solve(self_loop(), Parity{{1}});
    EXPECT_EQ(sol.win[1].states, std::vector<StateId>{0});
}

TEST(Zielonka, RejectsRandomStates)
{
    try {
        zielonka_solve(self_loop(Owner::Random), Parity{{0}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NotDeterministicGame);
    }
}

TEST(Zielonka, GrantCancelGameIsLostByTheSystem)
{
    const auto sg = dpa_to_synthesis_game(qgtest::grant_cancel_automaton());
    const auto sol = zielonka_solve(sg.game, sg.objective);
    EXPECT_TRUE(sol.win[1].contains(*sg.game.initial()));
}

TEST(Zielonka, PartitionAndStrategySoundnessOnSmallGames)
{
    SplitMix64 rng(2024);
    for (int round = 0; round < 400; ++round) {
        const auto n = 1 + rng.below(7);
        const GameGraph g = random_graph(rng, n, 3, false);
        const Parity obj = random_parity(rng, n, 1 + rng.below(4));
        const auto sol = zielonka_solve(g, obj);
        std::vector<StateId> all = sol.win[0].states;
        all.insert(all.end(), sol.win[1].states.begin(), sol.win[1].states.end());
        std::sort(all.begin(), all.end());
        ASSERT_EQ(all.size(), n);
        for (StateId s = 0; s < n; ++s) ASSERT_EQ(all[s], s);
        for (int p = 0; p < 2; ++p) {
            const Player pl = p ? Player::One : Player::Zero;
            for (StateId s : sol.win[p].states) {
                if (g.owner(s) == owner_of(pl)) {
                    auto t = sol.strategy[p].choice(s);
                    ASSERT_TRUE(t);
                    EXPECT_TRUE(sol.win[p].contains(*t));
                }
            }
            // restrict the strategy check to the region: outside states are
            // never reached, give them an arbitrary edge
            Strategy full = sol.strategy[p];
            for (StateId s = 0; s < n; ++s) {
                if (g.owner(s) == owner_of(pl) && !full.choice(s)) full.set_choice(s, g.successors(s)[0]);
            }
            for (StateId s : sol.win[p].states) EXPECT_TRUE(strategy_wins(g, obj, pl, full, s)) << "round " << round;
        }
    }
}

TEST(Zielonka, AgreesWithOracleOnTwoPlayerGames)
{
    SplitMix64 rng(77);
    for (int round = 0; round < 300; ++round) {
        const auto n = 1 + rng.below(6);
        const GameGraph g = random_graph(rng, n, 3, false);
        const Parity obj = random_parity(rng, n, 1 + rng.below(4));
        const auto sol = zielonka_solve(g, obj);
        EXPECT_EQ(sol.win[0].states, oracle_solve(g, obj, Player::Zero).states);
        EXPECT_EQ(sol.win[1].states, oracle_solve(g, obj, Player::One).states);
    }
}

TEST(Zielonka, DeepGameDoesNotOverflowTheStack)
{
    // long chain with decreasing priorities forces deep recursion
    const std::size_t n = 100000;
    GameGraph g(n, Owner::Player0);
    Parity obj;
    for (StateId s = 0; s < n; ++s) {
        g.add_edge(s, s + 1 < n ? s + 1 : s);
        if (s > 0) g.add_edge(s, s - 1);
        obj.priority.push_back(static_cast<Priority>(s % 7));
    }
    const auto sol = zielonka_solve(g, obj);
    EXPECT_EQ(sol.win[0].size() + sol.win[1].size(), n);
}

TEST(Cooperative, Examples)
{
    EXPECT_EQ(cooperative_region(self_loop(), Parity{{0}}).states, std::vector<StateId>{0});
    EXPECT_TRUE(cooperative_region(self_loop(), Parity{{1}}).states.empty());
    GameGraph g(2, Owner::Player1);
    g.add_edge(0, 1);
    g.add_edge(1, 1);
    EXPECT_EQ(cooperative_region(g, Parity{{1, 0}}).states, (std::vector<StateId>{0, 1}));
    EXPECT_THROW(cooperative_region(self_loop(Owner::Random), Parity{{0}}), Error);
}

TEST(Cooperative, MatchesLassoEnumeration)
{
    SplitMix64 rng(31);
    for (int round = 0; round < 500; ++round) {
        const auto n = 1 + rng.below(9);
        const GameGraph g = random_graph(rng, n, 3, false);
        const Parity obj = random_parity(rng, n, 1 + rng.below(5));
        EXPECT_EQ(cooperative_region(g, obj).states, lasso_cooperative(g, obj));
    }
}

TEST(MarkovChain, Examples)
{
    EXPECT_TRUE(markov_chain_almost_sure(self_loop(Owner::Random), Parity{{0}}, 0));
    EXPECT_FALSE(markov_chain_almost_sure(self_loop(Owner::Random), Parity{{1}}, 0));
    GameGraph mc(3, Owner::Random);
    mc.add_edge(0, 1);
    mc.add_edge(0, 2);
    mc.add_edge(1, 1);
    mc.add_edge(2, 2);
    EXPECT_FALSE(markov_chain_almost_sure(mc, Parity{{0, 0, 1}}, 0));
    EXPECT_TRUE(markov_chain_almost_sure(mc, Parity{{1, 0, 2}}, 0));
}
