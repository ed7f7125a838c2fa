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
#include <bit>
#include <cstdint>
#include <vector>

#include <qgame/game.hpp>
#include <qgame/objective.hpp>
#include <qgame/scc.hpp>
#include <qgame/strategy.hpp>

// Exhaustive reference solvers for small games. They enumerate pure
// memoryless strategies and share no code path with the reductions.

namespace qg {

/// True iff the Markov chain (every state random) satisfies the min-even
/// parity objective with probability 1 from `from`: every bottom SCC
/// reachable from it has an even least priority.
inline bool markov_chain_almost_sure(const GameGraph& mc, const Parity& obj, StateId from)
{
    for (StateId s = 0; s < mc.size(); ++s) {
        if (mc.owner(s) != Owner::Random) throw Error(Errc::InvalidGame, "Markov chain has a non-random state");
    }
    detail::Csr csr(mc);
    auto sccs = detail::tarjan(csr, mc.size());
    std::vector<std::uint32_t> comp(mc.size());
    for (std::uint32_t c = 0; c < sccs.size(); ++c) {
        for (StateId s : sccs[c].states) comp[s] = c;
    }
    std::vector<char> seen(mc.size(), 0);
    std::vector<StateId> queue{from};
    seen[from] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (StateId t : csr.succ(queue[head])) {
            if (!seen[t]) {
                seen[t] = 1;
                queue.push_back(t);
            }
        }
    }
    std::vector<char> checked(sccs.size(), 0);
    for (StateId s : queue) {
        const auto c = comp[s];
        if (checked[c]) continue;
        checked[c] = 1;
        bool bottom = true;
        Priority least = obj.priority[s];
        for (StateId u : sccs[c].states) {
            least = std::min(least, obj.priority[u]);
            for (StateId t : csr.succ(u)) bottom &= comp[t] == c;
        }
        if (bottom && least % 2 != 0) return false;
    }
    return true;
}

namespace detail {

using Mask = std::uint32_t;

/// Positional choice profile over the states owned by one player.
class ChoiceOdometer
{
public:
    ChoiceOdometer(const GameGraph& g, Owner who)
    {
        for (StateId s = 0; s < g.size(); ++s) {
            if (g.owner(s) == who) {
                states_.push_back(s);
                radix_.push_back(static_cast<std::uint32_t>(g.successors(s).size()));
            }
        }
        digit_.assign(states_.size(), 0);
    }

    const std::vector<StateId>& states() const { return states_; }
    std::uint32_t digit(std::size_t k) const { return digit_[k]; }

    bool next()
    {
        for (std::size_t k = 0; k < digit_.size(); ++k) {
            if (++digit_[k] < radix_[k]) return true;
            digit_[k] = 0;
        }
        return false;
    }

private:
    std::vector<StateId> states_;
    std::vector<std::uint32_t> radix_;
    std::vector<std::uint32_t> digit_;
};

/// Successor bitmasks of the graph where the profiled states keep only
/// their chosen edge.
inline void apply_profile(const GameGraph& g, const ChoiceOdometer& odo, std::vector<Mask>& succ)
{
    for (std::size_t k = 0; k < odo.states().size(); ++k) {
        const StateId s = odo.states()[k];
        succ[s] = Mask{1} << g.successors(s)[odo.digit(k)];
    }
}

inline std::vector<Mask> full_successors(const GameGraph& g)
{
    std::vector<Mask> succ(g.size(), 0);
    for (StateId s = 0; s < g.size(); ++s) {
        for (StateId t : g.successors(s)) succ[s] |= Mask{1} << t;
    }
    return succ;
}

/// Reflexive-transitive closure of a successor relation.
inline std::vector<Mask> closure(const std::vector<Mask>& succ)
{
    const std::size_t n = succ.size();
    std::vector<Mask> reach(n);
    for (std::size_t s = 0; s < n; ++s) reach[s] = succ[s] | (Mask{1} << s);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t s = 0; s < n; ++s) {
            if (reach[s] >> k & 1u) reach[s] |= reach[k];
        }
    }
    return reach;
}

/// States of a finite Markov chain (successor masks) that satisfy the parity
/// objective of `player` with probability 1.
inline Mask chain_winners(const std::vector<Mask>& succ, const Parity& obj, Player player)
{
    const std::size_t n = succ.size();
    auto reach = closure(succ);
    Mask bad = 0;
    for (std::size_t s = 0; s < n; ++s) {
        bool bottom = true;
        for (std::size_t t = 0; t < n; ++t) {
            if ((reach[s] >> t & 1u) && !(reach[t] >> s & 1u)) bottom = false;
        }
        if (!bottom) continue;
        Priority least = obj.priority[s];
        for (std::size_t t = 0; t < n; ++t) {
            if (reach[s] >> t & 1u) least = std::min(least, obj.priority[t]);
        }
        if (!player_wins_parity(player, least)) bad |= Mask{1} << s;
    }
    Mask win = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (!(reach[s] & bad)) win |= Mask{1} << s;
    }
    return win;
}

inline Region mask_region(Mask m, std::size_t n, Player p)
{
    Region r{{}, p, WinMode::AlmostSure};
    for (StateId s = 0; s < n; ++s) {
        if (m >> s & 1u) r.states.push_back(s);
    }
    return r;
}

inline void check_bound(const GameGraph& g, std::size_t bound)
{
    if (g.size() > bound || g.size() > 31) {
        throw Error(Errc::TooLarge, "oracle limited to " + std::to_string(std::min<std::size_t>(bound, 31)) + " states");
    }
}

} // namespace detail

/**
 * Almost-sure region by brute force: states where some pure memoryless
 * strategy of `player` wins with probability 1 against every pure memoryless
 * opponent strategy, decided on each induced Markov chain.
 */
inline Region oracle_solve(const GameGraph& g, const Parity& obj, Player player, std::size_t bound = 10)
{
    using namespace detail;
    check_bound(g, bound);
    require_valid(g);
    const std::size_t n = g.size();
    const Mask all = n == 32 ? ~Mask{0} : (Mask{1} << n) - 1;
    const auto base = full_successors(g);
    ChoiceOdometer mine(g, owner_of(player));
    Mask region = 0;
    do {
        ChoiceOdometer theirs(g, owner_of(opponent(player)));
        std::vector<Mask> succ = base;
        apply_profile(g, mine, succ);
        Mask survive = all;
        do {
            apply_profile(g, theirs, succ);
            survive &= chain_winners(succ, obj, player);
        } while (survive && theirs.next());
        region |= survive;
    } while (region != all && mine.next());
    return mask_region(region, n, player);
}

namespace detail {

enum class Edges { Chosen, All };

/// Is `u` an end component when `controller` picks freely and the other
/// player is fixed by `succ_fixed`?
inline bool is_end_component(const GameGraph& g, Mask u, Owner controller, const std::vector<Mask>& succ_fixed,
                             const std::vector<Mask>& succ_all)
{
    const std::size_t n = g.size();
    std::vector<Mask> inside(n, 0);
    for (StateId s = 0; s < n; ++s) {
        if (!(u >> s & 1u)) continue;
        if (g.owner(s) == controller) {
            inside[s] = succ_all[s] & u;
            if (!inside[s]) return false;
        } else {
            if (succ_fixed[s] & ~u) return false;
            inside[s] = succ_fixed[s];
        }
    }
    auto reach = closure(inside);
    for (StateId s = 0; s < n; ++s) {
        if ((u >> s & 1u) && (reach[s] & u) != u) return false;
    }
    return true;
}

/// Almost-sure reachability of `target` in the MDP where `controller` picks
/// freely and everything else follows `succ_fixed`.
inline Mask almost_sure_reach(const GameGraph& g, Mask target, Owner controller, const std::vector<Mask>& succ_fixed,
                              const std::vector<Mask>& succ_all, Mask all)
{
    const std::size_t n = g.size();
    Mask w = all;
    while (true) {
        Mask r = target & w;
        for (bool grew = true; grew;) {
            grew = false;
            for (StateId s = 0; s < n; ++s) {
                if (!(w >> s & 1u) || (r >> s & 1u)) continue;
                const Mask out = g.owner(s) == controller ? succ_all[s] : succ_fixed[s];
                if (out & r) {
                    r |= Mask{1} << s;
                    grew = true;
                }
            }
        }
        Mask next = r;
        for (bool shrunk = true; shrunk;) {
            shrunk = false;
            for (StateId s = 0; s < n; ++s) {
                if (!(next >> s & 1u)) continue;
                const bool ok = g.owner(s) == controller ? (succ_all[s] & next) != 0 : (succ_fixed[s] & ~next) == 0;
                if (!ok) {
                    next &= ~(Mask{1} << s);
                    shrunk = true;
                }
            }
        }
        if (next == w) return w;
        w = next;
    }
}

} // namespace detail

/**
 * Almost-sure region for any objective given as a predicate on infinity
 * sets, by end-component enumeration over every subset of states.
 *
 * If `player`'s objective admits positional almost-sure strategies (Rabin
 * or parity), its positional strategies are enumerated and the opponent wins
 * with positive probability iff it can reach an end component whose state
 * set violates the objective. Otherwise (Streett) the opponent's positional
 * strategies are enumerated and `player` must reach the union of good end
 * components almost surely.
 */
inline Region oracle_solve_end_components(const GameGraph& g, const Objective& obj, Player player,
                                          std::size_t bound = 8)
{
    using namespace detail;
    check_bound(g, bound);
    require_valid(g);
    const std::size_t n = g.size();
    const Mask all = (Mask{1} << n) - 1;
    const auto succ_all = full_successors(g);

    auto wins = [&](Mask u) {
        std::vector<StateId> inf;
        for (StateId s = 0; s < n; ++s) {
            if (u >> s & 1u) inf.push_back(s);
        }
        return accepts_inf_set(obj, inf) == (player == Player::Zero);
    };

    const bool streett_like = (std::holds_alternative<Streett>(obj) && player == Player::Zero) ||
                              (std::holds_alternative<Rabin>(obj) && player == Player::One);
    const Owner mine = owner_of(player);
    const Owner theirs = owner_of(opponent(player));

    if (!streett_like) {
        Mask region = 0;
        ChoiceOdometer odo(g, mine);
        do {
            std::vector<Mask> succ = succ_all;
            apply_profile(g, odo, succ);
            Mask bad_reach = 0;
            auto reach = closure(succ);
            for (Mask u = 1; u <= all; ++u) {
                if (wins(u) || !is_end_component(g, u, theirs, succ, succ_all)) continue;
                for (StateId s = 0; s < n; ++s) {
                    if (reach[s] & u) bad_reach |= Mask{1} << s;
                }
            }
            region |= all & ~bad_reach;
        } while (region != all && odo.next());
        return mask_region(region, n, player);
    }

    Mask region = all;
    ChoiceOdometer odo(g, theirs);
    do {
        std::vector<Mask> succ = succ_all;
        apply_profile(g, odo, succ);
        Mask good = 0;
        for (Mask u = 1; u <= all; ++u) {
            if (wins(u) && is_end_component(g, u, mine, succ, succ_all)) good |= u;
        }
        region &= almost_sure_reach(g, good, mine, succ, succ_all, all);
    } while (region && odo.next());
    return mask_region(region, n, player);
}

} // namespace qg
