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
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <qgame/game.hpp>

namespace qg {

using Priority = std::uint32_t;

/// Min-even parity: player 0 wins a play iff the least priority seen
/// infinitely often is even.
struct Parity
{
    std::vector<Priority> priority;

    Priority max_priority() const
    {
        return priority.empty() ? 0 : *std::max_element(priority.begin(), priority.end());
    }

    friend bool operator==(const Parity&, const Parity&) = default;
};

/// Request/response pair (Q, R). Both lists are kept sorted.
struct AcceptancePair
{
    std::vector<StateId> request;
    std::vector<StateId> response;

    friend bool operator==(const AcceptancePair&, const AcceptancePair&) = default;
};

/// Player 0 wins iff every request seen infinitely often is answered by a
/// response seen infinitely often.
struct Streett
{
    std::vector<AcceptancePair> pairs;
    friend bool operator==(const Streett&, const Streett&) = default;
};

/// Player 0 wins iff some pair has its request seen infinitely often and its
/// response only finitely often. Complement of Streett on the same pairs.
struct Rabin
{
    std::vector<AcceptancePair> pairs;
    friend bool operator==(const Rabin&, const Rabin&) = default;
};

using Objective = std::variant<Parity, Streett, Rabin>;

inline bool is_parity(const Objective& o) { return std::holds_alternative<Parity>(o); }

/// Büchi(F): priority 0 on F, 1 elsewhere.
inline Parity buchi(std::size_t states, std::span<const StateId> accepting)
{
    Parity p{std::vector<Priority>(states, 1)};
    for (StateId s : accepting) p.priority.at(s) = 0;
    return p;
}

/// coBüchi(F): priority 2 on F, 1 elsewhere; play must eventually stay in F.
inline Parity co_buchi(std::size_t states, std::span<const StateId> stay)
{
    Parity p{std::vector<Priority>(states, 1)};
    for (StateId s : stay) p.priority.at(s) = 2;
    return p;
}

/// Smallest even number not below the largest priority.
inline Priority even_ceiling(Priority max_priority) { return max_priority + (max_priority & 1u); }

inline bool player_wins_parity(Player p, Priority min_inf)
{
    return (min_inf % 2 == 0) == (p == Player::Zero);
}

namespace detail {

inline bool intersects(std::span<const StateId> sorted_set, std::span<const StateId> inf)
{
    return std::any_of(inf.begin(), inf.end(),
                       [&](StateId s) { return std::binary_search(sorted_set.begin(), sorted_set.end(), s); });
}

} // namespace detail

/// Evaluates an objective for player 0 on the set of states visited
/// infinitely often.
inline bool accepts_inf_set(const Objective& obj, std::span<const StateId> inf)
{
    return std::visit(
        [&](const auto& o) -> bool {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, Parity>) {
                Priority m = std::numeric_limits<Priority>::max();
                for (StateId s : inf) m = std::min(m, o.priority[s]);
                return m % 2 == 0;
            } else if constexpr (std::is_same_v<T, Streett>) {
                return std::all_of(o.pairs.begin(), o.pairs.end(), [&](const AcceptancePair& p) {
                    return !detail::intersects(p.request, inf) || detail::intersects(p.response, inf);
                });
            } else {
                return std::any_of(o.pairs.begin(), o.pairs.end(), [&](const AcceptancePair& p) {
                    return detail::intersects(p.request, inf) && !detail::intersects(p.response, inf);
                });
            }
        },
        obj);
}

/// Checks that the objective refers only to existing states and that a
/// parity objective maps every state.
inline std::vector<std::string> validate_objective(const GameGraph& g, const Objective& obj)
{
    std::vector<std::string> out;
    const auto n = g.size();
    std::visit(
        [&](const auto& o) {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, Parity>) {
                if (o.priority.size() != n) {
                    out.push_back("priority map has " + std::to_string(o.priority.size()) + " entries for " +
                                  std::to_string(n) + " states");
                }
            } else {
                for (const auto& p : o.pairs) {
                    for (const auto* set : {&p.request, &p.response}) {
                        if (!std::is_sorted(set->begin(), set->end())) out.push_back("pair set not sorted");
                        for (StateId s : *set) {
                            if (s >= n) out.push_back("pair references state " + std::to_string(s));
                        }
                    }
                }
            }
        },
        obj);
    return out;
}

/// Objective of the opponent: parity shifted by one, pairs dualized.
inline Objective complement(const Objective& obj)
{
    return std::visit(
        [](const auto& o) -> Objective {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, Parity>) {
                Parity d = o;
                for (auto& p : d.priority) ++p;
                return d;
            } else if constexpr (std::is_same_v<T, Streett>) {
                return Rabin{o.pairs};
            } else {
                return Streett{o.pairs};
            }
        },
        obj);
}

/// Restricts a parity objective to a subgame (new index -> old index map).
inline Parity restrict(const Parity& p, std::span<const StateId> to_old)
{
    Parity r;
    r.priority.reserve(to_old.size());
    for (StateId s : to_old) r.priority.push_back(p.priority[s]);
    return r;
}

} // namespace qg
