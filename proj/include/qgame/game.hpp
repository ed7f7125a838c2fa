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
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <qgame/error.hpp>

namespace qg {

using StateId = std::uint32_t;
inline constexpr StateId kNoState = std::numeric_limits<StateId>::max();

enum class Owner : std::uint8_t { Player0, Player1, Random };

enum class Player : std::uint8_t { Zero = 0, One = 1 };

inline constexpr Player opponent(Player p) { return p == Player::Zero ? Player::One : Player::Zero; }
inline constexpr int index(Player p) { return static_cast<int>(p); }
inline constexpr Owner owner_of(Player p) { return p == Player::Zero ? Owner::Player0 : Owner::Player1; }

/// Positive rational transition weight. Only the support of a distribution is
/// ever consulted by the solvers; the value is kept for file fidelity.
struct Weight
{
    std::uint64_t num = 1;
    std::uint64_t den = 1;

    bool positive() const { return num > 0 && den > 0; }
    friend bool operator==(const Weight&, const Weight&) = default;
};

/**
 * A turn-based game graph whose states belong to player 0, player 1 or to a
 * probabilistic resolver.
 *
 * Edges are kept in insertion order. Probabilistic states carry a
 * distribution (target, weight) that must have exactly the edge targets as
 * support; `validate_game` reports any mismatch. Adding an edge to a random
 * state also records a unit weight, so plain construction yields uniform
 * distributions.
 */
class GameGraph
{
public:
    GameGraph() = default;

    explicit GameGraph(std::size_t states, Owner owner = Owner::Player0)
        : owner_(states, owner), label_(states), succ_(states), dist_(states)
    {
    }

    StateId add_state(Owner owner, std::optional<std::string> label = std::nullopt)
    {
        owner_.push_back(owner);
        label_.push_back(std::move(label));
        succ_.emplace_back();
        dist_.emplace_back();
        return static_cast<StateId>(owner_.size() - 1);
    }

    void add_edge(StateId from, StateId to)
    {
        succ_.at(from).push_back(to);
        if (owner_[from] == Owner::Random) dist_[from].emplace_back(to, Weight{});
    }

    /// Replaces the distribution of a random state (no consistency check).
    void set_distribution(StateId s, std::vector<std::pair<StateId, Weight>> dist)
    {
        dist_.at(s) = std::move(dist);
    }

    /// Changes the owner. Turning a state random assigns a uniform
    /// distribution over its current edges; turning it non-random drops it.
    void set_owner(StateId s, Owner owner)
    {
        owner_.at(s) = owner;
        dist_[s].clear();
        if (owner == Owner::Random) {
            for (StateId t : succ_[s]) dist_[s].emplace_back(t, Weight{});
        }
    }

    void set_label(StateId s, std::optional<std::string> label) { label_.at(s) = std::move(label); }
    void set_initial(std::optional<StateId> s) { initial_ = s; }

    std::size_t size() const { return owner_.size(); }

    std::size_t edge_count() const
    {
        std::size_t m = 0;
        for (const auto& out : succ_) m += out.size();
        return m;
    }

    Owner owner(StateId s) const { return owner_[s]; }
    const std::optional<std::string>& label(StateId s) const { return label_[s]; }
    std::span<const StateId> successors(StateId s) const { return succ_[s]; }
    const std::vector<std::pair<StateId, Weight>>& distribution(StateId s) const { return dist_[s]; }
    std::optional<StateId> initial() const { return initial_; }

    bool has_random_states() const
    {
        return std::find(owner_.begin(), owner_.end(), Owner::Random) != owner_.end();
    }

    std::size_t count_owned(Owner o) const
    {
        return static_cast<std::size_t>(std::count(owner_.begin(), owner_.end(), o));
    }

    bool has_edge(StateId from, StateId to) const
    {
        const auto& out = succ_[from];
        return std::find(out.begin(), out.end(), to) != out.end();
    }

    friend bool operator==(const GameGraph&, const GameGraph&) = default;

private:
    std::vector<Owner> owner_;
    std::vector<std::optional<std::string>> label_;
    std::vector<std::vector<StateId>> succ_;
    std::vector<std::vector<std::pair<StateId, Weight>>> dist_;
    std::optional<StateId> initial_;
};

enum class Rule {
    DeadEnd,
    EdgeOutOfRange,
    DuplicateEdge,
    WeightOnNonEdge,
    MissingWeight,
    NonPositiveWeight,
    DistributionOnNonRandom,
    InitialOutOfRange,
};

inline std::string_view to_string(Rule r)
{
    switch (r) {
    case Rule::DeadEnd: return "dead end";
    case Rule::EdgeOutOfRange: return "edge target out of range";
    case Rule::DuplicateEdge: return "duplicate edge";
    case Rule::WeightOnNonEdge: return "distribution support must equal edge targets (weight on non-edge)";
    case Rule::MissingWeight: return "distribution support must equal edge targets (edge without weight)";
    case Rule::NonPositiveWeight: return "non-positive weight";
    case Rule::DistributionOnNonRandom: return "distribution on non-random state";
    case Rule::InitialOutOfRange: return "initial state out of range";
    }
    return "unknown";
}

struct Violation
{
    Rule rule;
    StateId state = kNoState;
    StateId target = kNoState;

    std::string message() const
    {
        std::string m = std::string(to_string(rule));
        if (state != kNoState) m += " at state " + std::to_string(state);
        if (target != kNoState) m += " -> " + std::to_string(target);
        return m;
    }
};

/// Checks every structural invariant of a game graph. Returns an empty list
/// for a legal game.
inline std::vector<Violation> validate_game(const GameGraph& g)
{
    std::vector<Violation> out;
    const auto n = static_cast<StateId>(g.size());
    std::vector<StateId> seen(n, kNoState);
    for (StateId s = 0; s < n; ++s) {
        auto succ = g.successors(s);
        if (succ.empty()) out.push_back({Rule::DeadEnd, s});
        for (StateId t : succ) {
            if (t >= n) {
                out.push_back({Rule::EdgeOutOfRange, s, t});
                continue;
            }
            if (seen[t] == s) out.push_back({Rule::DuplicateEdge, s, t});
            seen[t] = s;
        }
        const auto& dist = g.distribution(s);
        if (g.owner(s) != Owner::Random) {
            if (!dist.empty()) out.push_back({Rule::DistributionOnNonRandom, s});
            continue;
        }
        for (const auto& [t, w] : dist) {
            if (!g.has_edge(s, t)) out.push_back({Rule::WeightOnNonEdge, s, t});
            else if (!w.positive()) out.push_back({Rule::NonPositiveWeight, s, t});
        }
        for (StateId t : succ) {
            bool found = std::any_of(dist.begin(), dist.end(), [t](const auto& e) { return e.first == t; });
            if (!found) out.push_back({Rule::MissingWeight, s, t});
        }
    }
    if (g.initial() && *g.initial() >= n) out.push_back({Rule::InitialOutOfRange, *g.initial()});
    return out;
}

/// Throws `InvalidGame` listing every violation if the game is illegal.
inline void require_valid(const GameGraph& g)
{
    auto v = validate_game(g);
    if (v.empty()) return;
    std::string msg;
    for (const auto& x : v) {
        if (!msg.empty()) msg += "; ";
        msg += x.message();
    }
    throw Error(Errc::InvalidGame, msg);
}

/// Induced game on a state subset, with the index maps in both directions.
struct Subgame
{
    GameGraph game;
    std::vector<StateId> to_new; ///< original index -> new index or kNoState
    std::vector<StateId> to_old; ///< new index -> original index
};

inline Subgame subgame(const GameGraph& g, std::span<const StateId> keep)
{
    Subgame r;
    r.to_new.assign(g.size(), kNoState);
    std::vector<StateId> sorted(keep.begin(), keep.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (StateId s : sorted) {
        r.to_new[s] = static_cast<StateId>(r.to_old.size());
        r.to_old.push_back(s);
    }
    for (StateId s : r.to_old) r.game.add_state(g.owner(s), g.label(s));
    for (StateId s : r.to_old) {
        const StateId ns = r.to_new[s];
        std::vector<std::pair<StateId, Weight>> dist;
        for (StateId t : g.successors(s)) {
            if (r.to_new[t] == kNoState) {
                if (g.owner(s) == Owner::Random) {
                    throw Error(Errc::RandomSupportBroken,
                                "random state " + std::to_string(s) + " loses successor " + std::to_string(t));
                }
                continue;
            }
            r.game.add_edge(ns, r.to_new[t]);
        }
        if (r.game.successors(ns).empty()) {
            throw Error(Errc::DeadEndCreated, "state " + std::to_string(s) + " has no successor in the subgame");
        }
        if (g.owner(s) == Owner::Random) {
            for (const auto& [t, w] : g.distribution(s)) {
                if (r.to_new[t] != kNoState) dist.emplace_back(r.to_new[t], w);
            }
            r.game.set_distribution(ns, std::move(dist));
        }
    }
    if (g.initial() && r.to_new[*g.initial()] != kNoState) r.game.set_initial(r.to_new[*g.initial()]);
    return r;
}

namespace detail {

/// Compressed adjacency (successors and predecessors) for the fixpoint
/// engines.
struct Csr
{
    std::vector<std::uint32_t> out_off, out, in_off, in;

    explicit Csr(const GameGraph& g)
    {
        const std::size_t n = g.size();
        out_off.assign(n + 1, 0);
        in_off.assign(n + 1, 0);
        for (StateId s = 0; s < n; ++s) {
            out_off[s + 1] = out_off[s] + static_cast<std::uint32_t>(g.successors(s).size());
            for (StateId t : g.successors(s)) ++in_off[t + 1];
        }
        for (std::size_t s = 0; s < n; ++s) in_off[s + 1] += in_off[s];
        out.resize(out_off[n]);
        in.resize(in_off[n]);
        std::vector<std::uint32_t> fill(in_off.begin(), in_off.end() - 1);
        for (StateId s = 0; s < n; ++s) {
            auto o = out_off[s];
            for (StateId t : g.successors(s)) {
                out[o++] = t;
                in[fill[t]++] = s;
            }
        }
    }

    std::span<const std::uint32_t> succ(StateId s) const
    {
        return {out.data() + out_off[s], out.data() + out_off[s + 1]};
    }
    std::span<const std::uint32_t> pred(StateId s) const
    {
        return {in.data() + in_off[s], in.data() + in_off[s + 1]};
    }
};

inline std::vector<StateId> to_list(const std::vector<char>& mask)
{
    std::vector<StateId> out;
    for (StateId s = 0; s < mask.size(); ++s) {
        if (mask[s]) out.push_back(s);
    }
    return out;
}

} // namespace detail

} // namespace qg
