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
#include <map>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <variant>
#include <vector>

#include <qgame/game.hpp>
#include <qgame/objective.hpp>
#include <qgame/strategy.hpp>

namespace qg {

/**
 * Latest-appearance-record memory over state colors. A color is the bit
 * vector of memberships of a state in every request (bit 2i) and response
 * (bit 2i+1) set. A record is a permutation of the occurring colors; visiting
 * a state moves its color to the front.
 */
class LarMemory
{
public:
    using Record = std::vector<std::uint16_t>;

    LarMemory() = default;

    LarMemory(std::size_t states, const std::vector<AcceptancePair>& pairs, bool streett)
        : streett_(streett), pair_count_(pairs.size())
    {
        if (pairs.size() > 32) throw Error(Errc::InvalidSpec, "at most 32 acceptance pairs are supported");
        std::vector<std::uint64_t> bits(states, 0);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            for (StateId s : pairs[i].request) bits.at(s) |= std::uint64_t{1} << (2 * i);
            for (StateId s : pairs[i].response) bits.at(s) |= std::uint64_t{1} << (2 * i + 1);
        }
        palette_ = bits;
        std::sort(palette_.begin(), palette_.end());
        palette_.erase(std::unique(palette_.begin(), palette_.end()), palette_.end());
        color_.resize(states);
        for (std::size_t s = 0; s < states; ++s) {
            color_[s] = static_cast<std::uint16_t>(
                std::lower_bound(palette_.begin(), palette_.end(), bits[s]) - palette_.begin());
        }
        Record initial(palette_.size());
        std::iota(initial.begin(), initial.end(), std::uint16_t{0});
        intern(std::move(initial));
    }

    std::size_t color_count() const { return palette_.size(); }
    std::uint16_t color(StateId s) const { return color_[s]; }
    MemoryId initial() const { return 0; }
    std::size_t record_count() const { return records_.size(); }
    const Record& record(MemoryId r) const { return records_[r]; }

    /// Largest emitted max-parity value (2C - 1).
    Priority max_value() const { return static_cast<Priority>(2 * palette_.size() - 1); }

    struct Step
    {
        MemoryId next;
        Priority value; ///< max-parity: 2h if the hit set is good, else 2h + 1
    };

    /// Visits color `c` from record `r`.
    Step step(MemoryId r, std::uint16_t c)
    {
        const std::uint64_t key = (std::uint64_t{r} << 16) | c;
        if (auto it = steps_.find(key); it != steps_.end()) return it->second;
        Record rec = records_[r];
        const auto pos = static_cast<std::size_t>(std::find(rec.begin(), rec.end(), c) - rec.begin());
        std::uint64_t hit = 0;
        for (std::size_t k = 0; k <= pos; ++k) hit |= palette_[rec[k]];
        std::rotate(rec.begin(), rec.begin() + static_cast<std::ptrdiff_t>(pos),
                    rec.begin() + static_cast<std::ptrdiff_t>(pos) + 1);
        const Priority value = static_cast<Priority>(2 * pos + (good(hit) ? 0 : 1));
        Step st{intern(std::move(rec)), value};
        steps_.emplace(key, st);
        return st;
    }

    /// Pair condition on the union of color bits of an infinitely visited set.
    bool good(std::uint64_t hit) const
    {
        bool streett_ok = true;
        for (std::size_t i = 0; i < pair_count_; ++i) {
            const bool q = (hit >> (2 * i)) & 1u;
            const bool r = (hit >> (2 * i + 1)) & 1u;
            if (q && !r) streett_ok = false;
        }
        return streett_ ? streett_ok : !streett_ok;
    }

private:
    MemoryId intern(Record rec)
    {
        auto [it, fresh] = ids_.try_emplace(rec, static_cast<MemoryId>(records_.size()));
        if (fresh) records_.push_back(std::move(rec));
        return it->second;
    }

    bool streett_ = true;
    std::size_t pair_count_ = 0;
    std::vector<std::uint64_t> palette_;
    std::vector<std::uint16_t> color_;
    std::vector<Record> records_;
    std::map<Record, MemoryId> ids_;
    std::unordered_map<std::uint64_t, Step> steps_;
};

/// Record component of a LAR product.
struct ProductMemory
{
    LarMemory lar;
    std::vector<StateId> projection; ///< reduced state -> original state
    std::vector<MemoryId> record;    ///< reduced state -> record before visiting it
    std::unordered_map<std::uint64_t, StateId> index; ///< (record << 32 | state) -> reduced state

    static std::uint64_t key(StateId s, MemoryId r) { return (std::uint64_t{r} << 32) | s; }

    std::optional<StateId> find(StateId s, MemoryId r) const
    {
        auto it = index.find(key(s, r));
        if (it == index.end()) return std::nullopt;
        return it->second;
    }
};

struct ReductionResult
{
    GameGraph game;
    Parity objective;
    std::vector<StateId> origin;         ///< reduced -> original, kNoState off the copies
    std::optional<ProductMemory> memory; ///< present for LAR products

    std::size_t original_size() const
    {
        return static_cast<std::size_t>(
            std::count_if(origin.begin(), origin.end(), [](StateId s) { return s != kNoState; }));
    }
};

/**
 * Replaces every random state by an announcement gadget so that almost-sure
 * winning for player 0 becomes sure winning in a 2-player game.
 *
 * With E the least even bound on the priorities and N = E + 2, the random
 * state s (priority p, successors U) keeps its index as a player-0
 * announcement state of priority p. For each even e <= E it gets a player-1
 * decision state (priority N) leading to an accept state (player 1, priority
 * e, edges to U) and a challenge state (player 0, priority e + 1, edges to U).
 * Other states are copied verbatim, so indices 0..n-1 are the copies.
 */
inline ReductionResult reduce_stochastic_parity(const GameGraph& g, const Parity& obj)
{
    require_valid(g);
    if (obj.priority.size() != g.size()) throw Error(Errc::InvalidGame, "priority map size mismatch");
    const auto n = static_cast<StateId>(g.size());
    const Priority top = even_ceiling(obj.max_priority());
    const Priority neutral = top + 2;

    ReductionResult r;
    r.objective.priority = obj.priority;
    for (StateId s = 0; s < n; ++s) {
        const Owner o = g.owner(s) == Owner::Random ? Owner::Player0 : g.owner(s);
        r.game.add_state(o, g.label(s));
    }
    for (StateId s = 0; s < n; ++s) {
        if (g.owner(s) != Owner::Random) {
            for (StateId t : g.successors(s)) r.game.add_edge(s, t);
            continue;
        }
        for (Priority e = 0; e <= top; e += 2) {
            const StateId decide = r.game.add_state(Owner::Player1);
            const StateId accept = r.game.add_state(Owner::Player1);
            const StateId challenge = r.game.add_state(Owner::Player0);
            r.objective.priority.push_back(neutral);
            r.objective.priority.push_back(e);
            r.objective.priority.push_back(e + 1);
            r.game.add_edge(s, decide);
            r.game.add_edge(decide, accept);
            r.game.add_edge(decide, challenge);
            for (StateId t : g.successors(s)) {
                r.game.add_edge(accept, t);
                r.game.add_edge(challenge, t);
            }
        }
    }
    r.game.set_initial(g.initial());
    r.origin.assign(r.game.size(), kNoState);
    for (StateId s = 0; s < n; ++s) r.origin[s] = s;
    return r;
}

/**
 * Product of a game with a latest-appearance record over pair-membership
 * colors, turning a Rabin or Streett objective into min-even parity. The
 * product of a 2.5-player game stays a 2.5-player game (records are
 * deterministic). Product state (s, r) holds the record r before visiting s;
 * the copy of original state s is (s, initial record) at index s.
 */
inline ReductionResult lar_reduce(const GameGraph& g, const Objective& obj)
{
    require_valid(g);
    const std::vector<AcceptancePair>* pairs = nullptr;
    bool streett = true;
    if (const auto* st = std::get_if<Streett>(&obj)) {
        pairs = &st->pairs;
    } else if (const auto* rb = std::get_if<Rabin>(&obj)) {
        pairs = &rb->pairs;
        streett = false;
    } else {
        throw Error(Errc::InvalidSpec, "lar_reduce expects a Rabin or Streett objective");
    }
    if (pairs->empty()) throw Error(Errc::NoPairs, "acceptance pair list is empty");

    const auto n = static_cast<StateId>(g.size());
    ProductMemory pm;
    pm.lar = LarMemory(n, *pairs, streett);
    const Priority flip = static_cast<Priority>(2 * pm.lar.color_count());

    ReductionResult res;
    auto intern = [&](StateId s, MemoryId rec) {
        auto [it, fresh] = pm.index.try_emplace(ProductMemory::key(s, rec), static_cast<StateId>(pm.projection.size()));
        if (fresh) {
            pm.projection.push_back(s);
            pm.record.push_back(rec);
            res.game.add_state(g.owner(s) == Owner::Random ? Owner::Player0 : g.owner(s), g.label(s));
        }
        return it->second;
    };
    for (StateId s = 0; s < n; ++s) intern(s, pm.lar.initial());

    // successor lists are created in BFS order; owners of random states are
    // fixed up afterwards so that add_edge does not record weights early
    std::vector<std::vector<StateId>> succ;
    for (StateId x = 0; x < pm.projection.size(); ++x) {
        const StateId s = pm.projection[x];
        const auto st = pm.lar.step(pm.record[x], pm.lar.color(s));
        res.objective.priority.push_back(flip - st.value);
        std::vector<StateId> out;
        for (StateId t : g.successors(s)) out.push_back(intern(t, st.next));
        succ.push_back(std::move(out));
    }
    for (StateId x = 0; x < succ.size(); ++x) {
        for (StateId y : succ[x]) res.game.add_edge(x, y);
        const StateId s = pm.projection[x];
        if (g.owner(s) != Owner::Random) continue;
        res.game.set_owner(x, Owner::Random);
        std::vector<std::pair<StateId, Weight>> dist;
        const auto& orig = g.distribution(s);
        for (std::size_t k = 0; k < succ[x].size(); ++k) {
            const StateId t = g.successors(s)[k];
            auto it = std::find_if(orig.begin(), orig.end(), [t](const auto& e) { return e.first == t; });
            dist.emplace_back(succ[x][k], it->second);
        }
        res.game.set_distribution(x, std::move(dist));
    }
    if (g.initial()) res.game.set_initial(*g.initial());
    res.origin.assign(res.game.size(), kNoState);
    for (StateId s = 0; s < n; ++s) res.origin[s] = s;
    res.memory = std::move(pm);
    return res;
}

/**
 * Transfers a memoryless strategy of the reduced game back to the original
 * game. `required` lists reduced states (owned by the strategy's player) on
 * which the reduced strategy must be defined.
 *
 * Gadget reductions give a memoryless strategy on the original owned states.
 * LAR products give a strategy whose memory is the record automaton.
 */
inline Strategy pullback_strategy(const GameGraph& original, const ReductionResult& res, const Strategy& reduced,
                                  Player player, std::span<const StateId> required)
{
    for (StateId x : required) {
        if (res.game.owner(x) == owner_of(player) && !reduced.choice(x)) {
            throw Error(Errc::UndefinedOnRegion, "reduced strategy undefined at state " + std::to_string(x));
        }
    }
    const auto n = static_cast<StateId>(original.size());
    const Owner mine = owner_of(player);
    if (!res.memory) {
        Strategy out(n);
        for (StateId s = 0; s < n; ++s) {
            if (original.owner(s) != mine) continue;
            if (auto t = reduced.choice(s)) out.set_choice(s, *t);
        }
        return out;
    }
    const ProductMemory& pm = *res.memory;
    const std::size_t records = pm.lar.record_count();
    Strategy out(n, records, pm.lar.initial());
    for (StateId x = 0; x < pm.projection.size(); ++x) {
        const StateId s = pm.projection[x];
        const MemoryId m = pm.record[x];
        auto succ = res.game.successors(x);
        if (records > 1) out.set_update(m, s, pm.record[succ.front()]);
        if (original.owner(s) != mine) continue;
        if (auto y = reduced.choice(x)) out.set_choice(s, pm.projection[*y], m);
    }
    return out;
}

} // namespace qg
