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
#include <optional>
#include <span>
#include <vector>

#include <qgame/game.hpp>

namespace qg {

using MemoryId = std::uint32_t;

/**
 * Strategy with finite memory. The memory is updated on every visited game
 * state (`update(m, s)`), and `choice(s, m)` is the successor picked at an
 * owned state `s` when the memory before visiting `s` is `m`. Memoryless
 * strategies have a single memory state.
 */
class Strategy
{
public:
    Strategy() = default;

    explicit Strategy(std::size_t states, std::size_t memory = 1, MemoryId initial = 0)
        : states_(states), memory_(memory), initial_(initial), choice_(states * memory, kNoState)
    {
        if (memory > 1) update_.assign(states * memory, 0);
    }

    std::size_t state_count() const { return states_; }
    std::size_t memory_size() const { return memory_; }
    MemoryId initial_memory() const { return initial_; }
    bool memoryless() const { return memory_ == 1; }

    std::optional<StateId> choice(StateId s, MemoryId m = 0) const
    {
        StateId t = choice_[m * states_ + s];
        if (t == kNoState) return std::nullopt;
        return t;
    }

    void set_choice(StateId s, StateId t, MemoryId m = 0) { choice_.at(m * states_ + s) = t; }
    void clear_choice(StateId s, MemoryId m = 0) { choice_.at(m * states_ + s) = kNoState; }

    MemoryId update(MemoryId m, StateId s) const { return memory_ == 1 ? 0 : update_[m * states_ + s]; }
    void set_update(MemoryId m, StateId s, MemoryId next) { update_.at(m * states_ + s) = next; }

    /// States with a defined choice in at least one memory state.
    std::vector<StateId> domain() const
    {
        std::vector<StateId> out;
        for (StateId s = 0; s < states_; ++s) {
            for (MemoryId m = 0; m < memory_; ++m) {
                if (choice_[m * states_ + s] != kNoState) {
                    out.push_back(s);
                    break;
                }
            }
        }
        return out;
    }

    friend bool operator==(const Strategy&, const Strategy&) = default;

private:
    std::size_t states_ = 0;
    std::size_t memory_ = 1;
    MemoryId initial_ = 0;
    std::vector<StateId> choice_;
    std::vector<MemoryId> update_;
};

enum class WinMode : std::uint8_t { Sure, AlmostSure, Cooperative };

/// Set of states claimed for one player. States are ascending.
struct Region
{
    std::vector<StateId> states;
    Player player = Player::Zero;
    WinMode mode = WinMode::Sure;

    bool contains(StateId s) const { return std::binary_search(states.begin(), states.end(), s); }
    std::size_t size() const { return states.size(); }

    std::vector<char> mask(std::size_t n) const
    {
        std::vector<char> m(n, 0);
        for (StateId s : states) m[s] = 1;
        return m;
    }

    friend bool operator==(const Region&, const Region&) = default;
};

} // namespace qg
