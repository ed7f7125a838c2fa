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

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include <qgame/error.hpp>
#include <qgame/game.hpp>
#include <qgame/objective.hpp>

namespace qg {

/**
 * SplitMix64. Output depends only on the seed, so generated benchmarks are
 * identical on every platform and standard library.
 */
class SplitMix64
{
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()()
    {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, bound) by rejection of the biased low range.
    std::uint64_t below(std::uint64_t bound)
    {
        const std::uint64_t threshold = (0 - bound) % bound;
        std::uint64_t x;
        do {
            x = (*this)();
        } while (x < threshold);
        return x % bound;
    }

    /// Independent stream derived from this one.
    SplitMix64 split() { return SplitMix64((*this)()); }

private:
    std::uint64_t state_;
};

struct BenchSpec
{
    std::size_t states = 1;
    std::size_t edges = 1;
    std::uint32_t priorities = 1;
    double random_fraction = 0.1;
    std::uint64_t seed = 0;
    std::size_t repetitions = 1;
};

inline void validate(const BenchSpec& spec)
{
    if (spec.states < 1) throw Error(Errc::InvalidSpec, "need at least one state");
    if (spec.edges < spec.states) throw Error(Errc::InvalidSpec, "need at least one edge per state");
    if (spec.edges > spec.states * spec.states) throw Error(Errc::InvalidSpec, "more edges than state pairs");
    if (spec.priorities < 1) throw Error(Errc::InvalidSpec, "need at least one priority");
    if (!(spec.random_fraction >= 0.0 && spec.random_fraction < 1.0)) {
        throw Error(Errc::InvalidSpec, "random fraction must lie in [0, 1)");
    }
}

struct GeneratedGame
{
    GameGraph game;
    Parity objective;
};

/**
 * Random parity game: uniform priority in [0, d) and uniform owner per
 * state; every state first gets one uniform successor, then extra edges are
 * drawn uniformly (duplicates rejected) up to the edge count; finally
 * floor(fraction * n) states picked by a partial Fisher-Yates shuffle become
 * random with uniform distributions. The initial state is 0.
 */
inline GeneratedGame random_game(const BenchSpec& spec)
{
    validate(spec);
    SplitMix64 rng(spec.seed);
    const std::size_t n = spec.states;
    GeneratedGame out{GameGraph(n), Parity{std::vector<Priority>(n)}};
    for (StateId s = 0; s < n; ++s) {
        out.objective.priority[s] = static_cast<Priority>(rng.below(spec.priorities));
        out.game.set_owner(s, rng.below(2) == 0 ? Owner::Player0 : Owner::Player1);
    }
    std::vector<std::vector<StateId>> succ(n);
    std::vector<std::vector<char>> dense;
    const bool use_dense = n <= 4096;
    if (use_dense) dense.assign(n, std::vector<char>(n, 0));
    auto present = [&](StateId s, StateId t) {
        if (use_dense) return dense[s][t] != 0;
        return std::find(succ[s].begin(), succ[s].end(), t) != succ[s].end();
    };
    auto add = [&](StateId s, StateId t) {
        succ[s].push_back(t);
        if (use_dense) dense[s][t] = 1;
    };
    for (StateId s = 0; s < n; ++s) add(s, static_cast<StateId>(rng.below(n)));
    for (std::size_t m = n; m < spec.edges;) {
        const auto s = static_cast<StateId>(rng.below(n));
        const auto t = static_cast<StateId>(rng.below(n));
        if (present(s, t)) continue;
        add(s, t);
        ++m;
    }
    for (StateId s = 0; s < n; ++s) {
        for (StateId t : succ[s]) out.game.add_edge(s, t);
    }

    const auto randoms = static_cast<std::size_t>(std::floor(spec.random_fraction * static_cast<double>(n) + 1e-9));
    std::vector<StateId> order(n);
    std::iota(order.begin(), order.end(), StateId{0});
    for (std::size_t k = 0; k < randoms; ++k) {
        const auto j = k + static_cast<std::size_t>(rng.below(n - k));
        std::swap(order[k], order[j]);
        out.game.set_owner(order[k], Owner::Random);
    }
    out.game.set_initial(StateId{0});
    return out;
}

} // namespace qg
