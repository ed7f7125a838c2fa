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

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include <qgame/qgame.hpp>

namespace qgtest {

using namespace qg;

/// Calls f(stem, cycle) for every lasso with |stem| <= max_stem and
/// 1 <= |cycle| <= max_cycle over `letters` letters.
inline void for_each_lasso(Letter letters, std::size_t max_stem, std::size_t max_cycle,
                           const std::function<void(const std::vector<Letter>&, const std::vector<Letter>&)>& f)
{
    auto words = [&](std::size_t len, const std::function<void(const std::vector<Letter>&)>& g) {
        std::vector<Letter> w(len, 0);
        while (true) {
            g(w);
            std::size_t k = 0;
            while (k < len && ++w[k] == letters) w[k++] = 0;
            if (k == len) return;
        }
    };
    for (std::size_t s = 0; s <= max_stem; ++s) {
        words(s, [&](const std::vector<Letter>& stem) {
            for (std::size_t c = 1; c <= max_cycle; ++c) {
                words(c, [&](const std::vector<Letter>& cycle) { f(stem, cycle); });
            }
        });
    }
}

/// Full-letter lasso produced by a transducer reading an input lasso.
inline std::pair<std::vector<Letter>, std::vector<Letter>> transduce(const Transducer& t,
                                                                    const std::vector<Letter>& stem,
                                                                    const std::vector<Letter>& cycle)
{
    std::vector<Letter> out_stem, trace;
    StateId q = t.initial;
    for (Letter i : stem) {
        out_stem.push_back(t.alphabet.join(i, t.output(q, i)));
        q = t.next(q, i);
    }
    std::map<StateId, std::size_t> seen; // transducer state at cycle start -> trace offset
    while (!seen.count(q)) {
        seen.emplace(q, trace.size());
        for (Letter i : cycle) {
            trace.push_back(t.alphabet.join(i, t.output(q, i)));
            q = t.next(q, i);
        }
    }
    const auto start = seen.at(q);
    out_stem.insert(out_stem.end(), trace.begin(), trace.begin() + static_cast<std::ptrdiff_t>(start));
    return {out_stem, std::vector<Letter>(trace.begin() + static_cast<std::ptrdiff_t>(start), trace.end())};
}

} // namespace qgtest
