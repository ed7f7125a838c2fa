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

#include <string>

#include <qgame/qgame.hpp>

namespace qgtest {

using namespace qg;

#ifdef QGAME_TEST_DATA
inline std::string data_path(const std::string& name) { return std::string(QGAME_TEST_DATA) + "/" + name; }
#endif

/// GF grant and G(cancel -> !grant) over input c, output g. State 0 waits
/// for a grant (priority 1), state 1 is the violation sink (priority 1),
/// state 2 has just granted (priority 0).
inline DetParityAutomaton grant_cancel_automaton()
{
    PropAlphabet alpha{{"c"}, {"g"}};
    DetParityAutomaton a(alpha, 3);
    const Letter nc_ng = 0, c_ng = 1, nc_g = 2, c_g = 3;
    for (StateId q : {0u, 2u}) {
        a.set_next(q, nc_ng, 0);
        a.set_next(q, c_ng, 0);
        a.set_next(q, c_g, 1);
        a.set_next(q, nc_g, 2);
    }
    for (Letter l = 0; l < 4; ++l) a.set_next(1, l, 1);
    a.acceptance = Parity{{1, 1, 0}};
    a.initial = 0;
    return a;
}

/// G(r -> g) and G(c -> !g) over inputs r, c and output g: state 0 is
/// safe (priority 0), state 1 the violation sink (priority 1).
inline DetParityAutomaton request_cancel_automaton()
{
    PropAlphabet alpha{{"r", "c"}, {"g"}};
    DetParityAutomaton a(alpha, 2);
    for (Letter l = 0; l < alpha.letters(); ++l) {
        const bool r = l & 1u, c = l & 2u, g = l & 4u;
        const bool ok = (!r || g) && (!c || !g);
        a.set_next(0, l, ok ? 0 : 1);
        a.set_next(1, l, 1);
    }
    a.acceptance = Parity{{0, 1}};
    a.initial = 0;
    return a;
}

} // namespace qgtest
