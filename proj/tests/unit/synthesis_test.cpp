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
#include "support/words.hpp"

using namespace qg;
using qgtest::grant_cancel_automaton;
using qgtest::request_cancel_automaton;

namespace {

constexpr Letter kNotC = 0, kC = 1;

DetParityAutomaton all_even()
{
    DetParityAutomaton a(PropAlphabet{{"x"}, {"y"}}, 1);
    for (Letter l = 0; l < 4; ++l) a.set_next(0, l, 0);
    a.acceptance = Parity{{0}};
    return a;
}

SynthesisGame fig_game() { return dpa_to_synthesis_game(grant_cancel_automaton()); }

Errc code_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return Errc::Unsupported;
}

} // namespace

TEST(SynthesisGame, GrantCancelShape)
{
    const SynthesisGame sg = fig_game();
    EXPECT_EQ(sg.env_count, 3u);
    EXPECT_EQ(sg.game.size(), 9u);
    EXPECT_EQ(sg.neutral, 2u);
    EXPECT_EQ(*sg.game.initial(), 0u);
    for (StateId q = 0; q < 3; ++q) {
        EXPECT_EQ(sg.game.owner(q), Owner::Player1);
        ASSERT_EQ(sg.game.successors(q).size(), 2u);
        for (Letter i = 0; i < 2; ++i) {
            const StateId c = sg.choice_state(q, i);
            EXPECT_EQ(sg.game.successors(q)[i], c);
            EXPECT_EQ(sg.game.owner(c), Owner::Player0);
            EXPECT_EQ(sg.objective.priority[c], sg.neutral);
            // each output letter tags exactly one edge, leading where the
            // automaton goes
            std::vector<int> count(2, 0);
            const auto succ = sg.game.successors(c);
            for (std::size_t k = 0; k < succ.size(); ++k) {
                EXPECT_LT(succ[k], 3u);
                for (Letter o : sg.outputs[c - 3][k]) {
                    ++count[o];
                    EXPECT_EQ(succ[k], grant_cancel_automaton().next(q, sg.alphabet.join(i, o)));
                }
            }
            EXPECT_EQ(count, (std::vector<int>{1, 1}));
        }
    }
}

TEST(SynthesisGame, AllEvenSpecIsRealizable)
{
    const SynthesisGame sg = dpa_to_synthesis_game(all_even());
    EXPECT_EQ(sg.env_count, 1u);
    EXPECT_EQ(sg.game.size(), 3u);
    const auto sol = zielonka_solve(sg.game, sg.objective);
    EXPECT_EQ(sol.win[0].size(), 3u);
    EXPECT_TRUE(check_realizability(sg).realizable);
    EXPECT_TRUE(check_realizability(sg).strategy.has_value());
}

TEST(SynthesisGame, IncompleteAutomaton)
{
    DetParityAutomaton a = all_even();
    a.set_next(0, 3, kNoState);
    EXPECT_EQ(code_of([&] { dpa_to_synthesis_game(a); }), Errc::IncompleteAutomaton);
    const SynthesisGame sg = dpa_to_synthesis_game(a, true);
    EXPECT_EQ(sg.env_count, 2u);
    EXPECT_EQ(sg.objective.priority[1], 1u);
    const StateId c = sg.choice_state(0, 1);
    const auto out = sg.output_towards(c, 1);
    ASSERT_TRUE(out);
    EXPECT_EQ(*out, 1u);
}

TEST(SynthesisGame, GrantCancelIsUnrealizable) { EXPECT_FALSE(check_realizability(fig_game()).realizable); }

TEST(Safety, GrantCancelNeedsNoSafety)
{
    const auto r = compute_safety_assumption(fig_game());
    EXPECT_TRUE(r.assumption.safety.empty());
    EXPECT_EQ(r.safe.game, fig_game().game);
}

TEST(Safety, RequestCancelForbidsSimultaneousRequestAndCancel)
{
    const DetParityAutomaton aut = request_cancel_automaton();
    const SynthesisGame sg = dpa_to_synthesis_game(aut);
    const auto r = compute_safety_assumption(sg);
    // independent expectation: from the unviolated state, exactly the inputs
    // for which no output satisfies both implications
    std::vector<EnvEdge> expected;
    for (Letter i = 0; i < 4; ++i) {
        const bool req = i & 1u, cancel = i & 2u;
        bool some_output = false;
        for (bool g : {false, true}) some_output |= (!req || g) && (!cancel || !g);
        if (!some_output) expected.push_back({0, i});
    }
    EXPECT_EQ(r.assumption.safety, expected);
    ASSERT_EQ(expected.size(), 1u);
    EXPECT_EQ(sg.alphabet.format_input(expected[0].input), "r & c");
    for (const EnvEdge& e : r.assumption.safety) {
        EXPECT_TRUE(r.cooperative.contains(e.env));
        EXPECT_FALSE(r.cooperative.contains(sg.choice_state(e.env, e.input)));
    }
    // no restriction once violated
    EXPECT_EQ(r.safe.game.successors(1).size(), 4u);
    EXPECT_EQ(r.safe.game.successors(0).size(), 3u);
}

TEST(Safety, FalseSpecIsUnsatisfiable)
{
    DetParityAutomaton a = all_even();
    a.acceptance = Parity{{1}};
    EXPECT_EQ(code_of([&] { compute_safety_assumption(dpa_to_synthesis_game(a)); }), Errc::SpecUnsatisfiable);
}

TEST(Fairness, EmptySetLeavesGameUnchanged)
{
    const SynthesisGame sg = fig_game();
    const FairGame f = apply_fairness(sg, {});
    EXPECT_EQ(f.game, sg.game);
    EXPECT_EQ(f.objective, sg.objective);
}

TEST(Fairness, WrapperForTheNotCancelEdge)
{
    const SynthesisGame sg = fig_game();
    const std::vector<EnvEdge> fair{{0, kNotC}};
    const FairGame f = apply_fairness(sg, fair);
    ASSERT_EQ(f.game.size(), 10u);
    const StateId w = 9;
    EXPECT_EQ(f.game.owner(w), Owner::Random);
    EXPECT_EQ(std::vector<StateId>(f.game.successors(w).begin(), f.game.successors(w).end()),
              (std::vector<StateId>{0, sg.choice_state(0, kNotC)}));
    EXPECT_EQ(*f.game.initial(), w);
    EXPECT_EQ(f.objective.priority[w], sg.objective.priority[0]);
    EXPECT_TRUE(validate_game(f.game).empty());
    for (StateId s = 0; s < 9; ++s) EXPECT_FALSE(f.game.has_edge(s, 0));
    const auto doc = document_from_game(f.game, f.objective);
    EXPECT_EQ(doc.states[w].player, std::optional<int>(-1));
}

TEST(Fairness, CollapsingWrappersRestoresTheGame)
{
    const SynthesisGame sg = fig_game();
    const auto edges = sg.env_edges();
    for (std::size_t mask = 0; mask < (std::size_t{1} << edges.size()); ++mask) {
        std::vector<EnvEdge> fair;
        for (std::size_t k = 0; k < edges.size(); ++k) {
            if (mask >> k & 1u) fair.push_back(edges[k]);
        }
        const FairGame f = apply_fairness(sg, fair);
        for (StateId s = 0; s < sg.game.size(); ++s) {
            std::vector<StateId> collapsed;
            for (StateId t : f.game.successors(s)) collapsed.push_back(f.unwrap(t));
            EXPECT_EQ(collapsed, std::vector<StateId>(sg.game.successors(s).begin(), sg.game.successors(s).end()));
            EXPECT_EQ(f.game.owner(s), sg.game.owner(s));
        }
    }
}

TEST(Fairness, AllEdgesOfSingleEnvState)
{
    const SynthesisGame sg = dpa_to_synthesis_game(all_even());
    const FairGame f = apply_fairness(sg, sg.env_edges());
    ASSERT_EQ(f.game.size(), 4u);
    EXPECT_EQ(f.game.successors(3).size(), 3u);
}

TEST(Fairness, RejectsNonEnvironmentEdges)
{
    const SynthesisGame sg = fig_game();
    const std::vector<EnvEdge> bad{{4, 0}};
    EXPECT_EQ(code_of([&] { apply_fairness(sg, bad); }), Errc::NotEnvEdge);
    const SynthesisGame cut = remove_env_edges(sg, std::vector<EnvEdge>{{0, kC}});
    const std::vector<EnvEdge> removed{{0, kC}};
    EXPECT_EQ(code_of([&] { apply_fairness(cut, removed); }), Errc::NotEnvEdge);
}

TEST(Sufficiency, GrantCancel)
{
    const SynthesisGame sg = fig_game();
    EXPECT_TRUE(check_sufficiency(sg, Assumption{{}, {{0, kNotC}}}));
    EXPECT_FALSE(check_sufficiency(sg, Assumption{}));
    EXPECT_TRUE(check_sufficiency(dpa_to_synthesis_game(all_even()), Assumption{}));
}

TEST(Sufficiency, MonotoneOverAllFairSets)
{
    const SynthesisGame sg = fig_game();
    const auto edges = sg.env_edges();
    ASSERT_EQ(edges.size(), 6u);
    std::vector<bool> ok(64);
    for (std::size_t mask = 0; mask < 64; ++mask) {
        Assumption a;
        for (std::size_t k = 0; k < 6; ++k) {
            if (mask >> k & 1u) a.fair.push_back(edges[k]);
        }
        ok[mask] = check_sufficiency(sg, a);
    }
    for (std::size_t a = 0; a < 64; ++a) {
        for (std::size_t b = 0; b < 64; ++b) {
            if ((a & b) == a && ok[a]) { EXPECT_TRUE(ok[b]) << a << " -> " << b; }
        }
    }
}

TEST(MinimizeFairness, GrantCancelNeedsOneFairEdge)
{
    const SynthesisGame sg = fig_game();
    const Assumption a = minimize_fairness(sg);
    EXPECT_EQ(a.fair, (std::vector<EnvEdge>{{0, kNotC}}));
    EXPECT_TRUE(check_sufficiency(sg, a));
    for (std::size_t k = 0; k < a.fair.size(); ++k) {
        Assumption weaker = a;
        weaker.fair.erase(weaker.fair.begin() + static_cast<std::ptrdiff_t>(k));
        EXPECT_FALSE(check_sufficiency(sg, weaker));
    }
}

TEST(MinimizeFairness, RequestCancelNeedsNone)
{
    const SynthesisGame sg = dpa_to_synthesis_game(request_cancel_automaton());
    const auto safety = compute_safety_assumption(sg);
    EXPECT_TRUE(minimize_fairness(safety.safe).fair.empty());
    const Assumption full = compute_assumption(sg);
    EXPECT_EQ(full.safety, safety.assumption.safety);
    EXPECT_TRUE(full.fair.empty());
}

TEST(MinimizeFairness, RealizableNeedsNone)
{
    EXPECT_TRUE(minimize_fairness(dpa_to_synthesis_game(all_even())).fair.empty());
}

TEST(MinimizeFairness, NoSufficientAssumption)
{
    // the system must never grant but is required to grant infinitely often
    DetParityAutomaton a(PropAlphabet{{"c"}, {"g"}}, 2);
    for (Letter l = 0; l < 4; ++l) {
        a.set_next(0, l, (l & 2u) ? 1 : 0);
        a.set_next(1, l, 1);
    }
    a.acceptance = Parity{{1, 3}};
    const SynthesisGame sg = dpa_to_synthesis_game(a);
    EXPECT_EQ(code_of([&] { minimize_fairness(sg); }), Errc::NoFairnessAssumptionExists);
}

TEST(AssumptionAutomaton, EmptyAssumptionIsUniversal)
{
    const SynthesisGame sg = fig_game();
    const DetAutomaton a = assumption_to_streett_automaton(sg, Assumption{});
    EXPECT_TRUE(a.complete());
    qgtest::for_each_lasso(4, 3, 3, [&](const auto& stem, const auto& cycle) { ASSERT_TRUE(a.accepts(stem, cycle)); });
}

TEST(AssumptionAutomaton, GrantCancelFairness)
{
    const SynthesisGame sg = fig_game();
    const DetAutomaton a = assumption_to_streett_automaton(sg, Assumption{{}, {{0, kNotC}}});
    const PropAlphabet& alpha = sg.alphabet;
    std::size_t count = 0;
    qgtest::for_each_lasso(4, 3, 3, [&](const auto& stem, const auto& cycle) {
        auto cg = [&](Letter l) { return alpha.input_of(l) == kC && alpha.output_of(l) == 1; };
        bool never_both = std::none_of(stem.begin(), stem.end(), cg) && std::none_of(cycle.begin(), cycle.end(), cg);
        bool inf_not_c = std::any_of(cycle.begin(), cycle.end(), [&](Letter l) { return alpha.input_of(l) == kNotC; });
        ASSERT_EQ(a.accepts(stem, cycle), !never_both || inf_not_c);
        ++count;
    });
    EXPECT_GT(count, 0u);
}

TEST(AssumptionAutomaton, RequestCancelSafety)
{
    const DetParityAutomaton spec = request_cancel_automaton();
    const SynthesisGame sg = dpa_to_synthesis_game(spec);
    const Assumption asm_ = compute_assumption(sg);
    const DetAutomaton a = assumption_to_streett_automaton(sg, asm_);
    qgtest::for_each_lasso(8, 3, 2, [&](const auto& stem, const auto& cycle) {
        // rejected iff r & c is read while the automaton is not yet violated
        std::vector<Letter> word = stem;
        for (int k = 0; k < 3; ++k) word.insert(word.end(), cycle.begin(), cycle.end());
        StateId q = spec.initial;
        bool violated_assumption = false;
        for (Letter l : word) {
            if (q == 0 && sg.alphabet.input_of(l) == 3) violated_assumption = true;
            q = spec.next(q, l);
        }
        ASSERT_EQ(a.accepts(stem, cycle), !violated_assumption);
    });
}

TEST(Transducer, GrantCancel)
{
    const SynthesisGame sg = fig_game();
    const Transducer t = synthesize(sg, Assumption{{}, {{0, kNotC}}});
    ASSERT_EQ(t.states, 1u);
    EXPECT_EQ(t.output(0, kC), 0u);
    EXPECT_EQ(t.output(0, kNotC), 1u);
    EXPECT_EQ(t.next(0, kC), 0u);
}

TEST(Transducer, AllEvenEmitsLeastOutput)
{
    const SynthesisGame sg = dpa_to_synthesis_game(all_even());
    const auto r = check_realizability(sg);
    const Transducer t = extract_transducer(sg, *r.strategy);
    ASSERT_EQ(t.states, 1u);
    EXPECT_EQ(t.output(0, 0), 0u);
    EXPECT_EQ(t.output(0, 1), 0u);
}

TEST(Transducer, MemorylessStrategyGivesAtMostEnvStates)
{
    const SynthesisGame sg = dpa_to_synthesis_game(request_cancel_automaton());
    const auto safety = compute_safety_assumption(sg);
    const auto r = check_realizability(safety.safe);
    ASSERT_TRUE(r.realizable);
    const Transducer t = extract_transducer(safety.safe, *r.strategy);
    EXPECT_LE(t.states, sg.env_count + 1); // plus the state for forbidden inputs
}

TEST(Transducer, IncompleteStrategy)
{
    const SynthesisGame sg = dpa_to_synthesis_game(all_even());
    EXPECT_EQ(code_of([&] { extract_transducer(sg, Strategy(sg.game.size())); }), Errc::StrategyIncomplete);
}

TEST(Transducer, ImplementsSpecificationUnderAssumption)
{
    for (const DetParityAutomaton& spec : {grant_cancel_automaton(), request_cancel_automaton()}) {
        const SynthesisGame sg = dpa_to_synthesis_game(spec);
        const Assumption asm_ = compute_assumption(sg);
        const DetAutomaton assumption = assumption_to_streett_automaton(sg, asm_);
        const Transducer t = synthesize(sg, asm_);
        const Letter nin = sg.alphabet.input_letters();
        const std::size_t max_len = nin > 2 ? 3 : 5;
        qgtest::for_each_lasso(nin, max_len, max_len, [&](const auto& stem, const auto& cycle) {
            const auto [full_stem, full_cycle] = qgtest::transduce(t, stem, cycle);
            if (assumption.accepts(full_stem, full_cycle)) { ASSERT_TRUE(spec.accepts(full_stem, full_cycle)); }
        });
    }
}
