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

#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "support/fixtures.hpp"

using namespace qg;

namespace {

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

ConsoleState data_console()
{
    ConsoleState st;
    st.base_directory = QGAME_TEST_DATA;
    return st;
}

struct CliRun
{
    int code;
    std::string out, err;
};

CliRun run_cli(std::vector<std::string> args, const std::string& input = "")
{
    std::ostringstream out, err;
    std::istringstream in(input);
    const int code = cli::cli_main(std::move(args), out, err, in);
    return {code, out.str(), err.str()};
}

class TempDir
{
public:
    TempDir()
    {
        path_ = std::filesystem::temp_directory_path() /
                ("qgame_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                 ::testing::UnitTest::GetInstance()->current_test_info()->name());
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

} // namespace

TEST(Console, Tokenize)
{
    EXPECT_EQ(console::tokenize("$x=$g winningRegion 0"),
              (std::vector<std::string>{"$x", "=", "$g", "winningRegion", "0"}));
    EXPECT_EQ(console::tokenize("ParityGame readFile \"a b.xml\""),
              (std::vector<std::string>{"ParityGame", "readFile", "a b.xml"}));
    EXPECT_EQ(code_of([] { console::tokenize("x \"open"); }), Errc::ParseError);
}

TEST(Console, ReadAndSolve)
{
    ConsoleState st = data_console();
    EXPECT_EQ(eval_statement(st, "$g = ParityGame readFile stochastic_game.xml"),
              "$g = ParityGame: 4 states (1 random), 7 edges, parity, max priority 2, initial 0\n");
    EXPECT_EQ(eval_statement(st, "$w = $g winningRegion 0"), "$w = Region (player 0, almost-sure): {0, 1, 3}\n");
    EXPECT_EQ(eval_statement(st, "$w"), "Region (player 0, almost-sure): {0, 1, 3}\n");
    EXPECT_EQ(eval_statement(st, "$v = $w"), "$v = Region (player 0, almost-sure): {0, 1, 3}\n");
    EXPECT_EQ(eval_statement(st, "$g winningRegion 1"), "Region (player 1, almost-sure): {2}\n");
}

TEST(Console, Errors)
{
    ConsoleState st = data_console();
    EXPECT_EQ(code_of([&] { eval_statement(st, "$x"); }), Errc::UnboundVariable);
    EXPECT_EQ(code_of([&] { eval_statement(st, "$y = $x winningRegion 0"); }), Errc::UnboundVariable);
    EXPECT_EQ(code_of([&] { eval_statement(st, "x = ParityGame readFile a.xml"); }), Errc::ParseError);
    EXPECT_EQ(code_of([&] { eval_statement(st, "$x ="); }), Errc::ParseError);
    EXPECT_EQ(code_of([&] { eval_statement(st, "Foo readFile a.xml"); }), Errc::ParseError);
    eval_statement(st, "$g = ParityGame readFile stochastic_game.xml");
    EXPECT_EQ(code_of([&] { eval_statement(st, "$g cooperativeWinningRegion"); }), Errc::TypeMismatch);
    EXPECT_EQ(code_of([&] { eval_statement(st, "$g realizability"); }), Errc::TypeMismatch);
    EXPECT_EQ(code_of([&] { eval_statement(st, "$h = RabinGame readFile stochastic_game.xml"); }), Errc::TypeMismatch);
    EXPECT_EQ(code_of([&] { eval_statement(st, "LTL toDeterministicGame"); }), Errc::Unsupported);
    EXPECT_EQ(code_of([&] { eval_statement(st, "$g winningRegion 2"); }), Errc::ParseError);
}

TEST(Console, Help)
{
    ConsoleState st;
    EXPECT_NE(eval_statement(st, "help").find("ParityGame"), std::string::npos);
    const std::string game_help = eval_statement(st, "ParityGame help");
    for (const char* action : {"winningRegion", "cooperativeWinningRegion", "toDeterministicGame", "winningStrategy",
                               "readFile", "writeFile"}) {
        EXPECT_NE(game_help.find(action), std::string::npos) << action;
    }
}

TEST(Console, DeterministicGameKeepsRegion)
{
    ConsoleState st = data_console();
    eval_statement(st, "$g = ParityGame readFile stochastic_game.xml");
    eval_statement(st, "$d = $g toDeterministicGame");
    eval_statement(st, "$wg = $g winningRegion 0");
    eval_statement(st, "$wd = $d winningRegion 0");
    const auto& g = std::get<console::GameValue>(st.vars.at("$g"));
    const auto& wg = std::get<console::RegionValue>(st.vars.at("$wg")).region.states;
    std::vector<StateId> restricted;
    for (StateId s : std::get<console::RegionValue>(st.vars.at("$wd")).region.states) {
        if (s < g.game.size()) restricted.push_back(s);
    }
    EXPECT_EQ(restricted, wg);
}

TEST(Console, WriteAndReread)
{
    TempDir dir;
    ConsoleState st = data_console();
    eval_statement(st, "$g = ParityGame readFile two_player_game.xml");
    EXPECT_EQ(eval_statement(st, "$g writeFile \"" + dir.file("g.xml") + "\""), "wrote " + dir.file("g.xml") + "\n");
    EXPECT_EQ(read_text_file(dir.file("g.xml")), read_text_file(qgtest::data_path("two_player_game.xml")));
}

TEST(Console, SessionReplay)
{
    std::istringstream in("# comment\n$c = ParityGame readFile two_player_game.xml\n$c cooperativeWinningRegion\n$q\n");
    std::ostringstream out;
    ConsoleState st = data_console();
    EXPECT_EQ(run_session(st, in, out, true), 1u);
    EXPECT_EQ(out.str(), "qgame> $c = ParityGame readFile two_player_game.xml\n"
                         "$c = ParityGame: 3 states (0 random), 5 edges, parity, max priority 1, initial 0\n"
                         "qgame> $c cooperativeWinningRegion\n"
                         "Region (player 0, cooperative): {0, 1}\n"
                         "qgame> $q\n"
                         "error: UnboundVariable: variable $q is not bound\n");
}

TEST(Cli, SynthFairnessPrintsOneEdge)
{
    const CliRun r = run_cli({"synth", "fairness", qgtest::data_path("grant_cancel.xml")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "safety: none\nfairness: (0, !c)\n");
}

TEST(Cli, SynthCheck)
{
    EXPECT_EQ(run_cli({"synth", "check", qgtest::data_path("grant_cancel.xml")}).code, 1);
    EXPECT_EQ(run_cli({"synth", "check", qgtest::data_path("grant_cancel.xml")}).out, "unrealizable\n");
}

TEST(Cli, SolveAllOddLoop)
{
    TempDir dir;
    GameGraph g(1);
    g.add_edge(0, 0);
    g.set_initial(0);
    write_text_file(dir.file("odd.xml"), write_structure(document_from_game(g, Parity{{1}})));
    const CliRun r = run_cli({"solve", dir.file("odd.xml"), "--player", "0"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out, "winning region of player 0: {}\n");
    EXPECT_EQ(run_cli({"solve", dir.file("odd.xml"), "--player", "1"}).code, 0);
}

TEST(Cli, InputErrors)
{
    EXPECT_EQ(run_cli({"solve", "/nonexistent/file.xml"}).code, 2);
    EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
    EXPECT_EQ(run_cli({"solve", qgtest::data_path("stochastic_game.xml"), "--player", "5"}).code, 2);
}

TEST(Cli, UnsatisfiableSpecExitCode)
{
    TempDir dir;
    DetParityAutomaton a(PropAlphabet{{"x"}, {"y"}}, 1);
    for (Letter l = 0; l < 4; ++l) a.set_next(0, l, 0);
    a.acceptance = Parity{{1}};
    write_text_file(dir.file("false.xml"), write_structure(document_from_automaton(a)));
    EXPECT_EQ(run_cli({"synth", "safety", dir.file("false.xml")}).code, 3);
}

TEST(Cli, ConvertRoundTrip)
{
    TempDir dir;
    const CliRun pg = run_cli({"convert", qgtest::data_path("two_player_game.xml"), "--to", "pgsolver"});
    ASSERT_EQ(pg.code, 0);
    write_text_file(dir.file("g.pg"), pg.out);
    const CliRun back = run_cli({"convert", dir.file("g.pg"), "--to", "goal"});
    ASSERT_EQ(back.code, 0);
    const LoadedGame a = game_from_document(parse_structure(back.out));
    const LoadedGame b = game_from_document(parse_structure(read_text_file(qgtest::data_path("two_player_game.xml"))));
    EXPECT_EQ(a.game, b.game);
    EXPECT_EQ(a.objective, b.objective);
}

TEST(Cli, Bench)
{
    const CliRun r = run_cli({"bench", "--states", "100", "--edges", "400", "--priorities", "3", "--prob-frac", "0.1",
                              "--seed", "7", "--reps", "2"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("+--------+--------+---------+---------+---------+\n| States | Edges  |", 0), 0u);
    EXPECT_NE(r.out.find("|    100 |    400 |"), std::string::npos);
    const CliRun csv = run_cli({"bench", "--states", "100", "--edges", "400", "--csv"});
    EXPECT_EQ(csv.out.rfind("states,edges,avg,best,worst\n100,400,", 0), 0u);
}

TEST(Cli, Repl)
{
    const CliRun r = run_cli({"repl", "--echo"}, "help\n");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("qgame> help\nstatements:", 0), 0u);
}
