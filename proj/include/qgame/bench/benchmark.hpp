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
#include <chrono>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <qgame/almost_sure.hpp>
#include <qgame/bench/random.hpp>

namespace qg {

struct BenchRow
{
    std::size_t states = 0;
    std::size_t edges = 0;
    double avg = 0, best = 0, worst = 0; ///< seconds
    std::optional<std::string> error;    ///< set when a solve failed
};

/// Wall-clock seconds of one almost-sure solve for player 0.
inline double time_almost_sure(const GeneratedGame& gg)
{
    const auto start = std::chrono::steady_clock::now();
    auto r = almost_sure_solve(gg.game, gg.objective, Player::Zero);
    const auto stop = std::chrono::steady_clock::now();
    (void)r;
    return std::chrono::duration<double>(stop - start).count();
}

/// Generates `repetitions` games per BenchSpec (seeds derived from its seed)
/// and times player 0's almost-sure solve on each.
inline std::vector<BenchRow> run_benchmark(const std::vector<BenchSpec>& specs)
{
    std::vector<BenchRow> rows;
    for (const BenchSpec& spec : specs) {
        BenchRow row;
        row.states = spec.states;
        row.edges = spec.edges;
        try {
            validate(spec);
            SplitMix64 seeds(spec.seed);
            std::vector<double> times;
            for (std::size_t k = 0; k < std::max<std::size_t>(spec.repetitions, 1); ++k) {
                BenchSpec one = spec;
                one.seed = seeds();
                times.push_back(time_almost_sure(random_game(one)));
            }
            double sum = 0;
            for (double t : times) sum += t;
            row.avg = sum / static_cast<double>(times.size());
            row.best = *std::min_element(times.begin(), times.end());
            row.worst = *std::max_element(times.begin(), times.end());
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(row);
    }
    return rows;
}

namespace detail {

inline std::string fmt_seconds(double s)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", s);
    return buf;
}

inline std::string pad_left(const std::string& s, std::size_t w)
{
    return s.size() >= w ? s : std::string(w - s.size(), ' ') + s;
}

inline std::string center(const std::string& s, std::size_t w)
{
    if (s.size() >= w) return s;
    const std::size_t left = (w - s.size()) / 2;
    return std::string(left, ' ') + s + std::string(w - s.size() - left, ' ');
}

} // namespace detail

/**
 * Runtime table laid out like
 *
 *   | States | Edges  |    Runtime (sec.)     |
 *   |        |        |  Avg. |  Best | Worst |
 *
 * with two decimals per time.
 */
inline std::string format_table(const std::vector<BenchRow>& rows)
{
    using detail::center;
    using detail::pad_left;
    constexpr std::size_t w = 8, tw = 9;
    const std::string rule = "+" + std::string(w, '-') + "+" + std::string(w, '-') + "+" + std::string(tw, '-') + "+" +
                             std::string(tw, '-') + "+" + std::string(tw, '-') + "+\n";
    std::string out = rule;
    out += "|" + center("States", w) + "|" + center("Edges", w) + "|" + center("Runtime (sec.)", 3 * tw + 2) + "|\n";
    out += "|" + std::string(w, ' ') + "|" + std::string(w, ' ') + "|" + center("Avg.", tw) + "|" +
           center("Best", tw) + "|" + center("Worst", tw) + "|\n";
    out += rule;
    for (const BenchRow& r : rows) {
        out += "|" + pad_left(std::to_string(r.states) + " ", w) + "|" + pad_left(std::to_string(r.edges) + " ", w) + "|";
        if (r.error) {
            out += center("error: " + *r.error, 3 * tw + 2) + "|\n";
            continue;
        }
        out += pad_left(detail::fmt_seconds(r.avg) + " ", tw) + "|" + pad_left(detail::fmt_seconds(r.best) + " ", tw) +
               "|" + pad_left(detail::fmt_seconds(r.worst) + " ", tw) + "|\n";
    }
    out += rule;
    return out;
}

/// `states,edges,avg,best,worst` with one line per successful row.
inline std::string format_csv(const std::vector<BenchRow>& rows)
{
    std::string out = "states,edges,avg,best,worst\n";
    for (const BenchRow& r : rows) {
        if (r.error) continue;
        out += std::to_string(r.states) + "," + std::to_string(r.edges) + "," + detail::fmt_seconds(r.avg) + "," +
               detail::fmt_seconds(r.best) + "," + detail::fmt_seconds(r.worst) + "\n";
    }
    return out;
}

} // namespace qg
