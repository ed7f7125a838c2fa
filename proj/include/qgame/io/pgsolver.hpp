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
#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include <qgame/error.hpp>
#include <qgame/game.hpp>
#include <qgame/objective.hpp>

namespace qg {

/// Order-reversing priority map between min-even and max-even parity:
/// p' = top - p, with `top` even so the winner of each value is kept.
inline Priority flip_priority(Priority p, Priority top) { return top - p; }

struct PgGame
{
    GameGraph game;
    Parity objective;
};

/**
 * PGSolver text format: `parity <max id>;`, optional `start <id>;`, then one
 * `id priority owner succ,succ,... ["label"];` line per node. PGSolver is
 * max-parity, so priorities are flipped against the least even value
 * bounding the maximum priority.
 */
inline std::string export_pgsolver(const GameGraph& g, const Parity& obj)
{
    if (g.has_random_states()) throw Error(Errc::NotDeterministicGame, "PGSolver games have no random states");
    if (g.size() == 0) throw Error(Errc::InvalidGame, "empty game");
    const Priority top = even_ceiling(obj.max_priority());
    std::string out = "parity " + std::to_string(g.size() - 1) + ";\n";
    if (g.initial()) out += "start " + std::to_string(*g.initial()) + ";\n";
    for (StateId s = 0; s < g.size(); ++s) {
        out += std::to_string(s) + " " + std::to_string(flip_priority(obj.priority[s], top)) + " " +
               (g.owner(s) == Owner::Player0 ? "0" : "1") + " ";
        bool first = true;
        for (StateId t : g.successors(s)) {
            if (!first) out += ",";
            out += std::to_string(t);
            first = false;
        }
        if (const auto& label = g.label(s)) {
            std::string text = *label;
            std::replace(text.begin(), text.end(), '"', '\'');
            out += " \"" + text + "\"";
        }
        out += ";\n";
    }
    return out;
}

namespace detail {

class PgLexer
{
public:
    explicit PgLexer(std::string_view text) : text_(text) {}

    [[noreturn]] void fail(const std::string& what) const
    {
        throw Error(Errc::SyntaxError, "line " + std::to_string(line_) + ": " + what);
    }

    void skip_ws()
    {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '\n') ++line_;
            if (c != ' ' && c != '\t' && c != '\n' && c != '\r') break;
            ++pos_;
        }
    }

    bool at_end()
    {
        skip_ws();
        return pos_ == text_.size();
    }

    bool peek(char c)
    {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    void expect(char c)
    {
        if (!peek(c)) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string_view word()
    {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return text_.substr(start, pos_ - start);
    }

    std::uint64_t number()
    {
        skip_ws();
        std::uint64_t v = 0;
        auto [p, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
        if (ec != std::errc()) fail("expected a number");
        pos_ = static_cast<std::size_t>(p - text_.data());
        return v;
    }

    std::string quoted()
    {
        expect('"');
        const std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] != '"') {
            if (text_[pos_] == '\n') fail("unterminated label");
            ++pos_;
        }
        if (pos_ == text_.size()) fail("unterminated label");
        return std::string(text_.substr(start, pos_++ - start));
    }

    std::pair<std::size_t, std::size_t> save() const { return {pos_, line_}; }
    void restore(std::pair<std::size_t, std::size_t> mark) { std::tie(pos_, line_) = mark; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
};

} // namespace detail

/// Reads the PGSolver format. Node ids may be sparse; they are renumbered
/// densely in ascending order.
inline PgGame import_pgsolver(std::string_view text)
{
    detail::PgLexer lex(text);
    if (lex.word() != "parity") lex.fail("expected 'parity' header");
    lex.number();
    lex.expect(';');
    std::optional<std::uint64_t> start;
    {
        const auto mark = lex.save();
        if (lex.word() == "start") {
            start = lex.number();
            lex.expect(';');
        } else {
            lex.restore(mark);
        }
    }
    struct Node
    {
        std::uint64_t priority;
        Owner owner;
        std::vector<std::uint64_t> succ;
        std::optional<std::string> label;
    };
    std::map<std::uint64_t, Node> nodes;
    while (!lex.at_end()) {
        const auto id = lex.number();
        Node node;
        node.priority = lex.number();
        const auto owner = lex.number();
        if (owner > 1) lex.fail("owner must be 0 or 1");
        node.owner = owner == 0 ? Owner::Player0 : Owner::Player1;
        node.succ.push_back(lex.number());
        while (lex.peek(',')) {
            lex.expect(',');
            node.succ.push_back(lex.number());
        }
        if (lex.peek('"')) node.label = lex.quoted();
        lex.expect(';');
        if (!nodes.emplace(id, std::move(node)).second) lex.fail("node " + std::to_string(id) + " defined twice");
    }
    if (nodes.empty()) lex.fail("no nodes");

    std::map<std::uint64_t, StateId> index;
    for (const auto& [id, node] : nodes) index.emplace(id, static_cast<StateId>(index.size()));
    PgGame r;
    std::uint64_t max_prio = 0;
    for (const auto& [id, node] : nodes) {
        r.game.add_state(node.owner, node.label);
        max_prio = std::max(max_prio, node.priority);
    }
    const auto top = static_cast<Priority>(max_prio + (max_prio & 1u));
    for (const auto& [id, node] : nodes) {
        const StateId s = index.at(id);
        for (auto t : node.succ) {
            auto it = index.find(t);
            if (it == index.end()) {
                throw Error(Errc::SyntaxError, "node " + std::to_string(id) + " has unknown successor " + std::to_string(t));
            }
            if (!r.game.has_edge(s, it->second)) r.game.add_edge(s, it->second);
        }
        r.objective.priority.push_back(flip_priority(static_cast<Priority>(node.priority), top));
    }
    if (start) {
        auto it = index.find(*start);
        if (it == index.end()) throw Error(Errc::SyntaxError, "unknown start node " + std::to_string(*start));
        r.game.set_initial(it->second);
    }
    return r;
}

} // namespace qg
