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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <qgame/error.hpp>

namespace qg {

struct Literal
{
    std::uint32_t prop; ///< index into the declared proposition list
    bool positive;

    friend bool operator==(const Literal&, const Literal&) = default;
};

/// Conjunction of literals; the empty conjunction is `true`.
struct Label
{
    std::vector<Literal> literals;

    bool is_true() const { return literals.empty(); }
    friend bool operator==(const Label&, const Label&) = default;
};

namespace detail {

inline bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

inline bool is_name_char(char c)
{
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '.' ||
           c == '-' || c == '\'';
}

} // namespace detail

/**
 * Parses `T | true | lit (AND lit)*` with `lit := NOT? name`, where NOT is
 * one of ¬ ! ~ and AND one of ∧ & &&. Literals are returned in the order
 * written.
 */
inline Label parse_label(std::string_view text, std::span<const std::string> props)
{
    using detail::starts_with;
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' || text[pos] == '\r'))
            ++pos;
    };
    auto fail = [&](const std::string& why) -> Error {
        return Error(Errc::SyntaxError, "label '" + std::string(text) + "' at offset " + std::to_string(pos) + ": " + why);
    };

    skip_ws();
    Label label;
    {
        std::size_t end = pos;
        while (end < text.size() && detail::is_name_char(text[end])) ++end;
        const auto word = text.substr(pos, end - pos);
        if (word == "T" || word == "true") {
            pos = end;
            skip_ws();
            if (pos != text.size()) throw fail("trailing input after constant");
            return label;
        }
    }
    while (true) {
        skip_ws();
        bool positive = true;
        while (true) {
            auto rest = text.substr(pos);
            if (starts_with(rest, "\xC2\xAC")) { // ¬
                pos += 2;
            } else if (starts_with(rest, "!") || starts_with(rest, "~")) {
                pos += 1;
            } else {
                break;
            }
            positive = !positive;
            skip_ws();
        }
        std::size_t end = pos;
        while (end < text.size() && detail::is_name_char(text[end])) ++end;
        if (end == pos) throw fail("expected a proposition");
        const std::string name(text.substr(pos, end - pos));
        auto it = std::find(props.begin(), props.end(), name);
        if (it == props.end()) throw Error(Errc::UnknownProp, "undeclared proposition '" + name + "'");
        const auto idx = static_cast<std::uint32_t>(it - props.begin());
        for (const Literal& l : label.literals) {
            if (l.prop == idx) throw Error(Errc::DuplicateProp, "proposition '" + name + "' appears twice");
        }
        label.literals.push_back({idx, positive});
        pos = end;
        skip_ws();
        if (pos == text.size()) return label;
        auto rest = text.substr(pos);
        if (starts_with(rest, "\xE2\x88\xA7")) { // ∧
            pos += 3;
        } else if (starts_with(rest, "&&")) {
            pos += 2;
        } else if (starts_with(rest, "&")) {
            pos += 1;
        } else {
            throw fail("expected a conjunction");
        }
    }
}

/// Canonical ASCII rendering: literals joined by " & ", negation "!",
/// `T` for true.
inline std::string format_label(const Label& label, std::span<const std::string> props)
{
    if (label.is_true()) return "T";
    std::string out;
    for (const Literal& l : label.literals) {
        if (!out.empty()) out += " & ";
        if (!l.positive) out += "!";
        out += props[l.prop];
    }
    return out;
}

} // namespace qg
