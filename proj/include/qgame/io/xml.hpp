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

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <expat.h>

#include <qgame/error.hpp>

namespace qg::xml {

/// Element tree produced by expat; text is the concatenated character data.
struct Node
{
    std::string name;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::string text;
    std::vector<Node> children;
    long line = 0;
    long column = 0;

    const std::string* attribute(std::string_view key) const
    {
        for (const auto& [k, v] : attributes) {
            if (k == key) return &v;
        }
        return nullptr;
    }
};

namespace detail {

struct ParseState
{
    XML_Parser parser;
    Node root;
    std::vector<Node*> stack;
    bool has_root = false;
};

inline void on_start(void* user, const XML_Char* name, const XML_Char** atts)
{
    auto* st = static_cast<ParseState*>(user);
    Node node;
    node.name = name;
    node.line = static_cast<long>(XML_GetCurrentLineNumber(st->parser));
    node.column = static_cast<long>(XML_GetCurrentColumnNumber(st->parser)) + 1;
    for (std::size_t k = 0; atts[k]; k += 2) node.attributes.emplace_back(atts[k], atts[k + 1]);
    if (st->stack.empty()) {
        st->root = std::move(node);
        st->has_root = true;
        st->stack.push_back(&st->root);
        return;
    }
    Node* parent = st->stack.back();
    parent->children.push_back(std::move(node));
    st->stack.push_back(&parent->children.back());
}

inline void on_end(void* user, const XML_Char*)
{
    static_cast<ParseState*>(user)->stack.pop_back();
}

inline void on_text(void* user, const XML_Char* s, int len)
{
    auto* st = static_cast<ParseState*>(user);
    if (!st->stack.empty()) st->stack.back()->text.append(s, static_cast<std::size_t>(len));
}

} // namespace detail

/// Parses a complete document. Malformed input raises `SyntaxError` with the
/// 1-based line and column reported by expat.
inline Node parse(std::string_view text)
{
    std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(XML_ParserCreate("UTF-8"),
                                                                                          &XML_ParserFree);
    if (!parser) throw Error(Errc::IoError, "cannot create XML parser");
    detail::ParseState st{parser.get(), {}, {}, false};
    XML_SetUserData(parser.get(), &st);
    XML_SetElementHandler(parser.get(), &detail::on_start, &detail::on_end);
    XML_SetCharacterDataHandler(parser.get(), &detail::on_text);
    if (XML_Parse(parser.get(), text.data(), static_cast<int>(text.size()), XML_TRUE) == XML_STATUS_ERROR) {
        throw Error(Errc::SyntaxError, "line " + std::to_string(XML_GetCurrentLineNumber(parser.get())) +
                                           ", column " +
                                           std::to_string(XML_GetCurrentColumnNumber(parser.get()) + 1) + ": " +
                                           XML_ErrorString(XML_GetErrorCode(parser.get())));
    }
    if (!st.has_root) throw Error(Errc::SyntaxError, "line 1, column 1: no root element");
    return std::move(st.root);
}

inline std::string escape(std::string_view s)
{
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

inline std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

} // namespace qg::xml
