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
#include <charconv>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <qgame/error.hpp>
#include <qgame/io/label.hpp>
#include <qgame/io/xml.hpp>

namespace qg {

enum class StructureKind { Game, Fa };
enum class PropType { Input, Output, Untyped };
enum class AccType { Buchi, Parity, Rabin, Streett };

struct PropDecl
{
    std::string name;
    PropType type = PropType::Untyped;
    friend bool operator==(const PropDecl&, const PropDecl&) = default;
};

struct StateDecl
{
    std::uint64_t sid = 0;
    std::optional<int> player; ///< 0, 1, or -1 for a random state
    std::optional<std::string> label;
    friend bool operator==(const StateDecl&, const StateDecl&) = default;
};

struct TransitionDecl
{
    std::uint64_t tid = 0;
    std::uint64_t from = 0;
    std::uint64_t to = 0;
    std::optional<std::string> read;
    friend bool operator==(const TransitionDecl&, const TransitionDecl&) = default;
};

/// One `accSet`: either a plain state list or an (E, F) pair.
struct AccSet
{
    bool paired = false;
    std::vector<std::uint64_t> states;
    std::vector<std::uint64_t> e;
    std::vector<std::uint64_t> f;
    friend bool operator==(const AccSet&, const AccSet&) = default;
};

struct Acceptance
{
    AccType type = AccType::Parity;
    std::vector<AccSet> sets;
    friend bool operator==(const Acceptance&, const Acceptance&) = default;
};

/// In-memory form of a `<structure label-on="transition">` file.
struct StructureDocument
{
    StructureKind kind = StructureKind::Game;
    std::vector<PropDecl> props;
    std::vector<StateDecl> states;
    std::vector<TransitionDecl> transitions;
    std::vector<std::uint64_t> initial;
    std::optional<Acceptance> acceptance;

    std::vector<std::string> prop_names() const
    {
        std::vector<std::string> out;
        for (const auto& p : props) out.push_back(p.name);
        return out;
    }

    friend bool operator==(const StructureDocument&, const StructureDocument&) = default;
};

inline std::string_view to_string(AccType t)
{
    switch (t) {
    case AccType::Buchi: return "buchi";
    case AccType::Parity: return "parity";
    case AccType::Rabin: return "rabin";
    case AccType::Streett: return "streett";
    }
    return "parity";
}

/// States ascending by sid and transitions ascending by tid; the form that
/// `write_structure` emits and `parse_structure` returns for its output.
inline StructureDocument canonicalize(StructureDocument d)
{
    std::stable_sort(d.states.begin(), d.states.end(), [](const auto& a, const auto& b) { return a.sid < b.sid; });
    std::stable_sort(d.transitions.begin(), d.transitions.end(),
                     [](const auto& a, const auto& b) { return a.tid < b.tid; });
    return d;
}

namespace detail {

[[noreturn]] inline void schema(const xml::Node& at, const std::string& rule, const std::string& what)
{
    throw Error(Errc::SchemaError,
                "rule '" + rule + "' violated at line " + std::to_string(at.line) + ": " + what);
}

inline std::uint64_t numeric(const xml::Node& at, std::string_view text, const std::string& rule)
{
    text = xml::trim(text);
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || p != text.data() + text.size()) {
        schema(at, rule, "'" + std::string(text) + "' is not a NUMERIC value");
    }
    return v;
}

inline std::vector<std::uint64_t> state_ids(const xml::Node& parent, const std::string& rule)
{
    std::vector<std::uint64_t> ids;
    for (const auto& c : parent.children) {
        if (c.name != "stateID") schema(c, rule, "unexpected element <" + c.name + ">");
        ids.push_back(numeric(c, c.text, rule));
    }
    return ids;
}

inline const xml::Node* single(const xml::Node& parent, std::string_view name, bool required, const std::string& rule)
{
    const xml::Node* found = nullptr;
    for (const auto& c : parent.children) {
        if (c.name != name) continue;
        if (found) schema(c, rule, "duplicate <" + std::string(name) + ">");
        found = &c;
    }
    if (!found && required) schema(parent, rule, "missing <" + std::string(name) + ">");
    return found;
}

} // namespace detail

/**
 * Parses the structure format. Player tags map 0/1/-1 to player 0, player 1
 * and random states. Raises SyntaxError for malformed XML, SchemaError for
 * grammar violations, UnknownProp/DuplicateProp/SyntaxError for bad labels.
 */
inline StructureDocument parse_structure(std::string_view text)
{
    using detail::schema;
    const xml::Node root = xml::parse(text);
    StructureDocument doc;

    if (root.name != "structure") schema(root, "structure", "root element must be <structure>");
    const std::string* type = root.attribute("type");
    if (!type) schema(root, "structure/@type", "missing type attribute");
    if (*type == "game") doc.kind = StructureKind::Game;
    else if (*type == "fa") doc.kind = StructureKind::Fa;
    else schema(root, "structure/@type", "type must be game or fa, got '" + *type + "'");
    if (const auto* lo = root.attribute("label-on"); lo && *lo != "transition") {
        schema(root, "structure/@label-on", "only label-on=\"transition\" is supported");
    }
    for (const auto& c : root.children) {
        static const std::set<std::string> known{"alphabet", "stateSet", "transitionSet", "initialStateSet", "acc"};
        if (!known.count(c.name)) schema(c, "structure", "unexpected element <" + c.name + ">");
    }

    if (const auto* alpha = detail::single(root, "alphabet", false, "alphabet")) {
        if (const auto* t = alpha->attribute("type"); t && *t != "propositional") {
            schema(*alpha, "alphabet/@type", "alphabet type must be propositional");
        }
        for (const auto& p : alpha->children) {
            if (p.name != "prop") schema(p, "alphabet", "unexpected element <" + p.name + ">");
            PropDecl d;
            d.name = std::string(xml::trim(p.text));
            if (d.name.empty()) schema(p, "prop", "empty proposition name");
            if (const auto* pt = p.attribute("type")) {
                if (*pt == "input") d.type = PropType::Input;
                else if (*pt == "output") d.type = PropType::Output;
                else schema(p, "prop/@type", "prop type must be input or output");
            }
            for (const auto& q : doc.props) {
                if (q.name == d.name) throw Error(Errc::DuplicateProp, "proposition '" + d.name + "' declared twice");
            }
            doc.props.push_back(std::move(d));
        }
    }
    const auto names = doc.prop_names();

    const auto* state_set = detail::single(root, "stateSet", true, "stateSet");
    std::set<std::uint64_t> sids;
    for (const auto& s : state_set->children) {
        if (s.name != "state") schema(s, "stateSet", "unexpected element <" + s.name + ">");
        const auto* sid = s.attribute("sid");
        if (!sid) schema(s, "state/@sid", "missing sid");
        StateDecl d;
        d.sid = detail::numeric(s, *sid, "state/@sid");
        if (!sids.insert(d.sid).second) schema(s, "state/@sid unique", "duplicate sid " + *sid);
        for (const auto& c : s.children) {
            if (c.name == "player") {
                if (d.player) schema(c, "state/player", "duplicate <player>");
                const auto v = xml::trim(c.text);
                if (v == "0") d.player = 0;
                else if (v == "1") d.player = 1;
                else if (v == "-1") d.player = -1;
                else schema(c, "state/player", "player must be 0, 1 or -1");
            } else if (c.name == "label") {
                if (d.label) schema(c, "state/label", "duplicate <label>");
                d.label = std::string(xml::trim(c.text));
            } else {
                schema(c, "state", "unexpected element <" + c.name + ">");
            }
        }
        if (doc.kind == StructureKind::Game && !d.player) schema(s, "state/player", "game states need a player tag");
        if (doc.kind == StructureKind::Fa && d.player) schema(s, "state/player", "automaton states take no player tag");
        doc.states.push_back(std::move(d));
    }
    if (doc.states.empty()) schema(*state_set, "stateSet", "a structure needs at least one state");

    const auto* trans_set = detail::single(root, "transitionSet", true, "transitionSet");
    std::set<std::uint64_t> tids;
    for (const auto& t : trans_set->children) {
        if (t.name != "transition") schema(t, "transitionSet", "unexpected element <" + t.name + ">");
        const auto* tid = t.attribute("tid");
        if (!tid) schema(t, "transition/@tid", "missing tid");
        TransitionDecl d;
        d.tid = detail::numeric(t, *tid, "transition/@tid");
        if (!tids.insert(d.tid).second) schema(t, "transition/@tid unique", "duplicate tid " + *tid);
        for (const auto& c : t.children) {
            static const std::set<std::string> known{"from", "to", "read"};
            if (!known.count(c.name)) schema(c, "transition", "unexpected element <" + c.name + ">");
        }
        const auto* from = detail::single(t, "from", true, "transition/from");
        const auto* to = detail::single(t, "to", true, "transition/to");
        d.from = detail::numeric(*from, from->text, "transition/from");
        d.to = detail::numeric(*to, to->text, "transition/to");
        if (!sids.count(d.from)) schema(*from, "transition/from", "unknown state " + std::to_string(d.from));
        if (!sids.count(d.to)) schema(*to, "transition/to", "unknown state " + std::to_string(d.to));
        if (const auto* read = detail::single(t, "read", false, "transition/read")) {
            d.read = std::string(xml::trim(read->text));
            parse_label(*d.read, names);
        } else if (doc.kind == StructureKind::Fa) {
            schema(t, "transition/read", "automaton transitions need a <read> label");
        }
        doc.transitions.push_back(std::move(d));
    }

    if (const auto* init = detail::single(root, "initialStateSet", false, "initialStateSet")) {
        doc.initial = detail::state_ids(*init, "initialStateSet");
        for (auto s : doc.initial) {
            if (!sids.count(s)) schema(*init, "initialStateSet", "unknown state " + std::to_string(s));
        }
    }
    if (doc.kind == StructureKind::Game && doc.initial.size() != 1) {
        schema(root, "initialStateSet", "a game needs exactly one initial state");
    }
    if (doc.kind == StructureKind::Fa && doc.initial.empty()) {
        schema(root, "initialStateSet", "an automaton needs an initial state");
    }

    if (const auto* acc = detail::single(root, "acc", false, "acc")) {
        Acceptance a;
        const auto* at = acc->attribute("type");
        if (!at) schema(*acc, "acc/@type", "missing acceptance type");
        if (*at == "buchi") a.type = AccType::Buchi;
        else if (*at == "parity") a.type = AccType::Parity;
        else if (*at == "rabin") a.type = AccType::Rabin;
        else if (*at == "streett") a.type = AccType::Streett;
        else schema(*acc, "acc/@type", "unsupported acceptance type '" + *at + "'");
        const bool paired = a.type == AccType::Rabin || a.type == AccType::Streett;
        for (const auto& set : acc->children) {
            if (set.name != "accSet") schema(set, "acc", "unexpected element <" + set.name + ">");
            AccSet s;
            s.paired = paired;
            if (paired) {
                for (const auto& c : set.children) {
                    if (c.name != "E" && c.name != "F") {
                        schema(c, "accSet (E, F)", "rabin/streett accSet holds exactly one E and one F");
                    }
                }
                const auto* e = detail::single(set, "E", true, "accSet (E, F)");
                const auto* f = detail::single(set, "F", true, "accSet (E, F)");
                s.e = detail::state_ids(*e, "accSet/E");
                s.f = detail::state_ids(*f, "accSet/F");
            } else {
                s.states = detail::state_ids(set, "accSet");
            }
            for (const auto* ids : {&s.states, &s.e, &s.f}) {
                for (auto id : *ids) {
                    if (!sids.count(id)) schema(set, "accSet", "unknown state " + std::to_string(id));
                }
            }
            a.sets.push_back(std::move(s));
        }
        if (a.type == AccType::Buchi && a.sets.size() != 1) schema(*acc, "acc buchi", "buchi needs one accSet");
        if (a.type == AccType::Parity) {
            std::set<std::uint64_t> seen;
            for (const auto& s : a.sets) {
                for (auto id : s.states) {
                    if (!seen.insert(id).second) {
                        schema(*acc, "acc parity disjoint", "state " + std::to_string(id) + " has two priorities");
                    }
                }
            }
            if (seen.size() != sids.size()) schema(*acc, "acc parity cover", "every state needs a priority");
        }
        doc.acceptance = std::move(a);
    }
    return doc;
}

namespace detail {

inline void write_ids(std::string& out, const std::vector<std::uint64_t>& ids, const std::string& indent)
{
    for (auto id : ids) out += indent + "<stateID>" + std::to_string(id) + "</stateID>\n";
}

inline void write_id_block(std::string& out, const char* tag, const std::vector<std::uint64_t>& ids,
                           const std::string& indent)
{
    if (ids.empty()) {
        out += indent + "<" + tag + "/>\n";
        return;
    }
    out += indent + "<" + tag + ">\n";
    write_ids(out, ids, indent + "  ");
    out += indent + "</" + tag + ">\n";
}

} // namespace detail

/// Canonical serialization: UTF-8, two-space indentation, states by sid,
/// transitions by tid.
inline std::string write_structure(const StructureDocument& input)
{
    const StructureDocument doc = canonicalize(input);
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += std::string("<structure label-on=\"transition\" type=\"") +
           (doc.kind == StructureKind::Game ? "game" : "fa") + "\">\n";
    if (doc.props.empty()) {
        out += "  <alphabet type=\"propositional\"/>\n";
    } else {
        out += "  <alphabet type=\"propositional\">\n";
        for (const auto& p : doc.props) {
            out += "    <prop";
            if (p.type == PropType::Input) out += " type=\"input\"";
            if (p.type == PropType::Output) out += " type=\"output\"";
            out += ">" + xml::escape(p.name) + "</prop>\n";
        }
        out += "  </alphabet>\n";
    }
    out += "  <stateSet>\n";
    for (const auto& s : doc.states) {
        if (!s.player && !s.label) {
            out += "    <state sid=\"" + std::to_string(s.sid) + "\"/>\n";
            continue;
        }
        out += "    <state sid=\"" + std::to_string(s.sid) + "\">\n";
        if (s.player) out += "      <player>" + std::to_string(*s.player) + "</player>\n";
        if (s.label) out += "      <label>" + xml::escape(*s.label) + "</label>\n";
        out += "    </state>\n";
    }
    out += "  </stateSet>\n";
    if (doc.transitions.empty()) {
        out += "  <transitionSet/>\n";
    } else {
        out += "  <transitionSet>\n";
        for (const auto& t : doc.transitions) {
            out += "    <transition tid=\"" + std::to_string(t.tid) + "\">\n";
            out += "      <from>" + std::to_string(t.from) + "</from>\n";
            out += "      <to>" + std::to_string(t.to) + "</to>\n";
            if (t.read) out += "      <read>" + xml::escape(*t.read) + "</read>\n";
            out += "    </transition>\n";
        }
        out += "  </transitionSet>\n";
    }
    detail::write_id_block(out, "initialStateSet", doc.initial, "  ");
    if (doc.acceptance) {
        const auto& a = *doc.acceptance;
        if (a.sets.empty()) {
            out += "  <acc type=\"" + std::string(to_string(a.type)) + "\"/>\n";
        } else {
            out += "  <acc type=\"" + std::string(to_string(a.type)) + "\">\n";
            for (const auto& s : a.sets) {
                if (!s.paired) {
                    detail::write_id_block(out, "accSet", s.states, "    ");
                    continue;
                }
                out += "    <accSet>\n";
                detail::write_id_block(out, "E", s.e, "      ");
                detail::write_id_block(out, "F", s.f, "      ");
                out += "    </accSet>\n";
            }
            out += "  </acc>\n";
        }
    }
    out += "</structure>\n";
    return out;
}

} // namespace qg
