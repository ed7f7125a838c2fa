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

#include <cstdint>
#include <string>
#include <vector>

#include <qgame/error.hpp>

namespace qg {

using Letter = std::uint32_t;

/**
 * Input propositions (environment) followed by output propositions (system).
 * A full letter is a valuation with bit k for proposition k of `props()`;
 * input letters are the low bits, output letters the high bits.
 */
struct PropAlphabet
{
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;

    std::vector<std::string> props() const
    {
        std::vector<std::string> all = inputs;
        all.insert(all.end(), outputs.begin(), outputs.end());
        return all;
    }

    std::size_t prop_count() const { return inputs.size() + outputs.size(); }
    Letter input_letters() const { return Letter{1} << inputs.size(); }
    Letter output_letters() const { return Letter{1} << outputs.size(); }
    Letter letters() const { return Letter{1} << prop_count(); }

    Letter join(Letter input, Letter output) const { return input | (output << inputs.size()); }
    Letter input_of(Letter full) const { return full & (input_letters() - 1); }
    Letter output_of(Letter full) const { return full >> inputs.size(); }

    /// Conjunction of all literals of a valuation, e.g. "c & !g".
    static std::string valuation(Letter v, const std::vector<std::string>& names)
    {
        if (names.empty()) return "T";
        std::string out;
        for (std::size_t k = 0; k < names.size(); ++k) {
            if (k) out += " & ";
            if (!((v >> k) & 1u)) out += "!";
            out += names[k];
        }
        return out;
    }

    std::string format_input(Letter i) const { return valuation(i, inputs); }
    std::string format_output(Letter o) const { return valuation(o, outputs); }
    std::string format_letter(Letter full) const { return valuation(full, props()); }

    void validate(bool for_synthesis) const
    {
        auto all = props();
        for (std::size_t a = 0; a < all.size(); ++a) {
            for (std::size_t b = a + 1; b < all.size(); ++b) {
                if (all[a] == all[b]) throw Error(Errc::DuplicateProp, "proposition '" + all[a] + "' declared twice");
            }
        }
        if (all.size() > 16) throw Error(Errc::TooLarge, "at most 16 propositions are supported");
        if (for_synthesis && (inputs.empty() || outputs.empty())) {
            throw Error(Errc::InvalidSpec, "synthesis needs at least one input and one output proposition");
        }
    }

    friend bool operator==(const PropAlphabet&, const PropAlphabet&) = default;
};

} // namespace qg
