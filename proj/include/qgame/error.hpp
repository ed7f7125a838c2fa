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

#include <stdexcept>
#include <string>
#include <string_view>

namespace qg {

/// Error categories reported by the library. Every failing operation throws
/// `qg::Error` carrying one of these codes.
enum class Errc {
    InvalidGame,
    DeadEndCreated,
    RandomSupportBroken,
    NotDeterministicGame,
    NoPairs,
    UndefinedOnRegion,
    TooLarge,
    IncompleteAutomaton,
    NonDeterministicAutomaton,
    SpecUnsatisfiable,
    EnvDeadlocked,
    NotEnvEdge,
    NoFairnessAssumptionExists,
    StrategyIncomplete,
    SyntaxError,
    SchemaError,
    UnknownProp,
    DuplicateProp,
    IoError,
    InvalidSpec,
    ParseError,
    UnboundVariable,
    TypeMismatch,
    Unsupported,
};

inline std::string_view to_string(Errc code)
{
    switch (code) {
    case Errc::InvalidGame: return "InvalidGame";
    case Errc::DeadEndCreated: return "DeadEndCreated";
    case Errc::RandomSupportBroken: return "RandomSupportBroken";
    case Errc::NotDeterministicGame: return "NotDeterministicGame";
    case Errc::NoPairs: return "NoPairs";
    case Errc::UndefinedOnRegion: return "UndefinedOnRegion";
    case Errc::TooLarge: return "TooLarge";
    case Errc::IncompleteAutomaton: return "IncompleteAutomaton";
    case Errc::NonDeterministicAutomaton: return "NonDeterministicAutomaton";
    case Errc::SpecUnsatisfiable: return "SpecUnsatisfiable";
    case Errc::EnvDeadlocked: return "EnvDeadlocked";
    case Errc::NotEnvEdge: return "NotEnvEdge";
    case Errc::NoFairnessAssumptionExists: return "NoFairnessAssumptionExists";
    case Errc::StrategyIncomplete: return "StrategyIncomplete";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::SchemaError: return "SchemaError";
    case Errc::UnknownProp: return "UnknownProp";
    case Errc::DuplicateProp: return "DuplicateProp";
    case Errc::IoError: return "IoError";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::ParseError: return "ParseError";
    case Errc::UnboundVariable: return "UnboundVariable";
    case Errc::TypeMismatch: return "TypeMismatch";
    case Errc::Unsupported: return "Unsupported";
    }
    return "Unknown";
}

class Error : public std::runtime_error
{
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace qg
