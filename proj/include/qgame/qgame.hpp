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

#include <qgame/almost_sure.hpp>
#include <qgame/attractor.hpp>
#include <qgame/bench/benchmark.hpp>
#include <qgame/bench/random.hpp>
#include <qgame/console.hpp>
#include <qgame/cooperative.hpp>
#include <qgame/error.hpp>
#include <qgame/game.hpp>
#include <qgame/io/convert.hpp>
#include <qgame/io/file.hpp>
#include <qgame/io/label.hpp>
#include <qgame/io/pgsolver.hpp>
#include <qgame/io/structure.hpp>
#include <qgame/objective.hpp>
#include <qgame/oracle.hpp>
#include <qgame/reduction.hpp>
#include <qgame/scc.hpp>
#include <qgame/strategy.hpp>
#include <qgame/synthesis/assumption_automaton.hpp>
#include <qgame/synthesis/automaton.hpp>
#include <qgame/synthesis/synthesis_game.hpp>
#include <qgame/synthesis/transducer.hpp>
#include <qgame/zielonka.hpp>
