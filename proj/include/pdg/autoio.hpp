/*
 * Copyright 2026 the promptdelay authors
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

#include <iosfwd>
#include <string>
#include <variant>

#include "pdg/automata.hpp"

namespace pdg {

/// Automaton text format. Field names are a stability contract:
///
///   type: nba|dpa
///   aps: a b c
///   states: N
///   initial: q
///   accepting: q1 q2 ...      (nba only; may be empty)
///   colors: c0 c1 ... cN-1    (dpa only; one per state)
///   transitions:
///   <src> <letter-bitset> -> <target> [<target> ...]
///   end
///
/// Letters are bitsets over aps: bit i set iff aps[i] is present. For a dpa
/// every (state, letter) pair must appear exactly once with one target.
using Automaton = std::variant<Nba, Dpa>;

std::string write_automaton(const Automaton& a);
Automaton read_automaton(const std::string& text);

Automaton read_automaton_file(const std::string& path);
void write_automaton_file(const Automaton& a, const std::string& path);

} // namespace pdg
