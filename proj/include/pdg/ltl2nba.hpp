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

#include "pdg/automata.hpp"
#include "pdg/logic.hpp"

namespace pdg {

/// Tableau translation of an LTL formula (no prompt operator) into a Buchi
/// automaton with L(A) = { w : w |= phi }. States are obligation sets over
/// the closure of phi plus a degeneralization counter.
Nba ltl_to_nba(const Formula& phi, const Alphabet& alphabet, const Budget& budget = {});

} // namespace pdg
