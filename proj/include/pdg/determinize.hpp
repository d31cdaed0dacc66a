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

namespace pdg {

/// Determinization via compact history trees, emitting a max-parity DPA
/// directly (no intermediate Rabin automaton). L(result) = L(A); the result
/// is complete, with colors compressed to a dense range.
Dpa determinize(const Nba& A, const Budget& budget = {});

} // namespace pdg
