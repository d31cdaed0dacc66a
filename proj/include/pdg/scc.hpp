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

#include <vector>

namespace pdg {

/// Strongly connected components, iterative Tarjan. Returns one component id
/// per vertex; ids are in reverse topological order of the condensation.
struct SccResult {
    std::vector<int> comp;
    int count = 0;
};

SccResult tarjan_scc(const std::vector<std::vector<int>>& adj);

/// True iff vertex v lies on a cycle (its component is nontrivial or v has a
/// self-loop).
std::vector<char> cycle_vertices(const std::vector<std::vector<int>>& adj,
                                 const SccResult& scc);

} // namespace pdg
