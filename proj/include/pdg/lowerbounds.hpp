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

#include <optional>

#include "pdg/common.hpp"
#include "pdg/logic.hpp"

namespace pdg {

/// The recursive sequence w_0 = [0], w_j = w_{j-1} j w_{j-1} over [0, m];
/// its length is 2^(m+1) - 1.
std::vector<int> w_sequence(size_t m, const Budget& budget = {});

/// Two positions holding the same value j with only smaller values strictly
/// between them.
struct BadPair {
    size_t i;
    size_t i2;
    int j;
    bool operator==(const BadPair&) const = default;
};

/// The leftmost bad pair ordered by (second position, then first), if any.
std::optional<BadPair> find_bad_pair(const std::vector<int>& s);

/// Cyclic-addressing building blocks over address bits b0..b(n-1)
/// (little-endian, b0 least significant): psi_inc asserts a binary increment
/// between adjacent positions; psi_zero = all bits zero now and G psi_inc.
struct AddressingFormulas {
    Formula inc;
    Formula zero_start; ///< all bits zero now, then always incrementing
};
AddressingFormulas addressing_formulas(size_t n);

/// Generated lookahead lower-bound instance: the formula together with its
/// input/output proposition split.
struct GeneratedGame {
    Formula formula;
    Partition part;
};

/// Lookahead family: (psi0 & psi1) -> (psi2 & psi3 & psi4 & psi5) over
/// inputs {b0..b(n-1), bi, sharp} and outputs {bo, left_mark, right_mark}.
GeneratedGame gen_theorem2(size_t n, const Budget& budget = {});

/// Prompt-bound family: the same with the extra conjunct FP right_mark.
GeneratedGame gen_theorem3(size_t n, const Budget& budget = {});

} // namespace pdg
