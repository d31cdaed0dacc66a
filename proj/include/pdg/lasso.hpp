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

#include <set>
#include <string>
#include <vector>

namespace pdg {

/// One letter of an omega-word: the set of propositions that hold.
using PropSet = std::set<std::string>;

/// The fresh proposition used by the alternating-color technique. It is
/// reserved: user alphabets may not declare it.
inline const std::string kColorProp = "p";

/// Ultimately periodic word u . v^omega. The loop v is never empty.
/// Position i >= |u| denotes v[(i - |u|) mod |v|].
struct LassoWord {
    std::vector<PropSet> prefix;
    std::vector<PropSet> loop;

    LassoWord() = default;
    LassoWord(std::vector<PropSet> u, std::vector<PropSet> v);

    size_t prefix_len() const { return prefix.size(); }
    size_t loop_len() const { return loop.size(); }
    /// Number of distinct positions: |u| + |v|.
    size_t span() const { return prefix.size() + loop.size(); }

    /// Folds an arbitrary position into [0, span()).
    size_t canonical(size_t i) const {
        size_t u = prefix.size();
        return i < span() ? i : u + (i - u) % loop.size();
    }
    const PropSet& at(size_t i) const {
        size_t c = canonical(i);
        return c < prefix.size() ? prefix[c] : loop[c - prefix.size()];
    }
    /// Successor of a canonical position, folding the loop.
    size_t next(size_t i) const { return i + 1 < span() ? i + 1 : prefix.size(); }

    /// Same omega-word with one unrolling of the loop moved into the prefix.
    LassoWord unrolled() const;

    /// Drops `name` from every letter.
    LassoWord without(const std::string& name) const;

    bool operator==(const LassoWord& o) const = default;
};

/// Change points of a lasso (positions where the truth of the coloring
/// proposition flips, plus position 0), split into the aperiodic part and
/// one period of the eventually periodic part.
struct ChangePointSummary {
    /// Change points in [0, |u|].
    std::vector<size_t> head;
    /// Change points in (|u|, |u| + |v|]; every one repeats with `period`.
    std::vector<size_t> periodic;
    size_t period = 0;
    size_t prefix_len = 0;

    bool infinitely_many() const { return !periodic.empty(); }
    /// Membership test for an arbitrary position.
    bool contains(size_t i) const;
};

ChangePointSummary change_points(const LassoWord& w);

/// Every p-block has length at most k (implies infinitely many change points).
bool is_k_bounded(const LassoWord& w, size_t k);
/// Infinitely many change points and every p-block has length at least k.
bool is_k_spaced(const LassoWord& w, size_t k);

/// The finite set of p-block lengths of w; empty iff there are only finitely
/// many change points (then the last block is infinite).
std::vector<size_t> block_lengths(const LassoWord& w);

/// The p-coloring of w whose p-blocks all have exactly block_len positions,
/// starting with a !p block. The loop is padded to a multiple of 2*block_len
/// so the result is again a lasso.
LassoWord color(const LassoWord& w, size_t block_len);

/// Textual form: letters separated by spaces, prefix and loop separated by
/// '|'; a letter is '-' or comma-joined proposition names. Example: "- a | a,b".
std::string format_lasso(const LassoWord& w);
LassoWord parse_lasso(const std::string& text);

} // namespace pdg
