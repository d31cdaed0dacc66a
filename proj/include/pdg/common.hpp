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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pdg {

/// Error with a character position, raised by the formula/file parsers.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& msg, size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
          raw(msg),
          position(pos) {}
    std::string raw;
    size_t position;
};

/// A pipeline stage exceeded its state budget. Never silently truncate:
/// the caller gets the stage name and the cap that was hit.
class capacity_error : public std::runtime_error {
public:
    capacity_error(const std::string& stage_, size_t cap)
        : std::runtime_error("state budget exceeded in stage '" + stage_ + "' (cap " +
                             std::to_string(cap) + ")"),
          stage(stage_) {}
    std::string stage;
};

/// Internal invariant violation; indicates a bug, not bad input.
class internal_error : public std::runtime_error {
public:
    explicit internal_error(const std::string& msg) : std::runtime_error("internal error: " + msg) {}
};

/// State cap applied by each construction stage (automata, tracking,
/// behavior DFAs, games, strategy tables). One knob, checked per stage.
struct Budget {
    size_t max_states = 500000;

    void check(const std::string& stage, size_t count) const {
        if (count > max_states) throw capacity_error(stage, max_states);
    }
};

} // namespace pdg
