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

#include "pdg/strategy.hpp"

namespace pdg {

/// Interactive delay-game session. The machine plays the side its verdict
/// holds a strategy for; the human types letter blocks on `in`, the running
/// trace is echoed on `out`. Human input lines are appended to `transcript`
/// when given, so a recorded session replays by piping the file back in.
/// Returns 0 on a clean quit, 2 on malformed session setup.
int play_machine_o(const Verdict& v, std::istream& in, std::ostream& out,
                   std::ostream* transcript);
int play_machine_i(const Verdict& v, std::istream& in, std::ostream& out,
                   std::ostream* transcript);

/// Letter syntax shared with lasso traces: '-' or comma-joined names.
Letter parse_letter_text(const std::string& text, const Alphabet& sigma);
std::string format_letter(Letter l, const Alphabet& sigma);

} // namespace pdg
