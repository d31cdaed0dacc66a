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

#include "pdg/lasso.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "pdg/common.hpp"

namespace pdg {

LassoWord::LassoWord(std::vector<PropSet> u, std::vector<PropSet> v)
    : prefix(std::move(u)), loop(std::move(v)) {
    if (loop.empty()) throw internal_error("lasso loop must be nonempty");
}

LassoWord LassoWord::unrolled() const {
    std::vector<PropSet> u = prefix;
    u.insert(u.end(), loop.begin(), loop.end());
    return LassoWord(std::move(u), loop);
}

LassoWord LassoWord::without(const std::string& name) const {
    auto strip = [&](std::vector<PropSet> xs) {
        for (auto& l : xs) l.erase(name);
        return xs;
    };
    return LassoWord(strip(prefix), strip(loop));
}

namespace {

bool has_p(const PropSet& l) { return l.count(kColorProp) > 0; }

// Change flag at position i (i = 0, or p flips between i-1 and i).
bool change_at(const LassoWord& w, size_t i) {
    if (i == 0) return true;
    return has_p(w.at(i - 1)) != has_p(w.at(i));
}

} // namespace

ChangePointSummary change_points(const LassoWord& w) {
    ChangePointSummary s;
    s.period = w.loop_len();
    s.prefix_len = w.prefix_len();
    size_t u = w.prefix_len();
    for (size_t i = 0; i <= u; ++i)
        if (change_at(w, i)) s.head.push_back(i);
    for (size_t i = u + 1; i <= u + w.loop_len(); ++i)
        if (change_at(w, i)) s.periodic.push_back(i);
    return s;
}

bool ChangePointSummary::contains(size_t i) const {
    if (i <= prefix_len) return std::binary_search(head.begin(), head.end(), i);
    // Fold into the window (|u|, |u| + period].
    size_t folded = prefix_len + 1 + (i - prefix_len - 1) % period;
    return std::binary_search(periodic.begin(), periodic.end(), folded);
}

std::vector<size_t> block_lengths(const LassoWord& w) {
    std::vector<size_t> lens;
    ChangePointSummary s = change_points(w);
    if (!s.infinitely_many()) return lens;
    // All consecutive gaps occur with the left endpoint <= |u| + |v|; scanning
    // flags up to |u| + 3|v| covers every such pair.
    size_t u = w.prefix_len(), v = w.loop_len();
    std::vector<size_t> pts;
    for (size_t i = 0; i <= u + 3 * v; ++i)
        if (change_at(w, i)) pts.push_back(i);
    for (size_t j = 0; j + 1 < pts.size(); ++j) {
        if (pts[j] > u + v) break;
        lens.push_back(pts[j + 1] - pts[j]);
    }
    std::sort(lens.begin(), lens.end());
    lens.erase(std::unique(lens.begin(), lens.end()), lens.end());
    return lens;
}

bool is_k_bounded(const LassoWord& w, size_t k) {
    auto lens = block_lengths(w);
    if (lens.empty()) return false; // finitely many change points
    return lens.back() <= k;
}

bool is_k_spaced(const LassoWord& w, size_t k) {
    auto lens = block_lengths(w);
    if (lens.empty()) return false;
    return lens.front() >= k;
}

LassoWord color(const LassoWord& w, size_t block_len) {
    if (block_len == 0) throw internal_error("coloring block length must be positive");
    size_t u = w.prefix_len(), v = w.loop_len();
    size_t pat = 2 * block_len;
    size_t L = std::lcm(v, pat);
    auto colored = [&](size_t i) {
        PropSet l = w.at(i);
        if ((i / block_len) % 2 == 1) l.insert(kColorProp);
        return l;
    };
    std::vector<PropSet> cu, cv;
    for (size_t i = 0; i < u; ++i) cu.push_back(colored(i));
    for (size_t i = u; i < u + L; ++i) cv.push_back(colored(i));
    return LassoWord(std::move(cu), std::move(cv));
}

std::string format_lasso(const LassoWord& w) {
    auto fmt_letter = [](const PropSet& l) {
        if (l.empty()) return std::string("-");
        std::string out;
        for (const auto& p : l) {
            if (!out.empty()) out += ',';
            out += p;
        }
        return out;
    };
    std::string out;
    for (const auto& l : w.prefix) out += fmt_letter(l) + " ";
    out += "|";
    for (const auto& l : w.loop) out += " " + fmt_letter(l);
    return out;
}

LassoWord parse_lasso(const std::string& text) {
    std::vector<PropSet> u, v;
    bool in_loop = false;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (tok == "|") {
            if (in_loop) throw parse_error("duplicate '|' in lasso", 0);
            in_loop = true;
            continue;
        }
        PropSet l;
        if (tok != "-") {
            size_t start = 0;
            while (start <= tok.size()) {
                size_t comma = tok.find(',', start);
                std::string name = tok.substr(start, comma == std::string::npos ? comma : comma - start);
                if (name.empty()) throw parse_error("empty proposition name in lasso letter", 0);
                l.insert(name);
                if (comma == std::string::npos) break;
                start = comma + 1;
            }
        }
        (in_loop ? v : u).push_back(std::move(l));
    }
    if (!in_loop) throw parse_error("lasso text needs a '|' before the loop", 0);
    if (v.empty()) throw parse_error("lasso loop must be nonempty", 0);
    return LassoWord(std::move(u), std::move(v));
}

} // namespace pdg
