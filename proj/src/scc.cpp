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

#include "pdg/scc.hpp"

#include <algorithm>

namespace pdg {

SccResult tarjan_scc(const std::vector<std::vector<int>>& adj) {
    size_t n = adj.size();
    SccResult res;
    res.comp.assign(n, -1);
    std::vector<int> idx(n, -1), low(n, 0);
    std::vector<char> on(n, 0);
    std::vector<int> stk;
    int counter = 0;
    std::vector<std::pair<int, size_t>> call;
    for (size_t root = 0; root < n; ++root) {
        if (idx[root] >= 0) continue;
        call.push_back({static_cast<int>(root), 0});
        while (!call.empty()) {
            auto& [v, ci] = call.back();
            if (ci == 0) {
                idx[v] = low[v] = counter++;
                stk.push_back(v);
                on[v] = 1;
            }
            if (ci < adj[v].size()) {
                int t = adj[v][ci++];
                if (idx[t] < 0)
                    call.push_back({t, 0});
                else if (on[t])
                    low[v] = std::min(low[v], idx[t]);
            } else {
                if (low[v] == idx[v]) {
                    while (true) {
                        int x = stk.back();
                        stk.pop_back();
                        on[x] = 0;
                        res.comp[x] = res.count;
                        if (x == v) break;
                    }
                    ++res.count;
                }
                int done = v;
                call.pop_back();
                if (!call.empty())
                    low[call.back().first] = std::min(low[call.back().first], low[done]);
            }
        }
    }
    return res;
}

std::vector<char> cycle_vertices(const std::vector<std::vector<int>>& adj,
                                 const SccResult& scc) {
    size_t n = adj.size();
    std::vector<int> comp_size(scc.count, 0);
    for (size_t v = 0; v < n; ++v) comp_size[scc.comp[v]]++;
    std::vector<char> out(n, 0);
    for (size_t v = 0; v < n; ++v) {
        if (comp_size[scc.comp[v]] > 1) {
            out[v] = 1;
            continue;
        }
        for (int t : adj[v])
            if (t == static_cast<int>(v)) out[v] = 1;
    }
    return out;
}

} // namespace pdg
