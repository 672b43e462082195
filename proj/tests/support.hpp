#pragma once

// Independent reference implementations used only by the tests.

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <random>
#include <vector>

#include "toric/decoding_tree.hpp"
#include "toric/lattice.hpp"

namespace testing {

using namespace toric;

inline void for_each_combination(int n, int w, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> idx(w);
    std::function<void(int, int)> rec = [&](int pos, int lo) {
        if (pos == w) {
            fn(idx);
            return;
        }
        for (int q = lo; q < n; ++q) {
            idx[pos] = q;
            rec(pos + 1, q + 1);
        }
    };
    rec(0, 0);
}

// Every error of weight <= w_max with syndrome s, by plain enumeration.
inline std::vector<std::vector<int>> brute_force_solutions(const ToricLattice& lat, const SyndromeVector& s,
                                                           int w_max) {
    std::vector<std::vector<int>> out;
    for (int w = 0; w <= w_max; ++w)
        for_each_combination(lat.n_qubits(), w, [&](const std::vector<int>& qs) {
            if (syndrome_of(lat, lat.make_error(qs)) == s) out.push_back(qs);
        });
    return out;
}

// Uniformly chosen child labelings, top-down, consistent with s.
inline TreeConfiguration random_configuration(const DecodingTree& t, const SyndromeVector& s, std::mt19937_64& rng) {
    TreeConfiguration cfg(t.n_edges());
    cfg.set(0, rng() & 1);
    for (int v = 0; v < t.n_vertices(); ++v) {
        const auto& vx = t.vertices()[v];
        const bool want = s[vx.check] ^ cfg[vx.parent_edge];
        int mask;
        do {
            mask = static_cast<int>(rng() & 7);
        } while ((__builtin_popcount(mask) & 1) != static_cast<int>(want));
        for (int i = 0; i < 3; ++i) cfg.set(vx.children[i], (mask >> i) & 1);
    }
    return cfg;
}

// Enters through a random dangling edge, then steps to uniformly random
// incident edges until it leaves through a dangling edge.
inline std::vector<int> random_walk(const DecodingTree& t, std::mt19937_64& rng) {
    std::vector<int> dangling;
    for (int e = 0; e < t.n_edges(); ++e)
        if (t.edges()[e].dangling()) dangling.push_back(e);
    std::vector<int> walk{dangling[rng() % dangling.size()]};
    int at = t.edges()[walk[0]].ends[0];
    for (;;) {
        const auto inc = t.incident_edges(at);
        const int e = inc[rng() % 4];
        walk.push_back(e);
        at = t.other_end(e, at);
        if (at == DecodingTree::kNone) return walk;
    }
}

// Minimum configuration weight with a fixed root label, as a minimum T-join:
// drop the root edge, merge every free dangling end into one ground node,
// and match the odd vertices pairwise along shortest paths.
inline int matching_oracle(const DecodingTree& t, const SyndromeVector& s, bool root_label) {
    const int n = t.n_vertices();
    const int ground = n;
    std::vector<std::vector<int>> adj(n + 1);
    for (int e = 1; e < t.n_edges(); ++e) {
        const auto& ed = t.edges()[e];
        const int a = ed.ends[0];
        const int b = ed.dangling() ? ground : ed.ends[1];
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<int> odd;
    for (int v = 0; v < n; ++v) {
        bool parity = s[t.vertices()[v].check];
        if (v < 2 && root_label) parity = !parity;
        if (parity) odd.push_back(v);
    }
    if (odd.size() % 2) odd.push_back(ground);
    const int k = static_cast<int>(odd.size());
    std::vector<std::vector<int>> dist(k, std::vector<int>(k, 0));
    for (int i = 0; i < k; ++i) {
        std::vector<int> d(n + 1, -1);
        std::queue<int> q;
        d[odd[i]] = 0;
        q.push(odd[i]);
        while (!q.empty()) {
            const int x = q.front();
            q.pop();
            for (int y : adj[x])
                if (d[y] < 0) {
                    d[y] = d[x] + 1;
                    q.push(y);
                }
        }
        for (int j = 0; j < k; ++j) dist[i][j] = d[odd[j]];
    }
    constexpr int kInf = std::numeric_limits<int>::max() / 2;
    std::vector<int> best(1u << k, kInf);
    best[0] = 0;
    for (unsigned m = 0; m < best.size(); ++m) {
        if (best[m] == kInf) continue;
        int i = 0;
        while (i < k && (m >> i & 1)) ++i;
        if (i == k) continue;
        for (int j = i + 1; j < k; ++j)
            if (!(m >> j & 1)) {
                const unsigned next = m | (1u << i) | (1u << j);
                best[next] = std::min(best[next], best[m] + dist[i][j]);
            }
    }
    return best.back() + (root_label ? 1 : 0);
}

}  // namespace testing
