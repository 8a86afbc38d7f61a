#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "instance.hpp"

namespace fairdiv {

namespace detail {

// Successive shortest augmenting paths over any totally ordered additive cost
// type (the optimality argument is exchange-based and never divides), with
// Bellman-Ford relaxation so negative costs are handled exactly. Returns the
// matched item slot per agent slot, or nullopt when items are too few.
template <class Cost>
std::optional<std::vector<int>> min_cost_assignment(
    const std::vector<std::vector<Cost>>& cost) {
    int p = static_cast<int>(cost.size());
    if (p == 0) return std::vector<int>{};
    int q = static_cast<int>(cost[0].size());
    if (q < p) return std::nullopt;

    std::vector<int> matchOfAgent(p, -1), matchOfItem(q, -1);
    for (int start = 0; start < p; ++start) {
        // shortest alternating path from `start` to any free item;
        // nodes: agents 0..p-1, then items p..p+q-1
        int nodes = p + q;
        std::vector<std::optional<Cost>> dist(nodes);
        std::vector<int> pred(nodes, -1);
        dist[start] = Cost{};
        bool changed = true;
        for (int round = 0; round < nodes && changed; ++round) {
            changed = false;
            for (int a = 0; a < p; ++a) {
                if (!dist[a]) continue;
                for (int c = 0; c < q; ++c) {
                    if (matchOfAgent[a] == c) continue;
                    Cost nd = *dist[a] + cost[a][c];
                    if (!dist[p + c] || nd < *dist[p + c]) {
                        dist[p + c] = std::move(nd);
                        pred[p + c] = a;
                        changed = true;
                    }
                }
            }
            for (int c = 0; c < q; ++c) {
                if (!dist[p + c] || matchOfItem[c] == -1) continue;
                int a = matchOfItem[c];
                Cost nd = *dist[p + c] - cost[a][c];
                if (!dist[a] || nd < *dist[a]) {
                    dist[a] = std::move(nd);
                    pred[a] = p + c;
                    changed = true;
                }
            }
        }
        int best = -1;
        for (int c = 0; c < q; ++c) {
            if (matchOfItem[c] != -1 || !dist[p + c]) continue;
            if (best == -1 || *dist[p + c] < *dist[p + best]) best = c;
        }
        internal_check(best != -1, "complete bipartite graph must admit an augmenting path");
        // flip matched edges along the path back to `start`; the only way the
        // path enters a matched agent is through its matched item, so that
        // item is recovered from the match array itself
        int node = p + best;
        while (true) {
            int a = pred[node];
            int c = node - p;
            int prevItem = matchOfAgent[a];
            matchOfAgent[a] = c;
            matchOfItem[c] = a;
            if (a == start) break;
            node = p + prevItem;
        }
    }
    return matchOfAgent;
}

// (primary, tiebreak) compared lexicographically; an ordered abelian group,
// so the assignment solver can run on it unchanged
struct LexCost {
    Rational primary;
    Rational tiebreak;
    LexCost operator+(const LexCost& o) const { return {primary + o.primary, tiebreak + o.tiebreak}; }
    LexCost operator-(const LexCost& o) const { return {primary - o.primary, tiebreak - o.tiebreak}; }
    bool operator<(const LexCost& o) const {
        if (primary != o.primary) return primary < o.primary;
        return tiebreak < o.tiebreak;
    }
};

} // namespace detail

// Perfect matching of `agents` into distinct members of `items`, maximizing
// the summed weight. Among all optima the result is the one whose item
// vector, read in the given agent order, is lexicographically smallest: the
// tie-break cost encodes item positions as digits of a base-(q+1) number
// whose significance follows the agent order. Result pairs are (agent, item)
// in the given agent order.
inline std::vector<std::pair<int, int>> max_weight_perfect_matching(
    const std::vector<int>& agents, std::vector<int> items,
    const std::function<Rational(int, int)>& weight) {
    require(agents.size() <= items.size(), "matching needs at least as many items as agents");
    std::sort(items.begin(), items.end());
    require(std::adjacent_find(items.begin(), items.end()) == items.end(),
            "matching items must be distinct");
    int p = static_cast<int>(agents.size());
    int q = static_cast<int>(items.size());

    std::vector<Rational> digit(p); // significance of each agent's item position
    Rational scale = 1;
    for (int a = p - 1; a >= 0; --a) {
        digit[a] = scale;
        scale *= (q + 1);
    }
    std::vector<std::vector<detail::LexCost>> cost(p, std::vector<detail::LexCost>(q));
    for (int a = 0; a < p; ++a)
        for (int c = 0; c < q; ++c)
            cost[a][c] = {-weight(agents[a], items[c]), digit[a] * c};

    auto matched = detail::min_cost_assignment(cost);
    internal_check(matched.has_value(), "perfect matching must exist");
    std::vector<std::pair<int, int>> out;
    out.reserve(p);
    for (int a = 0; a < p; ++a) out.emplace_back(agents[a], items[(*matched)[a]]);
    return out;
}

// weights are the viewer's values for single items
inline std::vector<std::pair<int, int>> max_weight_perfect_matching(
    const IndivisibleInstance& inst, const std::vector<int>& agents,
    const std::vector<int>& items) {
    for (int c : items) require(c >= 0 && c < inst.items(), "item index out of range");
    for (int a : agents) require(a >= 0 && a < inst.agents(), "agent index out of range");
    return max_weight_perfect_matching(
        agents, items, [&](int a, int c) { return inst.valuation(a).item_value(c); });
}

} // namespace fairdiv
