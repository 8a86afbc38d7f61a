#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "matching.hpp"
#include "trace.hpp"

namespace fairdiv {

struct AlgoResult {
    Allocation allocation;
    RunTrace trace;
};

// Lets callers override which cycle gets resolved (the Example-1 regression
// forces a specific one). Returning nullopt means "no cycle"; the default
// hook is find_cycle on the graph at hand.
using CycleChoiceHook = std::function<std::optional<std::vector<int>>(const EnvyGraph&)>;

namespace detail {

inline std::vector<int> checked_item_order(int m, const std::optional<std::vector<int>>& order) {
    if (!order) {
        std::vector<int> id(m);
        for (int j = 0; j < m; ++j) id[j] = j;
        return id;
    }
    require(static_cast<int>(order->size()) == m, "item order must list every item once");
    std::vector<char> seen(m, 0);
    for (int j : *order) {
        require(j >= 0 && j < m, "item order entry out of range");
        require(!seen[j], "item order repeats an item");
        seen[j] = 1;
    }
    return *order;
}

inline std::vector<int> checked_agent_order(int n, const std::optional<std::vector<int>>& order) {
    if (!order) {
        std::vector<int> id(n);
        for (int i = 0; i < n; ++i) id[i] = i;
        return id;
    }
    require(static_cast<int>(order->size()) == n, "agent order must list every agent once");
    std::vector<char> seen(n, 0);
    for (int i : *order) {
        require(i >= 0 && i < n, "agent order entry out of range");
        require(!seen[i], "agent order repeats an agent");
        seen[i] = 1;
    }
    return *order;
}

// a hook's answer is still validated against the actual graph
inline std::vector<int> checked_cycle(const EnvyGraph& g, const std::vector<int>& cycle) {
    require(cycle.size() >= 2, "cycle hook returned fewer than two agents");
    for (std::size_t t = 0; t < cycle.size(); ++t) {
        int from = cycle[t];
        int to = cycle[(t + 1) % cycle.size()];
        require(from >= 0 && from < g.n && g.has_edge(from, to),
                "cycle hook returned a non-cycle");
    }
    return cycle;
}

inline std::optional<std::vector<int>> pick_cycle(const EnvyGraph& g, const CycleChoiceHook& hook,
                                                  bool requireEnvyEdge = false) {
    if (!hook) return find_cycle(g, requireEnvyEdge);
    auto choice = hook(g);
    if (!choice) return std::nullopt;
    return checked_cycle(g, *choice);
}

} // namespace detail

// Naive envy-cycle elimination. Cycles are dealt with lazily: only when no
// sink exists is one cycle (hook's choice) resolved, repeating until a sink
// appears. Resolving eagerly after each assignment would also terminate, but
// it would clear cycles the lazy order leaves standing; the returned
// allocation may still have envy cycles. No EF1 guarantee here by design.
inline AlgoResult naive_envy_cycle_elimination(
    const IndivisibleInstance& inst,
    const std::optional<std::vector<int>>& itemOrder = std::nullopt,
    const CycleChoiceHook& hook = nullptr) {
    require(inst.monotone_non_increasing(),
            "naive envy-cycle elimination needs monotone non-increasing valuations");
    auto order = detail::checked_item_order(inst.items(), itemOrder);
    AlgoResult res;
    res.allocation = Allocation(inst.agents());
    for (int item : order) {
        EnvyGraph g = build_graph(inst, res.allocation, GraphVariant::Plain);
        std::optional<int> sink = find_sink(g);
        int guard = 0;
        while (!sink) {
            auto cycle = detail::pick_cycle(g, hook);
            internal_check(cycle.has_value(), "sinkless envy graph must contain a cycle");
            resolve_cycle(res.allocation, *cycle);
            res.trace.resolved(GraphVariant::Plain, *cycle);
            g = build_graph(inst, res.allocation, GraphVariant::Plain);
            sink = find_sink(g);
            internal_check(++guard <= inst.agents() * inst.agents() + 8,
                           "cycle resolution failed to make progress");
        }
        res.allocation.add(*sink, item);
        res.trace.assigned(item, *sink);
    }
    return res;
}

// Top-trading envy-cycle elimination. At most one cycle per item: a
// sinkless envy graph always contains a top-trading cycle, and resolving it
// restores a sink. Keeps every partial allocation EF1 for monotone
// non-increasing valuations.
inline AlgoResult top_trading_envy_cycle_elimination(
    const IndivisibleInstance& inst,
    const std::optional<std::vector<int>>& itemOrder = std::nullopt) {
    require(inst.monotone_non_increasing(),
            "top-trading envy-cycle elimination needs monotone non-increasing valuations");
    auto order = detail::checked_item_order(inst.items(), itemOrder);
    AlgoResult res;
    res.allocation = Allocation(inst.agents());
    for (int item : order) {
        EnvyGraph g = build_graph(inst, res.allocation, GraphVariant::Plain);
        if (!find_sink(g)) {
            EnvyGraph tt = build_graph(inst, res.allocation, GraphVariant::TopTrading);
            auto cycle = find_cycle(tt);
            internal_check(cycle.has_value(), "sinkless graph must have a top-trading cycle");
            resolve_cycle(res.allocation, *cycle);
            res.trace.resolved(GraphVariant::TopTrading, *cycle);
            g = build_graph(inst, res.allocation, GraphVariant::Plain);
        }
        auto sink = find_sink(g);
        internal_check(sink.has_value(), "no sink after top-trading cycle resolution");
        res.allocation.add(*sink, item);
        res.trace.assigned(item, *sink);
    }
    return res;
}

// EF1 for doubly monotone instances. Goods go one by one to a source of
// the envy graph restricted to the agents that consider the item a good,
// followed by eager resolution of every plain envy cycle (any choice is
// safe while only goods have been handed out). The remaining items are
// chores for everyone and run through the top-trading loop.
inline AlgoResult doubly_monotone_ef1(
    const IndivisibleInstance& inst,
    const std::optional<std::vector<int>>& itemOrder = std::nullopt,
    const CycleChoiceHook& hook = nullptr) {
    require(inst.doubly_monotone(), "algorithm needs a doubly monotone instance");
    auto order = detail::checked_item_order(inst.items(), itemOrder);

    // ∪_i G_i and ∩_i C_i must cover all items: anything outside the union
    // is a chore for every agent
    std::vector<char> goodForSomeone(inst.items(), 0);
    for (int i = 0; i < inst.agents(); ++i)
        for (int j : inst.goods_of(i)) goodForSomeone[j] = 1;

    AlgoResult res;
    res.allocation = Allocation(inst.agents());

    // goods phase
    for (int item : order) {
        if (!goodForSomeone[item]) continue;
        std::vector<int> interested;
        for (int i = 0; i < inst.agents(); ++i) {
            const auto& cls = inst.classification(i);
            if ((*cls)[item] == ItemClass::Good) interested.push_back(i);
        }
        EnvyGraph restricted = build_graph(inst, res.allocation, GraphVariant::Plain, interested);
        auto source = find_source(restricted);
        internal_check(source.has_value(), "acyclic restricted envy graph must have a source");
        res.allocation.add(*source, item);
        res.trace.assigned(item, *source);
        int guard = 0;
        while (true) {
            EnvyGraph g = build_graph(inst, res.allocation, GraphVariant::Plain);
            auto cycle = detail::pick_cycle(g, hook);
            if (!cycle) break;
            resolve_cycle(res.allocation, *cycle);
            res.trace.resolved(GraphVariant::Plain, *cycle);
            internal_check(++guard <= inst.agents() * inst.agents() + 8,
                           "goods-phase cycle resolution failed to make progress");
        }
    }

    // chores phase: the top-trading loop over items nobody wants
    for (int item : order) {
        if (goodForSomeone[item]) continue;
        EnvyGraph g = build_graph(inst, res.allocation, GraphVariant::Plain);
        if (!find_sink(g)) {
            EnvyGraph tt = build_graph(inst, res.allocation, GraphVariant::TopTrading);
            auto cycle = find_cycle(tt);
            internal_check(cycle.has_value(), "sinkless graph must have a top-trading cycle");
            resolve_cycle(res.allocation, *cycle);
            res.trace.resolved(GraphVariant::TopTrading, *cycle);
            g = build_graph(inst, res.allocation, GraphVariant::Plain);
        }
        auto sink = find_sink(g);
        internal_check(sink.has_value(), "no sink after top-trading cycle resolution");
        res.allocation.add(*sink, item);
        res.trace.assigned(item, *sink);
    }
    return res;
}

// Picking sequence: agents take turns in `agentOrder`, each grabbing its
// highest-value remaining item (ties to the smallest index). Items are
// padded with zero-valued virtuals to a multiple of n, so every agent picks
// equally often; virtuals are stripped from the result.
inline Allocation round_robin(const IndivisibleInstance& inst,
                              const std::optional<std::vector<int>>& agentOrder = std::nullopt) {
    require(inst.additive(), "round robin needs additive valuations");
    auto order = detail::checked_agent_order(inst.agents(), agentOrder);
    IndivisibleInstance padded = pad_to_multiple(inst);
    std::vector<char> taken(padded.items(), 0);
    Allocation out(inst.agents());
    for (int turn = 0; turn < padded.items(); ++turn) {
        int picker = order[turn % inst.agents()];
        int best = -1;
        for (int j = 0; j < padded.items(); ++j) {
            if (taken[j]) continue;
            if (best == -1 ||
                padded.valuation(picker).item_value(j) > padded.valuation(picker).item_value(best))
                best = j;
        }
        taken[best] = 1;
        if (best < inst.items()) out.add(picker, best);
    }
    return out;
}

// Component-wise matching. Each round takes the strongly connected
// components of the generalized envy graph in reverse topological order and
// gives every component a maximum-weight perfect matching against the
// still-unallocated items. Matching maximality is what keeps generalized
// envy cycles from ever forming, and the reverse order gives later (less
// envied) components the leftovers.
inline AlgoResult cwma(const IndivisibleInstance& inst) {
    require(inst.additive() && inst.monotone_non_increasing(),
            "component-wise matching needs additive chores");
    IndivisibleInstance padded = pad_to_multiple(inst);
    int n = inst.agents();
    AlgoResult res;
    res.allocation = Allocation(n);

    Allocation paddedAlloc(n);
    std::vector<char> taken(padded.items(), 0);
    int rounds = padded.items() / n;
    for (int round = 0; round < rounds; ++round) {
        EnvyGraph g = build_graph(padded, paddedAlloc, GraphVariant::Generalized);
        auto comps = component_toposort(g);
        std::vector<int> remaining;
        for (int j = 0; j < padded.items(); ++j)
            if (!taken[j]) remaining.push_back(j);
        for (auto it = comps.rbegin(); it != comps.rend(); ++it) {
            auto pairs = max_weight_perfect_matching(padded, *it, remaining);
            MatchingRound ev;
            for (auto [agent, item] : pairs) {
                paddedAlloc.add(agent, item);
                taken[item] = 1;
                remaining.erase(std::find(remaining.begin(), remaining.end(), item));
                ev.pairs.emplace_back(agent, item);
            }
            res.trace.events.push_back(std::move(ev));
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j : paddedAlloc.bundles[i])
            if (j < inst.items()) res.allocation.add(i, j);
    return res;
}

} // namespace fairdiv
