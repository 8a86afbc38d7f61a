#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <string>
#include <tuple>
#include <vector>

#include "mixed.hpp"

namespace fairdiv {

enum class EdgeKind { Envy, Equality };

// Plain: Envy edge i->k iff v_i(A_k) > v_i(A_i).
// TopTrading: Plain edges additionally restricted to k whose bundle attains
//   max_j v_i(A_j).
// Generalized: Envy edges as Plain, plus Equality edges where v_i(A_k) =
//   v_i(A_i), i != k.
// TopTradingGeneralized: edge i->k (i != k) iff A_k attains max_j v_i(A_j);
//   the edge is Envy when that max beats i's own bundle, Equality otherwise.
enum class GraphVariant { Plain, TopTrading, Generalized, TopTradingGeneralized };

struct EnvyGraph {
    GraphVariant variant = GraphVariant::Plain;
    int n = 0;                               // agent count of the instance
    std::vector<int> vertices;               // sorted restriction, default all
    std::vector<std::vector<std::optional<EdgeKind>>> edge; // n x n, i -> k

    bool has_edge(int i, int k) const { return edge[i][k].has_value(); }

    std::vector<int> out_neighbors(int i) const {
        std::vector<int> out;
        for (int k : vertices)
            if (edge[i][k]) out.push_back(k);
        return out;
    }

    bool has_outgoing_envy(int i) const {
        for (int k : vertices)
            if (edge[i][k] == EdgeKind::Envy) return true;
        return false;
    }

    bool has_incoming_envy(int i) const {
        for (int k : vertices)
            if (edge[k][i] == EdgeKind::Envy) return true;
        return false;
    }

    bool has_incoming(int i) const {
        for (int k : vertices)
            if (edge[k][i]) return true;
        return false;
    }

    int count_envy_edges() const {
        int c = 0;
        for (int i : vertices)
            for (int k : vertices)
                if (edge[i][k] == EdgeKind::Envy) ++c;
        return c;
    }

    std::vector<std::tuple<int, int, EdgeKind>> all_edges() const {
        std::vector<std::tuple<int, int, EdgeKind>> out;
        for (int i : vertices)
            for (int k : vertices)
                if (edge[i][k]) out.emplace_back(i, k, *edge[i][k]);
        return out;
    }
};

namespace detail {

inline EnvyGraph graph_from_utilities(const std::vector<std::vector<Rational>>& u,
                                      GraphVariant variant,
                                      std::vector<int> vertices) {
    int n = static_cast<int>(u.size());
    EnvyGraph g;
    g.variant = variant;
    g.n = n;
    g.vertices = std::move(vertices);
    g.edge.assign(n, std::vector<std::optional<EdgeKind>>(n));
    bool topTrading = variant == GraphVariant::TopTrading ||
                      variant == GraphVariant::TopTradingGeneralized;
    for (int i : g.vertices) {
        Rational best;
        if (topTrading) {
            bool first = true;
            for (int k : g.vertices) {
                if (first || u[i][k] > best) { best = u[i][k]; first = false; }
            }
        }
        for (int k : g.vertices) {
            if (k == i) continue;
            bool envy = u[i][k] > u[i][i];
            switch (variant) {
                case GraphVariant::Plain:
                    if (envy) g.edge[i][k] = EdgeKind::Envy;
                    break;
                case GraphVariant::TopTrading:
                    if (envy && u[i][k] == best) g.edge[i][k] = EdgeKind::Envy;
                    break;
                case GraphVariant::Generalized:
                    if (envy) g.edge[i][k] = EdgeKind::Envy;
                    else if (u[i][k] == u[i][i]) g.edge[i][k] = EdgeKind::Equality;
                    break;
                case GraphVariant::TopTradingGeneralized:
                    if (u[i][k] == best)
                        g.edge[i][k] = envy ? EdgeKind::Envy : EdgeKind::Equality;
                    break;
            }
        }
    }
    return g;
}

inline std::vector<int> checked_restriction(int n, const std::optional<std::vector<int>>& restrict) {
    if (!restrict) {
        std::vector<int> all(n);
        for (int i = 0; i < n; ++i) all[i] = i;
        return all;
    }
    std::vector<int> v = *restrict;
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    require(!v.empty(), "agent restriction must be non-empty");
    require(v.front() >= 0 && v.back() < n, "agent restriction out of range");
    return v;
}

} // namespace detail

// The restriction takes the induced subgraph on V: utilities, maxima and
// edges are all computed within V only.
inline EnvyGraph build_graph(const IndivisibleInstance& inst, const Allocation& a,
                             GraphVariant variant,
                             const std::optional<std::vector<int>>& restrict = std::nullopt) {
    a.validate(inst.agents(), inst.items());
    auto verts = detail::checked_restriction(inst.agents(), restrict);
    std::vector<std::vector<Rational>> u(inst.agents(), std::vector<Rational>(inst.agents()));
    for (int i : verts)
        for (int k : verts) u[i][k] = inst.value(i, a.bundles[k]);
    return detail::graph_from_utilities(u, variant, std::move(verts));
}

inline EnvyGraph build_graph(const MixedInstance& inst, const MixedAllocation& a,
                             GraphVariant variant,
                             const std::optional<std::vector<int>>& restrict = std::nullopt) {
    a.validate(inst.agents(), inst.items());
    auto verts = detail::checked_restriction(inst.agents(), restrict);
    std::vector<std::vector<Rational>> u(inst.agents(), std::vector<Rational>(inst.agents()));
    for (int i : verts)
        for (int k : verts) u[i][k] = mixed_value(inst, a, i, k);
    return detail::graph_from_utilities(u, variant, std::move(verts));
}

// Lowest-index vertex with no outgoing Envy edge (Equality edges do not
// disqualify a sink).
inline std::optional<int> find_sink(const EnvyGraph& g) {
    for (int i : g.vertices)
        if (!g.has_outgoing_envy(i)) return i;
    return std::nullopt;
}

// Lowest-index vertex with no incoming edge of any kind.
inline std::optional<int> find_source(const EnvyGraph& g) {
    for (int i : g.vertices)
        if (!g.has_incoming(i)) return i;
    return std::nullopt;
}

namespace detail {

inline std::vector<int> rotate_min_first(std::vector<int> cycle) {
    auto it = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), it, cycle.end());
    return cycle;
}

// any directed cycle, all edge kinds allowed: iterative DFS with roots and
// neighbors in ascending index order, first back edge into the stack wins
inline std::optional<std::vector<int>> any_cycle(const EnvyGraph& g) {
    enum { White, Gray, Black };
    std::vector<int> color(g.n, White);
    for (int root : g.vertices) {
        if (color[root] != White) continue;
        std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
        color[root] = Gray;
        while (!stack.empty()) {
            auto& [v, idx] = stack.back();
            std::vector<int> nbrs = g.out_neighbors(v);
            if (idx == nbrs.size()) {
                color[v] = Black;
                stack.pop_back();
                continue;
            }
            int w = nbrs[idx++];
            if (color[w] == Gray) {
                // walk the DFS stack back from v to w
                std::vector<int> cycle;
                for (auto r = stack.rbegin(); r != stack.rend(); ++r) {
                    cycle.push_back(r->first);
                    if (r->first == w) break;
                }
                std::reverse(cycle.begin(), cycle.end());
                return rotate_min_first(cycle);
            }
            if (color[w] == White) {
                color[w] = Gray;
                stack.emplace_back(w, 0);
            }
        }
    }
    return std::nullopt;
}

// simple path from `from` to `to` along directed edges, DFS tree extraction
inline std::optional<std::vector<int>> simple_path(const EnvyGraph& g, int from, int to) {
    std::vector<char> seen(g.n, 0);
    std::vector<int> parent(g.n, -1);
    std::vector<int> stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (v == to) {
            std::vector<int> path;
            for (int t = to; t != -1; t = parent[t]) path.push_back(t);
            std::reverse(path.begin(), path.end());
            return path;
        }
        auto nbrs = g.out_neighbors(v);
        // push in reverse so the lowest-index neighbor is explored first
        for (auto it = nbrs.rbegin(); it != nbrs.rend(); ++it) {
            if (!seen[*it]) {
                seen[*it] = 1;
                parent[*it] = v;
                stack.push_back(*it);
            }
        }
    }
    return std::nullopt;
}

} // namespace detail

// Returns a directed cycle as an agent sequence (consecutive edges exist,
// last wraps to first), rotated so the smallest agent leads; nullopt iff no
// qualifying cycle exists. With requireEnvyEdge the cycle must contain at
// least one Envy edge; that case enumerates Envy edges (u,v) in sorted order
// and searches a return path v -> u, because a plain DFS could close an
// all-Equality cycle and miss the qualifying one.
inline std::optional<std::vector<int>> find_cycle(const EnvyGraph& g,
                                                  bool requireEnvyEdge = false) {
    if (!requireEnvyEdge) return detail::any_cycle(g);
    for (int u : g.vertices) {
        for (int v : g.vertices) {
            if (g.edge[u][v] != EdgeKind::Envy) continue;
            auto path = detail::simple_path(g, v, u);
            if (!path) continue;
            std::vector<int> cycle{u};
            cycle.insert(cycle.end(), path->begin(), path->end() - 1);
            return detail::rotate_min_first(cycle);
        }
    }
    return std::nullopt;
}

// Every cycle agent takes the bundle of its successor (the bundle it points
// to); the last agent takes the first agent's former bundle.
inline void resolve_cycle(Allocation& a, const std::vector<int>& cycle) {
    require(cycle.size() >= 2, "cycle needs at least two agents");
    std::vector<int> sorted = cycle;
    std::sort(sorted.begin(), sorted.end());
    require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
            "cycle agents must be distinct");
    require(sorted.front() >= 0 && sorted.back() < a.agents(), "cycle agent out of range");
    std::vector<int> first = a.bundles[cycle.front()];
    for (std::size_t t = 0; t + 1 < cycle.size(); ++t)
        a.bundles[cycle[t]] = a.bundles[cycle[t + 1]];
    a.bundles[cycle.back()] = std::move(first);
}

inline void resolve_cycle(MixedAllocation& a, const std::vector<int>& cycle) {
    resolve_cycle(a.items, cycle);
    require(cycle.size() >= 2, "cycle needs at least two agents");
    CakePiece first = a.cake[cycle.front()];
    for (std::size_t t = 0; t + 1 < cycle.size(); ++t)
        a.cake[cycle[t]] = a.cake[cycle[t + 1]];
    a.cake[cycle.back()] = std::move(first);
}

// Largest set S such that adding value to members' bundles cannot create a
// path-connected complaint: no agent of S envies anyone, and nobody with a
// directed path into an envious agent sits in S. Computed as the complement
// of backward reachability from the envious vertices; this complement is
// itself addable and contains every addable set, hence maximal.
inline std::vector<int> maximal_sink_addable_set(const EnvyGraph& g) {
    std::vector<char> marked(g.n, 0);
    std::queue<int> q;
    for (int i : g.vertices)
        if (g.has_outgoing_envy(i)) {
            marked[i] = 1;
            q.push(i);
        }
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int k : g.vertices)
            if (g.edge[k][v] && !marked[k]) {
                marked[k] = 1;
                q.push(k);
            }
    }
    std::vector<int> out;
    for (int i : g.vertices)
        if (!marked[i]) out.push_back(i);
    return out;
}

// Dual of the sink set: nobody in S is envied, and nothing reachable from an
// envied vertex sits in S (forward reachability from envied vertices).
inline std::vector<int> maximal_source_addable_set(const EnvyGraph& g) {
    std::vector<char> marked(g.n, 0);
    std::queue<int> q;
    for (int i : g.vertices)
        if (g.has_incoming_envy(i)) {
            marked[i] = 1;
            q.push(i);
        }
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int k : g.vertices)
            if (g.edge[v][k] && !marked[k]) {
                marked[k] = 1;
                q.push(k);
            }
    }
    std::vector<int> out;
    for (int i : g.vertices)
        if (!marked[i]) out.push_back(i);
    return out;
}

// Strongly connected components in a topological order of the condensation.
// Deterministic: among components whose predecessors are all emitted, the one
// containing the smallest agent goes first; members are sorted.
inline std::vector<std::vector<int>> component_toposort(const EnvyGraph& g) {
    // Tarjan over the restricted vertex set
    std::vector<int> index(g.n, -1), low(g.n, 0), compOf(g.n, -1);
    std::vector<char> onStack(g.n, 0);
    std::vector<int> stack;
    std::vector<std::vector<int>> comps;
    int counter = 0;

    struct Frame { int v; std::size_t idx; };
    for (int root : g.vertices) {
        if (index[root] != -1) continue;
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        onStack[root] = 1;
        while (!call.empty()) {
            auto& [v, idx] = call.back();
            auto nbrs = g.out_neighbors(v);
            if (idx < nbrs.size()) {
                int w = nbrs[idx++];
                if (index[w] == -1) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    onStack[w] = 1;
                    call.push_back({w, 0});
                } else if (onStack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
            } else {
                if (low[v] == index[v]) {
                    std::vector<int> comp;
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        onStack[w] = 0;
                        compOf[w] = static_cast<int>(comps.size());
                        comp.push_back(w);
                        if (w == v) break;
                    }
                    std::sort(comp.begin(), comp.end());
                    comps.push_back(std::move(comp));
                }
                int finished = v;
                call.pop_back();
                if (!call.empty())
                    low[call.back().v] = std::min(low[call.back().v], low[finished]);
            }
        }
    }

    // Kahn on the condensation, smallest-member component first
    int c = static_cast<int>(comps.size());
    std::vector<int> indeg(c, 0);
    std::vector<std::vector<char>> condensed(c, std::vector<char>(c, 0));
    for (int i : g.vertices)
        for (int k : g.vertices)
            if (g.edge[i][k] && compOf[i] != compOf[k] && !condensed[compOf[i]][compOf[k]]) {
                condensed[compOf[i]][compOf[k]] = 1;
                ++indeg[compOf[k]];
            }
    auto cmp = [&](int a, int b) { return comps[a][0] > comps[b][0]; };
    std::priority_queue<int, std::vector<int>, decltype(cmp)> ready(cmp);
    for (int t = 0; t < c; ++t)
        if (indeg[t] == 0) ready.push(t);
    std::vector<std::vector<int>> order;
    while (!ready.empty()) {
        int t = ready.top();
        ready.pop();
        order.push_back(comps[t]);
        for (int s = 0; s < c; ++s)
            if (condensed[t][s] && --indeg[s] == 0) ready.push(s);
    }
    internal_check(order.size() == comps.size(), "condensation had a cycle");
    return order;
}

// Byte-stable DOT: vertices ascending, edges sorted by (from, to), Envy
// edges solid, Equality dashed, agents named a1..an.
inline std::string to_dot(const EnvyGraph& g) {
    std::string out = "digraph envy {\n";
    for (int i : g.vertices) out += "  a" + std::to_string(i + 1) + ";\n";
    for (int i : g.vertices)
        for (int k : g.vertices)
            if (g.edge[i][k]) {
                out += "  a" + std::to_string(i + 1) + " -> a" + std::to_string(k + 1);
                out += (*g.edge[i][k] == EdgeKind::Envy) ? " [style=solid];\n"
                                                         : " [style=dashed];\n";
            }
    out += "}\n";
    return out;
}

} // namespace fairdiv
