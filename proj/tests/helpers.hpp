#pragma once

// Shared fixtures, independent oracles, and table-valuation generators for
// the test suite. The oracles restate each definition in straight-line code
// on purpose: library results are confirmed by a second, separately written
// evaluation path rather than by calling the code under test twice.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "fairdiv/checkers.hpp"
#include "fairdiv/envy_graph.hpp"
#include "fairdiv/generate.hpp"
#include "fairdiv/instance.hpp"
#include "fairdiv/mixed.hpp"

namespace testutil {

using namespace fairdiv;

// ------------------------------------------------------------- fixtures

inline IndivisibleInstance make_additive(const std::vector<std::vector<long long>>& rows) {
    std::vector<Valuation> vals;
    vals.reserve(rows.size());
    for (const auto& row : rows) {
        std::vector<Rational> vs;
        vs.reserve(row.size());
        for (long long x : row) vs.emplace_back(x);
        vals.push_back(Valuation::additive(std::move(vs)));
    }
    return IndivisibleInstance(std::move(vals));
}

// The running three-agent, six-chore instance behind the pinned regressions.
inline IndivisibleInstance example_one() {
    return make_additive({{-1, -4, -2, -3, 0, -1},
                          {-2, -1, -2, -2, -3, -1},
                          {-1, -3, -1, -1, -3, -10}});
}

inline Allocation alloc_of(int n, const std::vector<std::vector<int>>& bundles) {
    Allocation a(n);
    for (std::size_t i = 0; i < bundles.size(); ++i)
        for (int j : bundles[i]) a.add(static_cast<int>(i), j);
    return a;
}

// Hand-checked allocations of the running instance: the straight assignment
// and the two single-swap variants reachable from it.
inline Allocation example_one_A() { return alloc_of(3, {{0, 3}, {1, 4}, {2, 5}}); }
inline Allocation example_one_X() { return alloc_of(3, {{2, 5}, {1, 4}, {0, 3}}); }
inline Allocation example_one_Y() { return alloc_of(3, {{0, 3}, {2, 5}, {1, 4}}); }

// ----------------------------------------------------------- raw utility

// Bundle value recomputed from the primitive per-item / per-mask accessors,
// bypassing the cached bundle evaluation the checkers use.
inline Rational raw_value(const Valuation& v, const std::vector<int>& bundle) {
    if (v.kind() == ValuationKind::Additive) {
        Rational s = 0;
        for (int j : bundle) s += v.item_value(j);
        return s;
    }
    std::uint32_t mask = 0;
    for (int j : bundle) mask |= std::uint32_t{1} << j;
    return v.value_mask(mask);
}

inline std::vector<std::vector<Rational>> utility_matrix(const IndivisibleInstance& inst,
                                                         const Allocation& a) {
    int n = inst.agents();
    std::vector<std::vector<Rational>> u(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) u[i][k] = raw_value(inst.valuation(i), a.bundles[k]);
    return u;
}

// Density integral recomputed segment-by-segment from the raw breakpoints.
inline Rational raw_integral(const PiecewiseConstantDensity& f, const CakePiece& piece) {
    Rational total = 0;
    const auto& bp = f.breakpoints();
    const auto& lv = f.levels();
    for (const Interval& iv : piece.intervals)
        for (std::size_t s = 0; s < lv.size(); ++s) {
            Rational lo = std::max(iv.lo, bp[s]);
            Rational hi = std::min(iv.hi, bp[s + 1]);
            if (lo < hi) total += lv[s] * (hi - lo);
        }
    return total;
}

inline Rational raw_mixed_value(const MixedInstance& inst, const MixedAllocation& a,
                                int viewer, int owner) {
    return raw_value(inst.indivisible().valuation(viewer), a.items.bundles[owner]) +
           raw_integral(inst.density(viewer), a.cake[owner]);
}

// ------------------------------------------------------ fairness oracles

inline bool oracle_ef(const IndivisibleInstance& inst, const Allocation& a) {
    auto u = utility_matrix(inst, a);
    for (int i = 0; i < inst.agents(); ++i)
        for (int k = 0; k < inst.agents(); ++k)
            if (u[i][k] > u[i][i]) return false;
    return true;
}

inline std::vector<int> without(std::vector<int> bundle, int item) {
    bundle.erase(std::remove(bundle.begin(), bundle.end(), item), bundle.end());
    return bundle;
}

inline bool oracle_ef1_pair(const IndivisibleInstance& inst, const Allocation& a,
                            int i, int k) {
    const Valuation& vi = inst.valuation(i);
    if (raw_value(vi, a.bundles[i]) >= raw_value(vi, a.bundles[k])) return true;
    std::vector<int> candidates = a.bundles[i];
    candidates.insert(candidates.end(), a.bundles[k].begin(), a.bundles[k].end());
    for (int j : candidates)
        if (raw_value(vi, without(a.bundles[i], j)) >= raw_value(vi, without(a.bundles[k], j)))
            return true;
    return false;
}

inline bool oracle_ef1(const IndivisibleInstance& inst, const Allocation& a) {
    for (int i = 0; i < inst.agents(); ++i)
        for (int k = 0; k < inst.agents(); ++k)
            if (i != k && !oracle_ef1_pair(inst, a, i, k)) return false;
    return true;
}

// Mixed-resource fairness per envious pair: the envier holds no bad cake,
// the envied holds no cake worth anything to the envier, and removing one
// indivisible item (never cake) repairs the comparison.
inline bool oracle_efm_pair(const MixedInstance& inst, const MixedAllocation& a,
                            int i, int k) {
    Rational ownCake = raw_integral(inst.density(i), a.cake[i]);
    Rational otherCake = raw_integral(inst.density(i), a.cake[k]);
    const Valuation& vi = inst.indivisible().valuation(i);
    Rational own = raw_value(vi, a.items.bundles[i]) + ownCake;
    Rational other = raw_value(vi, a.items.bundles[k]) + otherCake;
    if (own >= other) return true;
    if (ownCake < 0) return false;
    if (otherCake > 0) return false;
    std::vector<int> candidates = a.items.bundles[i];
    candidates.insert(candidates.end(), a.items.bundles[k].begin(), a.items.bundles[k].end());
    for (int j : candidates)
        if (raw_value(vi, without(a.items.bundles[i], j)) + ownCake >=
            raw_value(vi, without(a.items.bundles[k], j)) + otherCake)
            return true;
    return false;
}

inline bool oracle_efm(const MixedInstance& inst, const MixedAllocation& a) {
    for (int i = 0; i < inst.agents(); ++i)
        for (int k = 0; k < inst.agents(); ++k)
            if (i != k && !oracle_efm_pair(inst, a, i, k)) return false;
    return true;
}

// --------------------------------------------------------- graph oracles

using EdgeSet = std::set<std::tuple<int, int, EdgeKind>>;

inline EdgeSet edge_set(const EnvyGraph& g) {
    EdgeSet out;
    for (const auto& e : g.all_edges()) out.insert(e);
    return out;
}

// Edge set recomputed straight from the variant definitions over a utility
// matrix (u[i][k] = value agent i puts on k's share).
inline EdgeSet oracle_edges(const std::vector<std::vector<Rational>>& u, GraphVariant variant,
                            const std::vector<int>& vertices) {
    EdgeSet out;
    for (int i : vertices) {
        Rational best = u[i][i];
        for (int k : vertices) best = std::max(best, u[i][k]);
        for (int k : vertices) {
            if (k == i) continue;
            bool envy = u[i][k] > u[i][i];
            bool equal = u[i][k] == u[i][i];
            bool top = u[i][k] == best;
            switch (variant) {
                case GraphVariant::Plain:
                    if (envy) out.insert({i, k, EdgeKind::Envy});
                    break;
                case GraphVariant::TopTrading:
                    if (envy && top) out.insert({i, k, EdgeKind::Envy});
                    break;
                case GraphVariant::Generalized:
                    if (envy) out.insert({i, k, EdgeKind::Envy});
                    else if (equal) out.insert({i, k, EdgeKind::Equality});
                    break;
                case GraphVariant::TopTradingGeneralized:
                    if (top) out.insert({i, k, envy ? EdgeKind::Envy : EdgeKind::Equality});
                    break;
            }
        }
    }
    return out;
}

// Brute-force maximal addable sets: test every vertex subset against the
// closure definition and return the union of all qualifying subsets (the
// qualifying family is closed under union, so the union is the maximum).
inline std::vector<int> oracle_sink_addable(const EnvyGraph& g) {
    const auto& vs = g.vertices;
    int vcount = static_cast<int>(vs.size());
    std::vector<char> best(g.n, 0);
    for (std::uint32_t mask = 1; mask < (1u << vcount); ++mask) {
        std::vector<char> in(g.n, 0);
        for (int t = 0; t < vcount; ++t)
            if (mask & (1u << t)) in[vs[t]] = 1;
        bool ok = true;
        for (int s : vs) {
            if (!in[s]) continue;
            for (int k : vs) {
                if (g.edge[s][k] == EdgeKind::Envy) ok = false;
                if (g.edge[s][k] == EdgeKind::Equality && !in[k]) ok = false;
            }
        }
        if (ok)
            for (int s : vs)
                if (in[s]) best[s] = 1;
    }
    std::vector<int> out;
    for (int s : vs)
        if (best[s]) out.push_back(s);
    return out;
}

inline std::vector<int> oracle_source_addable(const EnvyGraph& g) {
    const auto& vs = g.vertices;
    int vcount = static_cast<int>(vs.size());
    std::vector<char> best(g.n, 0);
    for (std::uint32_t mask = 1; mask < (1u << vcount); ++mask) {
        std::vector<char> in(g.n, 0);
        for (int t = 0; t < vcount; ++t)
            if (mask & (1u << t)) in[vs[t]] = 1;
        bool ok = true;
        for (int s : vs) {
            if (!in[s]) continue;
            for (int k : vs) {
                if (g.edge[k][s] == EdgeKind::Envy) ok = false;
                if (g.edge[k][s] == EdgeKind::Equality && !in[k]) ok = false;
            }
        }
        if (ok)
            for (int s : vs)
                if (in[s]) best[s] = 1;
    }
    std::vector<int> out;
    for (int s : vs)
        if (best[s]) out.push_back(s);
    return out;
}

// Mutual-reachability components via transitive closure; each component is
// sorted ascending, the component list ordered by smallest member.
inline std::vector<std::vector<int>> oracle_components(const EnvyGraph& g) {
    std::vector<std::vector<char>> reach(g.n, std::vector<char>(g.n, 0));
    for (int i : g.vertices) reach[i][i] = 1;
    for (const auto& [i, k, kind] : g.all_edges()) {
        (void)kind;
        reach[i][k] = 1;
    }
    for (int via : g.vertices)
        for (int i : g.vertices)
            for (int k : g.vertices)
                if (reach[i][via] && reach[via][k]) reach[i][k] = 1;
    std::vector<std::vector<int>> comps;
    std::vector<char> used(g.n, 0);
    for (int i : g.vertices) {
        if (used[i]) continue;
        std::vector<int> comp;
        for (int k : g.vertices)
            if (reach[i][k] && reach[k][i]) {
                comp.push_back(k);
                used[k] = 1;
            }
        comps.push_back(std::move(comp));
    }
    return comps;
}

// ------------------------------------------------------- matching oracle

// Best total weight over all agent-to-item injections by full enumeration,
// together with the lexicographically smallest optimal assignment vector.
struct MatchingOracleResult {
    Rational best;
    std::vector<int> lexAssignment; // item chosen per agent, in agent order
};

inline void matching_oracle_rec(const std::vector<std::vector<Rational>>& w,
                                const std::vector<int>& agents, const std::vector<int>& items,
                                std::size_t pos, std::vector<char>& used, Rational running,
                                std::vector<int>& chosen, std::optional<MatchingOracleResult>& out) {
    if (pos == agents.size()) {
        if (!out || running > out->best ||
            (running == out->best && chosen < out->lexAssignment))
            out = MatchingOracleResult{running, chosen};
        return;
    }
    for (std::size_t t = 0; t < items.size(); ++t) {
        if (used[t]) continue;
        used[t] = 1;
        chosen.push_back(items[t]);
        matching_oracle_rec(w, agents, items, pos + 1, used,
                            running + w[agents[pos]][items[t]], chosen, out);
        chosen.pop_back();
        used[t] = 0;
    }
}

inline MatchingOracleResult oracle_matching(const std::vector<std::vector<Rational>>& w,
                                            const std::vector<int>& agents,
                                            const std::vector<int>& items) {
    std::optional<MatchingOracleResult> out;
    std::vector<char> used(items.size(), 0);
    std::vector<int> chosen;
    matching_oracle_rec(w, agents, items, 0, used, Rational(0), chosen, out);
    return *out;
}

// --------------------------------------------------- table-valuation input

// Random monotone non-increasing subset table: each set's value is the
// minimum over its one-smaller subsets minus a small non-negative drop.
inline IndivisibleInstance gen_table_monotone(Rng& rng, int n, int m) {
    std::vector<Valuation> vals;
    vals.reserve(n);
    for (int i = 0; i < n; ++i) {
        std::vector<Rational> t(std::size_t{1} << m, Rational(0));
        for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
            std::optional<Rational> mn;
            for (int j = 0; j < m; ++j)
                if (mask & (1u << j)) {
                    Rational below = t[mask ^ (1u << j)];
                    if (!mn || below < *mn) mn = below;
                }
            t[mask] = *mn - rng.range(0, 3);
        }
        vals.push_back(Valuation::table(m, std::move(t)));
    }
    return IndivisibleInstance(std::move(vals));
}

// Random doubly monotone subset table: every item gets a fixed sign role per
// agent, and each set's value is drawn from the interval that keeps all
// marginals on the right side (non-empty by the sandwich argument on the
// two-smaller subset).
inline IndivisibleInstance gen_table_doubly_monotone(Rng& rng, int n, int m) {
    std::vector<Valuation> vals;
    vals.reserve(n);
    for (int i = 0; i < n; ++i) {
        std::vector<char> isGood(m);
        for (int j = 0; j < m; ++j) isGood[j] = static_cast<char>(rng.below(2));
        std::vector<Rational> t(std::size_t{1} << m, Rational(0));
        for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
            std::optional<Rational> lo, hi;
            for (int j = 0; j < m; ++j) {
                if (!(mask & (1u << j))) continue;
                Rational below = t[mask ^ (1u << j)];
                if (isGood[j]) {
                    if (!lo || below > *lo) lo = below;
                } else {
                    if (!hi || below < *hi) hi = below;
                }
            }
            if (lo && hi)
                t[mask] = *lo + (*hi - *lo) * rng.range(0, 4) / 4;
            else if (lo)
                t[mask] = *lo + rng.range(0, 3);
            else
                t[mask] = *hi - rng.range(0, 3);
        }
        vals.push_back(Valuation::table(m, std::move(t)));
    }
    return IndivisibleInstance(std::move(vals));
}

// ------------------------------------------------------ random allocations

inline Allocation random_allocation(Rng& rng, int n, int m) {
    Allocation a(n);
    for (int j = 0; j < m; ++j) a.add(rng.below(n), j);
    return a;
}

// Random items plus a grid split of the cake; slices may stay unassigned so
// incomplete cake coverage is exercised too.
inline MixedAllocation random_mixed_allocation(Rng& rng, int n, int m) {
    MixedAllocation a(n);
    a.items = random_allocation(rng, n, m);
    int slices = rng.range(1, 2 * n + 2);
    std::vector<std::vector<Interval>> held(n);
    for (int s = 0; s < slices; ++s) {
        int who = rng.below(n + 1);
        if (who == n) continue;
        held[who].push_back(Interval{Rational(s) / slices, Rational(s + 1) / slices});
    }
    for (int i = 0; i < n; ++i) {
        a.cake[i].intervals = std::move(held[i]);
        a.cake[i].normalize();
    }
    return a;
}

} // namespace testutil
