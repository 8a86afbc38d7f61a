#pragma once

#include <numeric>
#include <optional>
#include <vector>

#include "algorithms.hpp"

namespace fairdiv {

struct MixedResult {
    MixedAllocation allocation;
    RunTrace trace;
};

// Cycle handling inside the cake phase. Arbitrary resolution is only proven
// safe for the special cases (goods+cake, identical rankings, m <= n+1);
// RefuseAll turns a required resolution into a hard diagnostic instead of an
// unsound answer.
enum class CyclePolicy { ArbitraryCycle, RefuseAll };

struct PrefixQuery {
    Rational start;  // a: left end of the remaining cake
    Rational target; // t: the value threshold being chased
    int agent = 0;   // bookkeeping only; the density is passed alongside
};

// x = sup{x : v([a,x]) >= t} on bad cake (cumulative value non-increasing),
// x = sup{x : v([a,x]) <= t} on cake (non-decreasing). The sup extends across
// zero-density plateaus; the answer is exact (linear solve within the segment
// where the cumulative value strictly crosses the target). nullopt signals
// that the whole remainder never meets the target (v([a,1]) stays on the
// tolerable side strictly), in which case callers take everything.
inline std::optional<Rational> solve_prefix(const PiecewiseConstantDensity& f,
                                            const PrefixQuery& q, DivisibleKind kind) {
    require(q.start >= 0 && q.start <= 1, "prefix query start must lie in [0,1]");
    if (kind == DivisibleKind::BadCake)
        require(q.target <= 0, "bad-cake prefix target must be non-positive");
    else
        require(q.target >= 0, "cake prefix target must be non-negative");

    Rational v = 0; // cumulative value of [a, walk position]
    const auto& bp = f.breakpoints();
    const auto& lv = f.levels();
    for (std::size_t k = 0; k < lv.size(); ++k) {
        Rational lo = std::max(q.start, bp[k]);
        Rational hi = bp[k + 1];
        if (lo >= hi) continue;
        Rational atEnd = v + lv[k] * (hi - lo);
        bool crosses = (kind == DivisibleKind::BadCake) ? atEnd < q.target : atEnd > q.target;
        if (crosses) {
            // strictly past the target inside this segment; level is nonzero
            return lo + (q.target - v) / lv[k];
        }
        v = atEnd;
    }
    if (v == q.target) return Rational(1);
    return std::nullopt; // target never met; remainder tolerable as a whole
}

// Splits `piece` into k parts every agent values at exactly 1/k of the piece:
// overlaying all breakpoints yields segments on which every density is
// constant, and each segment hands its j-th equal-length slice to part j.
inline std::vector<CakePiece> perfect_partition(
    const std::vector<PiecewiseConstantDensity>& densities, const CakePiece& piece, int k) {
    require(k >= 1, "perfect partition needs k >= 1");
    std::vector<CakePiece> parts(k);
    for (const auto& iv : piece.intervals) {
        std::vector<Rational> cuts{iv.lo, iv.hi};
        for (const auto& f : densities)
            for (const auto& b : f.breakpoints())
                if (b > iv.lo && b < iv.hi) cuts.push_back(b);
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
            Rational step = (cuts[s + 1] - cuts[s]) / k;
            for (int j = 0; j < k; ++j)
                parts[j].intervals.push_back(
                    Interval{cuts[s] + step * j, cuts[s] + step * (j + 1)});
        }
    }
    for (auto& p : parts) p.normalize();
    return parts;
}

namespace detail {

inline bool remainder_worthless(const MixedInstance& inst, const Rational& a) {
    for (int i = 0; i < inst.agents(); ++i)
        if (inst.density(i).value(Interval{a, Rational(1)}) != 0) return false;
    return true;
}

inline std::vector<PiecewiseConstantDensity> all_densities(const MixedInstance& inst) {
    std::vector<PiecewiseConstantDensity> out;
    out.reserve(inst.agents());
    for (int i = 0; i < inst.agents(); ++i) out.push_back(inst.density(i));
    return out;
}

} // namespace detail

// Doubly monotone items + bad cake. Phase 1 allocates the items
// EF1; phase 2 doles the bad cake out to the maximal sink addable set S in
// prefix slices small enough that nobody in S starts envying the outside
// (each slice costs a member at most |S| * delta_i spread equally by the
// perfect partition), resolving top-trading generalized envy cycles whenever
// they appear. Every intermediate allocation stays EFM.
inline MixedResult efm_doubly_monotone_bad_cake(const MixedInstance& inst) {
    require(inst.kind() == DivisibleKind::BadCake, "instance must carry bad cake");
    const auto& items = inst.indivisible();
    require(items.doubly_monotone(), "indivisible part must be doubly monotone");
    int n = inst.agents();

    AlgoResult phase1 = doubly_monotone_ef1(items);
    MixedResult res;
    res.allocation = MixedAllocation(n);
    res.allocation.items = phase1.allocation;
    res.trace = phase1.trace;

    auto densities = detail::all_densities(inst);
    Rational a = 0;
    int guard = 0;
    while (a < 1) {
        internal_check(++guard <= 8 * n * n * n + 64, "bad-cake phase exceeded its round bound");

        if (detail::remainder_worthless(inst, a)) {
            CakeAllocated ev;
            ev.agents = {0};
            ev.prefix = Interval{a, Rational(1)};
            ev.pieces = {CakePiece::interval(a, Rational(1))};
            ev.worthless = true;
            res.allocation.cake[0].unite(ev.pieces[0]);
            res.trace.events.push_back(std::move(ev));
            break;
        }

        // resolve generalized envy cycles of the top-trading generalized graph
        bool resolvedAny = true;
        while (resolvedAny) {
            EnvyGraph tg = build_graph(inst, res.allocation, GraphVariant::TopTradingGeneralized);
            auto cycle = find_cycle(tg, /*requireEnvyEdge=*/true);
            resolvedAny = cycle.has_value();
            if (cycle) {
                resolve_cycle(res.allocation, *cycle);
                res.trace.resolved(GraphVariant::TopTradingGeneralized, *cycle);
            }
            internal_check(++guard <= 8 * n * n * n + 64,
                           "cycle resolution exceeded its round bound");
        }

        EnvyGraph g = build_graph(inst, res.allocation, GraphVariant::Generalized);
        std::vector<int> S = maximal_sink_addable_set(g);
        internal_check(!S.empty(), "sink addable set empty after cycle resolution");

        if (static_cast<int>(S.size()) == n) {
            auto parts = perfect_partition(densities, CakePiece::interval(a, Rational(1)), n);
            CakeAllocated ev;
            ev.agents = S;
            ev.prefix = Interval{a, Rational(1)};
            ev.pieces = parts;
            for (int t = 0; t < n; ++t) res.allocation.cake[t].unite(parts[t]);
            res.trace.events.push_back(std::move(ev));
            break;
        }

        // delta_i: slack of i in S towards the closest outside bundle;
        // strictly positive because S admits no envy or equality edge outward
        int sz = static_cast<int>(S.size());
        std::vector<char> inS(n, 0);
        for (int i : S) inS[i] = 1;
        bool tolerable = true;
        std::vector<Rational> target(n);
        for (int i : S) {
            Rational own = mixed_value(inst, res.allocation, i, i);
            std::optional<Rational> delta;
            for (int j = 0; j < n; ++j) {
                if (inS[j]) continue;
                Rational gap = own - mixed_value(inst, res.allocation, i, j);
                if (!delta || gap < *delta) delta = gap;
            }
            internal_check(delta && *delta > 0, "sink addable member without positive slack");
            target[i] = -Rational(sz) * *delta;
            if (inst.density(i).value(Interval{a, Rational(1)}) < target[i]) tolerable = false;
        }

        Rational x = 1;
        if (!tolerable) {
            for (int i : S) {
                auto xi = solve_prefix(inst.density(i), PrefixQuery{a, target[i], i},
                                       DivisibleKind::BadCake);
                if (xi && *xi < x) x = *xi;
            }
            internal_check(x > a, "bad-cake slice failed to make progress");
        }

        auto parts = perfect_partition(densities, CakePiece::interval(a, x), sz);
        CakeAllocated ev;
        ev.agents = S;
        ev.prefix = Interval{a, x};
        ev.pieces = parts;
        for (int t = 0; t < sz; ++t) res.allocation.cake[S[t]].unite(parts[t]);
        res.trace.events.push_back(std::move(ev));
        a = x;
    }
    return res;
}

// Cake phase over a finished item allocation: repeatedly resolve
// generalized envy cycles per the policy, then grow a prefix for the maximal source addable set S, capped so
// that no outsider starts envying a member of S (outsider i tolerates at
// most |S| * min_{j in S}(u_i(A_i) - u_i(A_j)) of prefix value). Item events
// for the start allocation are prepended so the trace replays from empty.
inline MixedResult efm_cake_phase(const MixedInstance& inst, const Allocation& start,
                                  CyclePolicy policy) {
    require(inst.kind() == DivisibleKind::Cake, "cake phase needs a cake instance");
    start.validate(inst.agents(), inst.items());
    require(start.complete(inst.items()), "cake phase needs a complete item allocation");
    int n = inst.agents();

    MixedResult res;
    res.allocation = MixedAllocation(n);
    res.allocation.items = start;
    for (int j = 0; j < inst.items(); ++j)
        for (int i = 0; i < n; ++i)
            if (std::binary_search(start.bundles[i].begin(), start.bundles[i].end(), j)) {
                res.trace.assigned(j, i);
                break;
            }

    auto densities = detail::all_densities(inst);
    Rational a = 0;
    int guard = 0;
    while (a < 1) {
        internal_check(++guard <= 8 * n * n * n + 64, "cake phase exceeded its round bound");

        if (detail::remainder_worthless(inst, a)) {
            CakeAllocated ev;
            ev.agents = {0};
            ev.prefix = Interval{a, Rational(1)};
            ev.pieces = {CakePiece::interval(a, Rational(1))};
            ev.worthless = true;
            res.allocation.cake[0].unite(ev.pieces[0]);
            res.trace.events.push_back(std::move(ev));
            break;
        }

        bool resolvedAny = true;
        while (resolvedAny) {
            EnvyGraph g = build_graph(inst, res.allocation, GraphVariant::Generalized);
            auto cycle = find_cycle(g, /*requireEnvyEdge=*/true);
            resolvedAny = cycle.has_value();
            if (cycle) {
                if (policy == CyclePolicy::RefuseAll) {
                    std::string agents;
                    for (std::size_t t = 0; t < cycle->size(); ++t)
                        agents += (t ? "," : "") + std::to_string((*cycle)[t] + 1);
                    throw CyclePolicyRefusal(
                        "cake phase requires resolving a generalized envy cycle (agents " +
                        agents + ") but the policy refuses; no EFM guarantee exists here");
                }
                resolve_cycle(res.allocation, *cycle);
                res.trace.resolved(GraphVariant::Generalized, *cycle);
            }
            internal_check(++guard <= 8 * n * n * n + 64,
                           "cycle resolution exceeded its round bound");
        }

        EnvyGraph g = build_graph(inst, res.allocation, GraphVariant::Generalized);
        std::vector<int> S = maximal_source_addable_set(g);
        internal_check(!S.empty(), "source addable set empty in an acyclic generalized graph");

        if (static_cast<int>(S.size()) == n) {
            auto parts = perfect_partition(densities, CakePiece::interval(a, Rational(1)), n);
            CakeAllocated ev;
            ev.agents = S;
            ev.prefix = Interval{a, Rational(1)};
            ev.pieces = parts;
            for (int t = 0; t < n; ++t) res.allocation.cake[t].unite(parts[t]);
            res.trace.events.push_back(std::move(ev));
            break;
        }

        int sz = static_cast<int>(S.size());
        std::vector<char> inS(n, 0);
        for (int i : S) inS[i] = 1;
        Rational x = 1;
        for (int i = 0; i < n; ++i) {
            if (inS[i]) continue;
            Rational own = mixed_value(inst, res.allocation, i, i);
            std::optional<Rational> slack;
            for (int j : S) {
                Rational gap = own - mixed_value(inst, res.allocation, i, j);
                if (!slack || gap < *slack) slack = gap;
            }
            internal_check(slack && *slack > 0, "outsider already matches a source bundle");
            Rational cap = Rational(sz) * *slack;
            auto xi = solve_prefix(inst.density(i), PrefixQuery{a, cap, i}, DivisibleKind::Cake);
            if (xi && *xi < x) x = *xi;
        }
        internal_check(x > a, "cake slice failed to make progress");

        auto parts = perfect_partition(densities, CakePiece::interval(a, x), sz);
        CakeAllocated ev;
        ev.agents = S;
        ev.prefix = Interval{a, x};
        ev.pieces = parts;
        for (int t = 0; t < sz; ++t) res.allocation.cake[S[t]].unite(parts[t]);
        res.trace.events.push_back(std::move(ev));
        a = x;
    }
    return res;
}

// Items sorted by every agent simultaneously (weakly decreasing value), or
// nullopt. Sorting by the lexicographic tuple of all agents' values finds a
// common ranking whenever one exists; validation then just checks weak
// monotonicity per agent.
inline std::optional<std::vector<int>> common_ranking(const IndivisibleInstance& inst) {
    require(inst.additive(), "ranking check needs additive valuations");
    std::vector<int> idx(inst.items());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        for (int i = 0; i < inst.agents(); ++i) {
            const Rational& va = inst.valuation(i).item_value(a);
            const Rational& vb = inst.valuation(i).item_value(b);
            if (va != vb) return va > vb;
        }
        return a < b;
    });
    for (int i = 0; i < inst.agents(); ++i)
        for (std::size_t t = 0; t + 1 < idx.size(); ++t)
            if (inst.valuation(i).item_value(idx[t]) < inst.valuation(i).item_value(idx[t + 1]))
                return std::nullopt;
    return idx;
}

namespace detail {

inline void require_additive_chores(const IndivisibleInstance& inst, const char* who) {
    require(inst.additive(), std::string(who) + " needs additive valuations");
    require(inst.monotone_non_increasing(), std::string(who) + " needs a chores instance");
}

} // namespace detail

// Identical-rankings pipeline: chores via round robin (the stride bundles
// B_i), then the cake phase; arbitrary cycle resolution is safe because any
// bundle permutation of B stays EF1.
inline MixedResult efm_identical_rankings_chores_cake(const MixedInstance& inst) {
    require(inst.kind() == DivisibleKind::Cake, "expected a chores + cake instance");
    detail::require_additive_chores(inst.indivisible(), "identical-rankings pipeline");
    require(common_ranking(inst.indivisible()).has_value(),
            "agents do not share a common item ranking");
    Allocation items = round_robin(inst.indivisible());
    return efm_cake_phase(inst, items, CyclePolicy::ArbitraryCycle);
}

// Corollary C.3: round robin over the n-1 identical agents plus a virtual
// copy of the first, the outlier picks its favorite bundle, the rest go in
// index order; then the cake phase.
inline MixedResult efm_identical_except_one(const MixedInstance& inst) {
    require(inst.kind() == DivisibleKind::Cake, "expected a chores + cake instance");
    const auto& items = inst.indivisible();
    detail::require_additive_chores(items, "identical-except-one pipeline");
    int n = inst.agents();
    require(n >= 2, "pipeline needs at least two agents");
    std::vector<Valuation> shared;
    for (int i = 0; i + 1 < n; ++i) shared.push_back(items.valuation(i));
    require(common_ranking(IndivisibleInstance(shared)).has_value(),
            "the first n-1 agents do not share a common item ranking");

    // picker slots: agents 1..n-1 in order, then the virtual copy of agent 1
    std::vector<Valuation> pickers = shared;
    pickers.push_back(items.valuation(0));
    Allocation picked = round_robin(IndivisibleInstance(std::move(pickers)));

    int favorite = 0;
    for (int j = 1; j < n; ++j)
        if (items.value(n - 1, picked.bundles[j]) > items.value(n - 1, picked.bundles[favorite]))
            favorite = j;
    Allocation start(n);
    start.bundles[n - 1] = picked.bundles[favorite];
    int next = 0;
    for (int j = 0; j < n; ++j) {
        if (j == favorite) continue;
        start.bundles[next++] = picked.bundles[j];
    }
    for (int j = 0; j < n; ++j)
        internal_check(items.value(n - 1, start.bundles[n - 1]) >=
                           items.value(n - 1, start.bundles[j]),
                       "outlier agent must start the cake phase envy-free");
    return efm_cake_phase(inst, start, CyclePolicy::ArbitraryCycle);
}

// Few-chores pipeline (m <= n+1): round robin hands everyone at most one
// chore (one agent two when m = n+1), then the cake phase.
inline MixedResult efm_few_chores_cake(const MixedInstance& inst) {
    require(inst.kind() == DivisibleKind::Cake, "expected a chores + cake instance");
    detail::require_additive_chores(inst.indivisible(), "few-chores pipeline");
    require(inst.items() <= inst.agents() + 1,
            "pipeline only covers m <= n+1 chores");
    Allocation items = round_robin(inst.indivisible());
    return efm_cake_phase(inst, items, CyclePolicy::ArbitraryCycle);
}

} // namespace fairdiv
