#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "checkers.hpp"

namespace fairdiv {

// Set splitting: does some 2-coloring of the universe split every member of
// the family? Members are non-empty subsets of {0..q-1}; the universe itself
// must be non-empty (the reduction's equivalence needs a real universe).
struct SetSplittingInstance {
    int universe = 0;
    std::vector<std::vector<int>> family;

    void validate() const {
        require(universe >= 1, "set splitting needs a non-empty universe");
        for (const auto& e : family) {
            require(!e.empty(), "family members must be non-empty");
            require(std::is_sorted(e.begin(), e.end()), "family members must be sorted");
            require(std::adjacent_find(e.begin(), e.end()) == e.end(),
                    "family members must not repeat elements");
            for (int v : e)
                require(v >= 0 && v < universe, "family member element out of universe");
        }
    }
};

// Splittable = some partition of the universe into two non-empty color
// classes intersects every family member on both sides. Exhaustive over all
// 2^q colorings; desk-scale q only.
inline bool splittable(const SetSplittingInstance& ss) {
    ss.validate();
    require(ss.universe <= 24, "splittability oracle is exhaustive; universe too large");
    for (std::uint32_t coloring = 1; coloring + 1 < (std::uint32_t{1} << ss.universe);
         ++coloring) {
        bool ok = true;
        for (const auto& e : ss.family) {
            bool hasFirst = false, hasSecond = false;
            for (int v : e)
                (coloring >> v & 1 ? hasFirst : hasSecond) = true;
            if (!hasFirst || !hasSecond) { ok = false; break; }
        }
        if (ok) return true;
    }
    return false;
}

// Reduction from set splitting. Chores come ordered as r' dummies then q vertex
// chores; agents as r' edge agents then two color agents. r' = max(q, |F|),
// topping the family up with imaginary hyperedges adjacent to every vertex.
// Dummies are worth -1 to everyone; vertex chore V_j costs edge agent e_i
// -1 exactly when vertex j lies on e_i's hyperedge; color agents are
// indifferent to vertex chores. All values land in {-1, 0}.
inline IndivisibleInstance reduce_set_splitting(const SetSplittingInstance& ss) {
    ss.validate();
    int q = ss.universe;
    int r = static_cast<int>(ss.family.size());
    int rp = std::max(q, r);
    int m = rp + q;
    std::vector<Valuation> vals;
    vals.reserve(rp + 2);
    for (int i = 0; i < rp; ++i) {
        std::vector<Rational> row(m, Rational(0));
        for (int d = 0; d < rp; ++d) row[d] = -1;
        for (int j = 0; j < q; ++j) {
            bool adjacent = i >= r ? true
                                   : std::binary_search(ss.family[i].begin(),
                                                        ss.family[i].end(), j);
            if (adjacent) row[rp + j] = -1;
        }
        vals.push_back(Valuation::additive(std::move(row)));
    }
    for (int c = 0; c < 2; ++c) {
        std::vector<Rational> row(m, Rational(0));
        for (int d = 0; d < rp; ++d) row[d] = -1;
        vals.push_back(Valuation::additive(std::move(row)));
    }
    return IndivisibleInstance(std::move(vals));
}

namespace detail {

// Depth-first enumeration over complete allocations in base-n counter order
// (item index = digit position, agent = digit). For EF on monotone
// non-increasing instances, a pair is hopeless once the envier's current own
// value (an upper bound: more chores only hurt) falls below the envied
// bundle's value even if every remaining chore lands there (a lower bound);
// such subtrees contain no solution, so pruning keeps the first hit
// lexicographic.
class BruteForce {
public:
    BruteForce(const IndivisibleInstance& inst, Notion notion)
        : inst_(inst), notion_(notion), n_(inst.agents()), m_(inst.items()) {
        additive_ = inst.additive();
        prune_ = notion == Notion::EF && inst.monotone_non_increasing();
        bundles_.assign(n_, {});
        if (additive_) {
            u_.assign(n_, std::vector<Rational>(n_, Rational(0)));
            suffix_.assign(n_, std::vector<Rational>(m_ + 1, Rational(0)));
            for (int i = 0; i < n_; ++i)
                for (int t = m_ - 1; t >= 0; --t) {
                    Rational v = inst.valuation(i).item_value(t);
                    suffix_[i][t] = suffix_[i][t + 1] + (v < 0 ? v : Rational(0));
                }
        } else {
            masks_.assign(n_, 0);
            suffixMask_.assign(m_ + 1, 0);
            for (int t = m_ - 1; t >= 0; --t)
                suffixMask_[t] = suffixMask_[t + 1] | (std::uint32_t{1} << t);
        }
    }

    std::optional<Allocation> run() {
        if (dfs(0)) {
            Allocation a(n_);
            a.bundles = bundles_;
            return a;
        }
        return std::nullopt;
    }

private:
    Rational value_of(int viewer, int owner) const {
        if (additive_) return u_[viewer][owner];
        return inst_.valuation(viewer).value_mask(masks_[owner]);
    }

    bool hopeless(int i, int k, int nextItem) const {
        if (additive_) return u_[i][i] < u_[i][k] + suffix_[i][nextItem];
        return inst_.valuation(i).value_mask(masks_[i]) <
               inst_.valuation(i).value_mask(masks_[k] | suffixMask_[nextItem]);
    }

    bool leaf_ok() const {
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < n_; ++k) {
                if (k == i) continue;
                Rational own = value_of(i, i);
                Rational other = value_of(i, k);
                if (own >= other) continue;
                if (notion_ == Notion::EF) return false;
                if (!ef1_pair_ok(i, k)) return false;
            }
        return true;
    }

    bool ef1_pair_ok(int i, int k) const {
        auto without = [&](int owner, int j) {
            if (additive_) {
                bool member = std::binary_search(bundles_[owner].begin(),
                                                 bundles_[owner].end(), j);
                return member ? u_[i][owner] - inst_.valuation(i).item_value(j)
                              : u_[i][owner];
            }
            return inst_.valuation(i).value_mask(masks_[owner] & ~(std::uint32_t{1} << j));
        };
        for (int j : detail::sorted_union(bundles_[i], bundles_[k]))
            if (without(i, j) >= without(k, j)) return true;
        return false;
    }

    bool dfs(int t) {
        if (t == m_) return leaf_ok();
        for (int k = 0; k < n_; ++k) {
            bundles_[k].push_back(t);
            if (additive_)
                for (int i = 0; i < n_; ++i) u_[i][k] += inst_.valuation(i).item_value(t);
            else
                masks_[k] |= std::uint32_t{1} << t;

            bool dead = false;
            if (prune_)
                for (int i = 0; i < n_ && !dead; ++i) {
                    if (i == k) continue;
                    dead = hopeless(i, k, t + 1) || hopeless(k, i, t + 1);
                }
            if (!dead && dfs(t + 1)) return true;

            bundles_[k].pop_back();
            if (additive_)
                for (int i = 0; i < n_; ++i) u_[i][k] -= inst_.valuation(i).item_value(t);
            else
                masks_[k] &= ~(std::uint32_t{1} << t);
        }
        return false;
    }

    const IndivisibleInstance& inst_;
    Notion notion_;
    int n_, m_;
    bool additive_ = true;
    bool prune_ = false;
    std::vector<std::vector<int>> bundles_;
    std::vector<std::vector<Rational>> u_;      // additive: u[i][k] = v_i(A_k)
    std::vector<std::vector<Rational>> suffix_; // additive: sum of negative values from t on
    std::vector<std::uint32_t> masks_;          // table: bundle bitmask per agent
    std::vector<std::uint32_t> suffixMask_;     // table: all items from t on
};

inline void check_budget(const IndivisibleInstance& inst, std::uint64_t budget) {
    const std::uint64_t cap = ~std::uint64_t{0};
    std::uint64_t total = 1;
    auto n = static_cast<std::uint64_t>(inst.agents());
    for (int t = 0; t < inst.items(); ++t) {
        if (total > cap / n) { total = cap; break; }
        total *= n;
    }
    if (total > budget) throw BudgetExceeded(total, budget);
}

} // namespace detail

constexpr std::uint64_t kDefaultSearchBudget = 10'000'000;

// First EF allocation in base-n counter order, or nullopt.
inline std::optional<Allocation> brute_force_ef_exists(
    const IndivisibleInstance& inst, std::uint64_t budget = kDefaultSearchBudget) {
    detail::check_budget(inst, budget);
    return detail::BruteForce(inst, Notion::EF).run();
}

// Same enumeration for either notion; the EF1 leaf test scans witnesses.
inline std::optional<Allocation> brute_force_fair_search(
    const IndivisibleInstance& inst, Notion notion,
    std::uint64_t budget = kDefaultSearchBudget) {
    require(notion == Notion::EF || notion == Notion::EF1,
            "brute-force search covers EF and EF1 only");
    detail::check_budget(inst, budget);
    return detail::BruteForce(inst, notion).run();
}

} // namespace fairdiv
