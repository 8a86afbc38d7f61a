#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hardness.hpp"
#include "mixed.hpp"

namespace fairdiv {

// Seeded generator with hand-rolled bounded draws so identical seeds yield
// identical instances on every platform (std::uniform_int_distribution is
// implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    // Uniform over 0..bound-1 via rejection sampling.
    int below(int bound) {
        require(bound >= 1, "rng bound must be positive");
        auto b = static_cast<std::uint64_t>(bound);
        std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % b);
        std::uint64_t x;
        do { x = eng_(); } while (x >= limit);
        return static_cast<int>(x % b);
    }

    // Uniform over lo..hi inclusive.
    int range(int lo, int hi) {
        require(lo <= hi, "rng range is empty");
        return lo + below(hi - lo + 1);
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (int i = static_cast<int>(v.size()) - 1; i > 0; --i)
            std::swap(v[i], v[below(i + 1)]);
    }

private:
    std::mt19937_64 eng_;
};

inline std::vector<int> random_permutation(Rng& rng, int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    rng.shuffle(p);
    return p;
}

namespace detail {

inline IndivisibleInstance additive_from_rows(std::vector<std::vector<Rational>> rows) {
    std::vector<Valuation> vals;
    vals.reserve(rows.size());
    for (auto& r : rows) vals.push_back(Valuation::additive(std::move(r)));
    return IndivisibleInstance(std::move(vals));
}

} // namespace detail

// Strictly negative integer values in [-9, -1].
inline IndivisibleInstance gen_additive_chores(Rng& rng, int n, int m) {
    std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(m));
    for (auto& row : rows)
        for (auto& v : row) v = Rational(-rng.range(1, 9));
    return detail::additive_from_rows(std::move(rows));
}

// Values in {-1, 0}.
inline IndivisibleInstance gen_binary_chores(Rng& rng, int n, int m) {
    std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(m));
    for (auto& row : rows)
        for (auto& v : row) v = Rational(-rng.below(2));
    return detail::additive_from_rows(std::move(rows));
}

// Mixed-sign additive values in [-5, 5]; every additive instance is doubly
// monotone since each item's per-agent class follows its sign.
inline IndivisibleInstance gen_doubly_monotone_additive(Rng& rng, int n, int m) {
    std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(m));
    for (auto& row : rows)
        for (auto& v : row) v = Rational(rng.range(-5, 5));
    return detail::additive_from_rows(std::move(rows));
}

// Strictly negative rows sorted non-increasing, so the identity ordering is a
// common ranking for all agents.
inline IndivisibleInstance gen_identical_rankings_chores(Rng& rng, int n, int m) {
    std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(m));
    for (auto& row : rows) {
        for (auto& v : row) v = Rational(-rng.range(1, 9));
        std::sort(row.begin(), row.end(), std::greater<Rational>());
    }
    return detail::additive_from_rows(std::move(rows));
}

// Random non-empty subsets of a q-element universe.
inline SetSplittingInstance gen_set_splitting(Rng& rng, int q, int members) {
    require(q >= 1 && q <= 24, "universe size out of range");
    require(members >= 0, "member count must be non-negative");
    SetSplittingInstance ss;
    ss.universe = q;
    for (int e = 0; e < members; ++e) {
        std::vector<int> member;
        while (member.empty())
            for (int v = 0; v < q; ++v)
                if (rng.below(2)) member.push_back(v);
        ss.family.push_back(std::move(member));
    }
    return ss;
}

// Up to maxSegments constant pieces with breakpoint denominators <= 12 and
// small integer levels of the sign the kind demands. Zero levels are allowed,
// including fully worthless densities.
inline PiecewiseConstantDensity gen_density(Rng& rng, DivisibleKind kind,
                                            int maxSegments = 4) {
    require(maxSegments >= 1, "density needs at least one segment");
    static const std::vector<Rational> interior = [] {
        std::vector<Rational> pts;
        for (int den = 2; den <= 12; ++den)
            for (int num = 1; num < den; ++num) pts.emplace_back(num, den);
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        return pts;
    }();
    int segments = rng.range(1, maxSegments);
    std::vector<int> cutIdx;
    while (static_cast<int>(cutIdx.size()) < segments - 1) {
        int c = rng.below(static_cast<int>(interior.size()));
        if (std::find(cutIdx.begin(), cutIdx.end(), c) == cutIdx.end())
            cutIdx.push_back(c);
    }
    std::sort(cutIdx.begin(), cutIdx.end());
    std::vector<Rational> breakpoints{Rational(0)};
    for (int c : cutIdx) breakpoints.push_back(interior[c]);
    breakpoints.push_back(Rational(1));
    std::vector<Rational> levels(segments);
    for (auto& l : levels)
        l = kind == DivisibleKind::BadCake ? Rational(-rng.range(0, 6))
                                           : Rational(rng.range(0, 6));
    return PiecewiseConstantDensity(std::move(breakpoints), std::move(levels));
}

// Bad cake rides on a mixed-sign doubly monotone item part; good cake on a
// strictly negative chores part.
inline MixedInstance gen_mixed(Rng& rng, DivisibleKind kind, int n, int m,
                               int maxSegments = 4) {
    IndivisibleInstance items = kind == DivisibleKind::BadCake
                                    ? gen_doubly_monotone_additive(rng, n, m)
                                    : gen_additive_chores(rng, n, m);
    std::vector<PiecewiseConstantDensity> densities;
    densities.reserve(n);
    for (int i = 0; i < n; ++i) densities.push_back(gen_density(rng, kind, maxSegments));
    return MixedInstance(std::move(items), kind, std::move(densities));
}

} // namespace fairdiv
