#pragma once

#include <vector>

#include "allocation.hpp"
#include "cake.hpp"
#include "instance.hpp"

namespace fairdiv {

// Whether the divisible resource is desirable (all densities >= 0) or a bad
// cake (all densities <= 0).
enum class DivisibleKind { Cake, BadCake };

class MixedInstance {
public:
    MixedInstance(IndivisibleInstance items, DivisibleKind kind,
                  std::vector<PiecewiseConstantDensity> densities)
        : items_(std::move(items)), kind_(kind), densities_(std::move(densities)) {
        require(densities_.size() == static_cast<std::size_t>(items_.agents()),
                "need one density per agent");
        for (const auto& f : densities_) {
            if (kind_ == DivisibleKind::Cake)
                require(f.non_negative(), "cake densities must be non-negative");
            else
                require(f.non_positive(), "bad-cake densities must be non-positive");
        }
    }

    const IndivisibleInstance& indivisible() const { return items_; }
    DivisibleKind kind() const { return kind_; }
    const PiecewiseConstantDensity& density(int agent) const {
        require(agent >= 0 && agent < items_.agents(), "agent index out of range");
        return densities_[agent];
    }
    int agents() const { return items_.agents(); }
    int items() const { return items_.items(); }

    friend bool operator==(const MixedInstance& a, const MixedInstance& b) {
        return a.items_ == b.items_ && a.kind_ == b.kind_ && a.densities_ == b.densities_;
    }

private:
    IndivisibleInstance items_;
    DivisibleKind kind_;
    std::vector<PiecewiseConstantDensity> densities_;
};

// Items plus one cake piece per agent. Pieces must not overlap across agents.
struct MixedAllocation {
    Allocation items;
    std::vector<CakePiece> cake;

    MixedAllocation() = default;
    explicit MixedAllocation(int n) : items(n), cake(n) {}

    int agents() const { return items.agents(); }

    void validate(int n, int m) const {
        items.validate(n, m);
        require(cake.size() == static_cast<std::size_t>(n),
                "mixed allocation needs one cake piece per agent");
        std::vector<Interval> all;
        for (const auto& p : cake)
            all.insert(all.end(), p.intervals.begin(), p.intervals.end());
        std::sort(all.begin(), all.end(), [](const Interval& a, const Interval& b) {
            return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
        });
        for (std::size_t t = 0; t + 1 < all.size(); ++t)
            require(all[t].hi <= all[t + 1].lo, "cake pieces overlap across agents");
    }

    bool operator==(const MixedAllocation& o) const {
        return items == o.items && cake == o.cake;
    }
};

// u_i(A_k) = v_i(item bundle of k) + integral of f_i over k's cake piece
inline Rational mixed_value(const MixedInstance& inst, const MixedAllocation& a,
                            int viewer, int owner) {
    return inst.indivisible().value(viewer, a.items.bundles.at(owner)) +
           inst.density(viewer).value(a.cake.at(owner));
}

} // namespace fairdiv
