#pragma once

#include <algorithm>
#include <vector>

#include "errors.hpp"
#include "instance.hpp"

namespace fairdiv {

// A (possibly partial) assignment of items to agents. Bundles are kept
// sorted; items not in any bundle are simply unallocated.
struct Allocation {
    std::vector<std::vector<int>> bundles;

    Allocation() = default;
    explicit Allocation(int n) : bundles(n) {}

    int agents() const { return static_cast<int>(bundles.size()); }

    void add(int agent, int item) {
        for (const auto& b : bundles)
            require(!std::binary_search(b.begin(), b.end(), item), "item already allocated");
        auto& b = bundles.at(agent);
        b.insert(std::lower_bound(b.begin(), b.end(), item), item);
    }

    bool complete(int m) const {
        std::size_t total = 0;
        for (const auto& b : bundles) total += b.size();
        return total == static_cast<std::size_t>(m);
    }

    // partition sanity: disjoint bundles, every index within [0, m)
    void validate(int n, int m) const {
        require(agents() == n, "allocation has wrong number of bundles");
        std::vector<char> seen(m, 0);
        for (const auto& b : bundles) {
            require(std::is_sorted(b.begin(), b.end()), "bundle not sorted");
            for (int j : b) {
                require(j >= 0 && j < m, "allocated item out of range");
                require(!seen[j], "item allocated twice");
                seen[j] = 1;
            }
        }
    }

    bool operator==(const Allocation& o) const { return bundles == o.bundles; }
};

inline Rational bundle_value(const IndivisibleInstance& inst, const Allocation& a,
                             int viewer, int owner) {
    return inst.value(viewer, a.bundles.at(owner));
}

} // namespace fairdiv
