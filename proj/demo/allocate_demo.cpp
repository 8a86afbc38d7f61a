// Small end-to-end tour: build a chores instance, allocate it with the
// top-trading algorithm, then add bad cake and run the mixed-resource solver.

#include <iostream>

#include "fairdiv/algorithms.hpp"
#include "fairdiv/checkers.hpp"
#include "fairdiv/mixed_efm.hpp"

using namespace fairdiv;

int main() {
    // three agents, six chores
    IndivisibleInstance chores({
        Valuation::additive({-1, -5, -3, -2, -4, -2}),
        Valuation::additive({-4, -1, -5, -3, -2, -2}),
        Valuation::additive({-2, -4, -1, -5, -3, -2}),
    });

    AlgoResult r = top_trading_envy_cycle_elimination(chores);
    std::cout << "item allocation:\n";
    for (int i = 0; i < chores.agents(); ++i) {
        std::cout << "  agent " << i + 1 << ":";
        for (int j : r.allocation.bundles[i]) std::cout << " c" << j + 1;
        std::cout << "\n";
    }
    std::cout << to_text(check_ef1(chores, r.allocation));

    // the same items plus a bad cake the agents weigh differently
    MixedInstance mixed(chores, DivisibleKind::BadCake,
                        {PiecewiseConstantDensity::uniform(-2),
                         PiecewiseConstantDensity::uniform(-1),
                         PiecewiseConstantDensity({Rational(0), Rational(1, 2), Rational(1)},
                                                  {Rational(-3), Rational(0)})});

    MixedResult mr = efm_doubly_monotone_bad_cake(mixed);
    std::cout << "bad cake shares:\n";
    for (int i = 0; i < mixed.agents(); ++i) {
        std::cout << "  agent " << i + 1 << ":";
        if (mr.allocation.cake[i].empty()) std::cout << " none";
        for (const auto& iv : mr.allocation.cake[i].intervals)
            std::cout << " [" << to_string(iv.lo) << ", " << to_string(iv.hi) << "]";
        std::cout << "\n";
    }
    std::cout << to_text(check_efm(mixed, mr.allocation));
    return 0;
}
