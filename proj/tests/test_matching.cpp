#include <catch2/catch_amalgamated.hpp>

#include "fairdiv/errors.hpp"
#include "fairdiv/matching.hpp"
#include "helpers.hpp"

using namespace fairdiv;
using namespace testutil;

namespace {

std::vector<std::vector<Rational>> random_weights(Rng& rng, int agents, int items, int lo,
                                                  int hi) {
    std::vector<std::vector<Rational>> w(agents, std::vector<Rational>(items));
    for (auto& row : w)
        for (auto& x : row) x = rng.range(lo, hi);
    return w;
}

Rational matching_total(const std::vector<std::vector<Rational>>& w,
                        const std::vector<std::pair<int, int>>& pairs) {
    Rational total = 0;
    for (const auto& [a, c] : pairs) total += w[a][c];
    return total;
}

} // namespace

TEST_CASE("single agent picks its best item", "[matching]") {
    IndivisibleInstance inst = make_additive({{-2, -1}});
    auto pairs = max_weight_perfect_matching(inst, {0}, {0, 1});
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0] == std::make_pair(0, 1));
}

TEST_CASE("two-by-two unique optimum", "[matching]") {
    IndivisibleInstance inst = make_additive({{0, -5}, {-5, 0}});
    auto pairs = max_weight_perfect_matching(inst, {0, 1}, {0, 1});
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0] == std::make_pair(0, 0));
    CHECK(pairs[1] == std::make_pair(1, 1));
}

TEST_CASE("too few items is an input error", "[matching]") {
    IndivisibleInstance inst = make_additive({{-1}, {-1}});
    CHECK_THROWS_AS(max_weight_perfect_matching(inst, {0, 1}, {0}), InputError);
    CHECK_THROWS_AS(
        max_weight_perfect_matching({0, 1}, {0, 0},
                                    [](int, int) { return Rational(0); }),
        InputError);
}

TEST_CASE("optimal value matches full enumeration", "[matching][property]") {
    constexpr int kRounds = 250;
    Rng rng(813);
    for (int round = 0; round < kRounds; ++round) {
        int p = rng.range(1, 4);
        int q = rng.range(p, 6);
        auto w = random_weights(rng, p, q, -9, 9);
        std::vector<int> agents(p), items(q);
        std::iota(agents.begin(), agents.end(), 0);
        std::iota(items.begin(), items.end(), 0);
        auto pairs = max_weight_perfect_matching(
            agents, items, [&](int a, int c) { return w[a][c]; });
        auto best = oracle_matching(w, agents, items);
        CAPTURE(round, p, q);
        REQUIRE(matching_total(w, pairs) == best.best);
    }
}

TEST_CASE("ties break to the lexicographically smallest assignment", "[matching][property]") {
    constexpr int kRounds = 250;
    Rng rng(814);
    for (int round = 0; round < kRounds; ++round) {
        int p = rng.range(1, 4);
        int q = rng.range(p, 6);
        // a tiny weight range forces plenty of optimal ties
        auto w = random_weights(rng, p, q, -1, 0);
        std::vector<int> agents(p), items(q);
        std::iota(agents.begin(), agents.end(), 0);
        std::iota(items.begin(), items.end(), 0);
        auto pairs = max_weight_perfect_matching(
            agents, items, [&](int a, int c) { return w[a][c]; });
        auto best = oracle_matching(w, agents, items);
        std::vector<int> picked;
        picked.reserve(pairs.size());
        for (const auto& [a, c] : pairs) {
            (void)a;
            picked.push_back(c);
        }
        CAPTURE(round, p, q);
        REQUIRE(matching_total(w, pairs) == best.best);
        REQUIRE(picked == best.lexAssignment);
    }
}

TEST_CASE("matching handles sparse agent and item id sets", "[matching]") {
    // global ids need not be contiguous; weights follow the instance
    IndivisibleInstance inst = make_additive({{-9, -9, -9, -9},
                                              {-1, -7, -2, -9},
                                              {-1, -3, -5, -9},
                                              {-9, -9, -9, -9}});
    auto pairs = max_weight_perfect_matching(inst, {1, 2}, {1, 2, 3});
    REQUIRE(pairs.size() == 2);
    // a2 takes c3 (-2) and a3 takes c2 (-3): total -5 beats the alternatives
    CHECK(pairs[0] == std::make_pair(1, 2));
    CHECK(pairs[1] == std::make_pair(2, 1));
}

TEST_CASE("matching output is deterministic", "[matching]") {
    Rng rng(815);
    auto w = random_weights(rng, 3, 5, -3, 0);
    std::vector<int> agents{0, 1, 2}, items{0, 1, 2, 3, 4};
    auto weight = [&](int a, int c) { return w[a][c]; };
    auto first = max_weight_perfect_matching(agents, items, weight);
    for (int repeat = 0; repeat < 5; ++repeat)
        CHECK(max_weight_perfect_matching(agents, items, weight) == first);
}
