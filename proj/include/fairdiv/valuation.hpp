#pragma once

#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace fairdiv {

// How one agent values sets of indivisible items. Additive valuations carry
// one rational per item; table valuations carry an explicit value for every
// subset, indexed by bitmask (bit j = item j), and are capped at 20 items.
enum class ValuationKind { Additive, Table };

enum class ItemClass { Good, Chore };

constexpr int kMaxTableItems = 20;

class Valuation {
public:
    static Valuation additive(std::vector<Rational> values) {
        Valuation v;
        v.kind_ = ValuationKind::Additive;
        v.m_ = static_cast<int>(values.size());
        v.additive_ = std::move(values);
        return v;
    }

    // table[mask] = value of the item set encoded by mask; table[0] must be 0.
    static Valuation table(int m, std::vector<Rational> table) {
        require(m >= 0 && m <= kMaxTableItems,
                "table valuations support at most " + std::to_string(kMaxTableItems) + " items");
        require(table.size() == (std::size_t{1} << m), "table size must be 2^m");
        require(table[0] == 0, "table valuation must assign 0 to the empty set");
        Valuation v;
        v.kind_ = ValuationKind::Table;
        v.m_ = m;
        v.table_ = std::move(table);
        return v;
    }

    ValuationKind kind() const { return kind_; }
    int items() const { return m_; }

    const std::vector<Rational>& additive_values() const { return additive_; }
    const std::vector<Rational>& table_values() const { return table_; }

    Rational item_value(int j) const {
        require(j >= 0 && j < m_, "item index out of range");
        if (kind_ == ValuationKind::Additive) return additive_[j];
        return table_[std::uint32_t{1} << j];
    }

    Rational value_mask(std::uint32_t mask) const {
        if (kind_ == ValuationKind::Table) return table_[mask];
        Rational total = 0;
        for (int j = 0; j < m_; ++j)
            if (mask >> j & 1) total += additive_[j];
        return total;
    }

    Rational value(const std::vector<int>& bundle) const {
        if (kind_ == ValuationKind::Additive) {
            Rational total = 0;
            for (int j : bundle) {
                require(j >= 0 && j < m_, "item index out of range");
                total += additive_[j];
            }
            return total;
        }
        std::uint32_t mask = 0;
        for (int j : bundle) {
            require(j >= 0 && j < m_, "item index out of range");
            mask |= std::uint32_t{1} << j;
        }
        return table_[mask];
    }

    // marginal-sign queries; table variants are exhaustive over all subsets.
    bool is_good_for(int j) const {
        if (kind_ == ValuationKind::Additive) return item_value(j) >= 0;
        std::uint32_t bit = std::uint32_t{1} << j;
        for (std::uint32_t mask = 0; mask < table_.size(); ++mask)
            if (!(mask & bit) && table_[mask | bit] < table_[mask]) return false;
        return true;
    }

    // a chore needs every marginal <= 0 and at least one strictly negative;
    // an item whose marginals all vanish counts as a good, not a chore.
    bool is_chore_for(int j) const {
        if (kind_ == ValuationKind::Additive) return item_value(j) < 0;
        std::uint32_t bit = std::uint32_t{1} << j;
        bool strict = false;
        for (std::uint32_t mask = 0; mask < table_.size(); ++mask) {
            if (mask & bit) continue;
            if (table_[mask | bit] > table_[mask]) return false;
            if (table_[mask | bit] < table_[mask]) strict = true;
        }
        return strict;
    }

    bool monotone_non_increasing() const {
        if (kind_ == ValuationKind::Additive) {
            for (const auto& v : additive_)
                if (v > 0) return false;
            return true;
        }
        for (int j = 0; j < m_; ++j) {
            std::uint32_t bit = std::uint32_t{1} << j;
            for (std::uint32_t mask = 0; mask < table_.size(); ++mask)
                if (!(mask & bit) && table_[mask | bit] > table_[mask]) return false;
        }
        return true;
    }

    bool monotone_non_decreasing() const {
        if (kind_ == ValuationKind::Additive) {
            for (const auto& v : additive_)
                if (v < 0) return false;
            return true;
        }
        for (int j = 0; j < m_; ++j) {
            std::uint32_t bit = std::uint32_t{1} << j;
            for (std::uint32_t mask = 0; mask < table_.size(); ++mask)
                if (!(mask & bit) && table_[mask | bit] < table_[mask]) return false;
        }
        return true;
    }

    friend bool operator==(const Valuation& a, const Valuation& b) {
        return a.kind_ == b.kind_ && a.m_ == b.m_ && a.additive_ == b.additive_ &&
               a.table_ == b.table_;
    }

private:
    ValuationKind kind_ = ValuationKind::Additive;
    int m_ = 0;
    std::vector<Rational> additive_;
    std::vector<Rational> table_;
};

} // namespace fairdiv
