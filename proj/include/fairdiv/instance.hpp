#pragma once

#include <optional>
#include <vector>

#include "errors.hpp"
#include "valuation.hpp"

namespace fairdiv {

// n agents, m indivisible items, one valuation per agent. The per-agent
// good/chore classification is derived once at construction: an agent gets a
// classification only if every item has single-signed marginals for her.
class IndivisibleInstance {
public:
    explicit IndivisibleInstance(std::vector<Valuation> valuations)
        : vals_(std::move(valuations)) {
        require(!vals_.empty(), "instance needs at least one agent");
        n_ = static_cast<int>(vals_.size());
        m_ = vals_[0].items();
        for (const auto& v : vals_)
            require(v.items() == m_, "all agents must value the same item set");
        classification_.resize(n_);
        for (int i = 0; i < n_; ++i) {
            std::vector<ItemClass> cls(m_);
            bool ok = true;
            for (int j = 0; j < m_ && ok; ++j) {
                if (vals_[i].is_good_for(j)) cls[j] = ItemClass::Good;
                else if (vals_[i].is_chore_for(j)) cls[j] = ItemClass::Chore;
                else ok = false;
            }
            if (ok) classification_[i] = std::move(cls);
        }
    }

    int agents() const { return n_; }
    int items() const { return m_; }
    const Valuation& valuation(int i) const {
        require(i >= 0 && i < n_, "agent index out of range");
        return vals_[i];
    }

    Rational value(int agent, const std::vector<int>& bundle) const {
        return valuation(agent).value(bundle);
    }

    const std::optional<std::vector<ItemClass>>& classification(int agent) const {
        require(agent >= 0 && agent < n_, "agent index out of range");
        return classification_[agent];
    }

    bool doubly_monotone() const {
        for (const auto& c : classification_)
            if (!c) return false;
        return true;
    }

    bool monotone_non_increasing() const {
        for (const auto& v : vals_)
            if (!v.monotone_non_increasing()) return false;
        return true;
    }

    bool additive() const {
        for (const auto& v : vals_)
            if (v.kind() != ValuationKind::Additive) return false;
        return true;
    }

    std::vector<int> goods_of(int agent) const {
        const auto& cls = classification(agent);
        require(cls.has_value(), "agent has no good/chore classification");
        std::vector<int> out;
        for (int j = 0; j < m_; ++j)
            if ((*cls)[j] == ItemClass::Good) out.push_back(j);
        return out;
    }

    std::vector<int> chores_of(int agent) const {
        const auto& cls = classification(agent);
        require(cls.has_value(), "agent has no good/chore classification");
        std::vector<int> out;
        for (int j = 0; j < m_; ++j)
            if ((*cls)[j] == ItemClass::Chore) out.push_back(j);
        return out;
    }

    friend bool operator==(const IndivisibleInstance& a, const IndivisibleInstance& b) {
        return a.vals_ == b.vals_;
    }

private:
    int n_ = 0;
    int m_ = 0;
    std::vector<Valuation> vals_;
    std::vector<std::optional<std::vector<ItemClass>>> classification_;
};

// Appends zero-valued virtual items until m is a multiple of n. Used by the
// picking-sequence algorithms; virtual items are stripped from final outputs.
// Only meaningful for additive valuations (a zero column changes nothing).
inline IndivisibleInstance pad_to_multiple(const IndivisibleInstance& inst) {
    require(inst.additive(), "padding requires additive valuations");
    int n = inst.agents(), m = inst.items();
    int padded = (m % n == 0) ? m : m + (n - m % n);
    std::vector<Valuation> vals;
    vals.reserve(n);
    for (int i = 0; i < n; ++i) {
        auto values = inst.valuation(i).additive_values();
        values.resize(padded, Rational(0));
        vals.push_back(Valuation::additive(std::move(values)));
    }
    return IndivisibleInstance(std::move(vals));
}

} // namespace fairdiv
