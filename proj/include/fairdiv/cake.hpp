#pragma once

#include <algorithm>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace fairdiv {

// Closed subinterval of the unit cake. Zero-length intervals carry no value
// and are dropped by normalization.
struct Interval {
    Rational lo, hi;
    Rational length() const { return hi - lo; }
    bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
};

// A finite union of intervals, kept in canonical form: sorted by left
// endpoint, pairwise disjoint interiors, touching intervals merged,
// zero-length pieces removed.
struct CakePiece {
    std::vector<Interval> intervals;

    static CakePiece whole() { return CakePiece{{Interval{Rational(0), Rational(1)}}}; }
    static CakePiece interval(Rational lo, Rational hi) {
        CakePiece p{{Interval{std::move(lo), std::move(hi)}}};
        p.normalize();
        return p;
    }

    bool empty() const { return intervals.empty(); }

    void normalize() {
        for (const auto& iv : intervals)
            require(iv.lo <= iv.hi && iv.lo >= 0 && iv.hi <= 1,
                    "cake interval must satisfy 0 <= lo <= hi <= 1");
        std::sort(intervals.begin(), intervals.end(),
                  [](const Interval& a, const Interval& b) {
                      return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
                  });
        std::vector<Interval> out;
        for (const auto& iv : intervals) {
            if (iv.lo == iv.hi) continue;
            if (!out.empty()) {
                require(iv.lo >= out.back().hi, "cake piece has overlapping intervals");
                if (iv.lo == out.back().hi) {
                    out.back().hi = iv.hi;
                    continue;
                }
            }
            out.push_back(iv);
        }
        intervals = std::move(out);
    }

    void unite(const CakePiece& other) {
        intervals.insert(intervals.end(), other.intervals.begin(), other.intervals.end());
        normalize();
    }

    bool operator==(const CakePiece& o) const { return intervals == o.intervals; }
};

// Step-function density on [0,1]: levels[k] holds on [breakpoints[k],
// breakpoints[k+1]]. Signs are unconstrained here; the mixed instance decides
// whether a family is cake (>= 0) or bad cake (<= 0).
class PiecewiseConstantDensity {
public:
    PiecewiseConstantDensity(std::vector<Rational> breakpoints, std::vector<Rational> levels)
        : breakpoints_(std::move(breakpoints)), levels_(std::move(levels)) {
        require(breakpoints_.size() >= 2, "density needs at least two breakpoints");
        require(levels_.size() + 1 == breakpoints_.size(),
                "density needs one level per breakpoint gap");
        require(breakpoints_.front() == 0 && breakpoints_.back() == 1,
                "density must cover exactly [0,1]");
        for (std::size_t k = 0; k + 1 < breakpoints_.size(); ++k)
            require(breakpoints_[k] < breakpoints_[k + 1],
                    "density breakpoints must be strictly increasing");
    }

    static PiecewiseConstantDensity uniform(Rational level) {
        return PiecewiseConstantDensity({Rational(0), Rational(1)}, {std::move(level)});
    }

    const std::vector<Rational>& breakpoints() const { return breakpoints_; }
    const std::vector<Rational>& levels() const { return levels_; }

    bool non_negative() const {
        return std::all_of(levels_.begin(), levels_.end(),
                           [](const Rational& l) { return l >= 0; });
    }
    bool non_positive() const {
        return std::all_of(levels_.begin(), levels_.end(),
                           [](const Rational& l) { return l <= 0; });
    }

    Rational value(const Interval& iv) const {
        Rational total = 0;
        for (std::size_t k = 0; k < levels_.size(); ++k) {
            Rational lo = std::max(iv.lo, breakpoints_[k]);
            Rational hi = std::min(iv.hi, breakpoints_[k + 1]);
            if (lo < hi) total += levels_[k] * (hi - lo);
        }
        return total;
    }

    Rational value(const CakePiece& piece) const {
        Rational total = 0;
        for (const auto& iv : piece.intervals) total += value(iv);
        return total;
    }

    friend bool operator==(const PiecewiseConstantDensity& a,
                           const PiecewiseConstantDensity& b) {
        return a.breakpoints_ == b.breakpoints_ && a.levels_ == b.levels_;
    }

private:
    std::vector<Rational> breakpoints_;
    std::vector<Rational> levels_;
};

} // namespace fairdiv
