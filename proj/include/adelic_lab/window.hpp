#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "adelic_lab/quadext.hpp"

namespace adelic_lab {

struct Interval {
    QuadExtReal lo;
    QuadExtReal hi;

    QuadExtReal length() const { return hi - lo; }
    bool contains(const QuadExtReal& x) const { return lo <= x && x <= hi; }
};

/// Finite union of closed intervals on the line, normalized: sorted,
/// pairwise disjoint, touching intervals merged, total measure positive.
/// Finite closed-interval unions are Jordan measurable with Jordan
/// measurable difference sets, which is what every downstream formula needs.
class Window1D {
public:
    explicit Window1D(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
        normalize();
    }
    Window1D(QuadExtReal lo, QuadExtReal hi) : Window1D(std::vector<Interval>{{std::move(lo), std::move(hi)}}) {}

    const std::vector<Interval>& intervals() const { return intervals_; }
    std::size_t interval_count() const { return intervals_.size(); }

    QuadExtReal measure() const {
        QuadExtReal m(Rational(0));
        for (const auto& iv : intervals_) m = m + iv.length();
        return m;
    }

    const QuadExtReal& inf() const { return intervals_.front().lo; }
    const QuadExtReal& sup() const { return intervals_.back().hi; }

    bool contains(const QuadExtReal& x) const {
        for (const auto& iv : intervals_)
            if (iv.contains(x)) return true;
        return false;
    }

    Window1D translated(const Rational& tau) const {
        std::vector<Interval> out;
        out.reserve(intervals_.size());
        const QuadExtReal t{tau};
        for (const auto& iv : intervals_) out.push_back({iv.lo + t, iv.hi + t});
        return Window1D(std::move(out));
    }

    /// {c - x : x in W} for a constant c.
    Window1D reflected_about(const Rational& c) const {
        std::vector<Interval> out;
        const QuadExtReal cc{c};
        for (auto it = intervals_.rbegin(); it != intervals_.rend(); ++it)
            out.push_back({cc - it->hi, cc - it->lo});
        return Window1D(std::move(out));
    }

    friend bool operator==(const Window1D& x, const Window1D& y) {
        if (x.intervals_.size() != y.intervals_.size()) return false;
        for (std::size_t i = 0; i < x.intervals_.size(); ++i)
            if (x.intervals_[i].lo != y.intervals_[i].lo || x.intervals_[i].hi != y.intervals_[i].hi)
                return false;
        return true;
    }
    friend bool operator!=(const Window1D& x, const Window1D& y) { return !(x == y); }

    /// "[a,b];[c,d]" with QuadExtReal endpoint syntax.
    std::string str(bool ascii = false) const {
        std::string s;
        for (const auto& iv : intervals_) {
            if (!s.empty()) s += ";";
            s += "[" + iv.lo.str(ascii) + "," + iv.hi.str(ascii) + "]";
        }
        return s;
    }

private:
    void normalize() {
        if (intervals_.empty()) throw PreconditionError("empty window");
        for (const auto& iv : intervals_)
            if (iv.lo > iv.hi)
                throw PreconditionError("interval with lo > hi: [" + iv.lo.str(true) + "," +
                                        iv.hi.str(true) + "]");
        std::sort(intervals_.begin(), intervals_.end(),
                  [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
        std::vector<Interval> merged;
        merged.push_back(intervals_.front());
        for (std::size_t i = 1; i < intervals_.size(); ++i) {
            if (intervals_[i].lo <= merged.back().hi) {
                if (intervals_[i].hi > merged.back().hi) merged.back().hi = intervals_[i].hi;
            } else {
                merged.push_back(intervals_[i]);
            }
        }
        intervals_ = std::move(merged);
        if (!(measure().sign() > 0)) throw PreconditionError("zero-measure window");
    }

    std::vector<Interval> intervals_;
};

/// Minkowski difference set W - W as a normalized window.
inline Window1D window_difference(const Window1D& w) {
    std::vector<Interval> out;
    const auto& ivs = w.intervals();
    out.reserve(ivs.size() * ivs.size());
    for (const auto& a : ivs)
        for (const auto& b : ivs) out.push_back({a.lo - b.hi, a.hi - b.lo});
    return Window1D(std::move(out));
}

inline QuadExtReal window_measure(const Window1D& w) { return w.measure(); }

/// W + (-delta, delta) with delta = eps/(4 * #intervals), returned closed.
/// The excess m(W^eps - W^eps) - m(W - W) is at most
/// 4*delta*#intervals(W - W).
inline Window1D window_thicken(const Window1D& w, const Rational& eps) {
    if (!(eps > Rational(0))) throw PreconditionError("thickening requires eps > 0");
    const Rational delta = eps / Rational(Int(4 * static_cast<std::int64_t>(w.interval_count())));
    std::vector<Interval> out;
    const QuadExtReal d{delta};
    for (const auto& iv : w.intervals()) out.push_back({iv.lo - d, iv.hi + d});
    return Window1D(std::move(out));
}

} // namespace adelic_lab
