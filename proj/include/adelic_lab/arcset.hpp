#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adelic_lab/prng.hpp"
#include "adelic_lab/rational.hpp"

namespace adelic_lab {

struct Arc {
    Rational lo;
    Rational hi; // 0 <= lo <= hi <= 1
    Rational length() const { return hi - lo; }
};

/// Finite union of closed arcs on R/Z with rational endpoints. Arcs crossing
/// 0 are split at 0 canonically; degenerate single-point arcs are dropped;
/// the full circle is the single arc [0,1). Measure and differences are
/// rotation invariant.
class ArcSet {
public:
    ArcSet() = default;

    /// Arcs given as [lo, hi] on the line; hi < lo means the arc wraps
    /// through 0, and hi - lo >= 1 means the full circle.
    static ArcSet from_raw(std::vector<std::pair<Rational, Rational>> raw) {
        std::vector<Arc> pieces;
        for (auto& [lo, hi] : raw) {
            Rational len = hi - lo;
            if (len.sign() < 0) len += Rational(1); // wrap notation
            if (len >= Rational(1)) return full_circle();
            if (len.is_zero()) continue;
            const Rational start = frac(lo);
            if (start + len <= Rational(1)) {
                pieces.push_back({start, start + len});
            } else {
                pieces.push_back({start, Rational(1)});
                pieces.push_back({Rational(0), start + len - Rational(1)});
            }
        }
        return ArcSet(std::move(pieces));
    }

    static ArcSet full_circle() {
        ArcSet c;
        c.arcs_.push_back({Rational(0), Rational(1)});
        return c;
    }

    explicit ArcSet(std::vector<Arc> arcs) : arcs_(std::move(arcs)) { normalize(); }

    const std::vector<Arc>& arcs() const { return arcs_; }
    bool empty() const { return arcs_.empty(); }
    bool is_full() const {
        return arcs_.size() == 1 && arcs_[0].lo.is_zero() && arcs_[0].hi == Rational(1);
    }

    Rational measure() const {
        Rational m(0);
        for (const auto& a : arcs_) m += a.length();
        return m;
    }

    bool contains(const Rational& x) const {
        const Rational t = frac(x);
        for (const auto& a : arcs_) {
            if (a.lo <= t && t <= a.hi) return true;
            if (a.hi == Rational(1) && t.is_zero()) return true;
        }
        return false;
    }

    bool subset_of(const ArcSet& other) const {
        // normalized arc unions have strictly positive gaps, so an arc is
        // covered exactly when its overlap with `other` has full measure
        for (const auto& a : arcs_) {
            Rational covered(0);
            for (const auto& b : other.arcs_) {
                const Rational lo = max(a.lo, b.lo);
                const Rational hi = min(a.hi, b.hi);
                if (lo < hi) covered += hi - lo;
            }
            if (covered != a.length()) return false;
        }
        return true;
    }

    ArcSet rotated(const Rational& t) const {
        std::vector<std::pair<Rational, Rational>> raw;
        for (const auto& a : arcs_) raw.push_back({a.lo + t, a.hi + t});
        return from_raw(std::move(raw));
    }

    /// Arcs with a trailing [x,1] piece rejoined through 0, as (start, length).
    std::vector<std::pair<Rational, Rational>> logical_arcs() const {
        std::vector<std::pair<Rational, Rational>> out;
        if (arcs_.empty()) return out;
        if (is_full()) {
            out.push_back({Rational(0), Rational(1)});
            return out;
        }
        std::size_t first = 0;
        std::size_t last = arcs_.size() - 1;
        const bool wraps = arcs_.size() >= 2 && arcs_[first].lo.is_zero() &&
                           arcs_[last].hi == Rational(1);
        if (wraps) {
            out.push_back({arcs_[last].lo, arcs_[last].length() + arcs_[first].length()});
            for (std::size_t i = 1; i < last; ++i)
                out.push_back({arcs_[i].lo, arcs_[i].length()});
        } else {
            for (const auto& a : arcs_) out.push_back({a.lo, a.length()});
        }
        std::sort(out.begin(), out.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        return out;
    }

    /// "a,b;c,d"
    std::string str() const {
        std::string s;
        for (const auto& a : arcs_) {
            if (!s.empty()) s += ";";
            s += a.lo.str() + "," + a.hi.str();
        }
        return s;
    }

    friend bool operator==(const ArcSet& x, const ArcSet& y) {
        if (x.arcs_.size() != y.arcs_.size()) return false;
        for (std::size_t i = 0; i < x.arcs_.size(); ++i)
            if (x.arcs_[i].lo != y.arcs_[i].lo || x.arcs_[i].hi != y.arcs_[i].hi) return false;
        return true;
    }
    friend bool operator!=(const ArcSet& x, const ArcSet& y) { return !(x == y); }

private:
    void normalize() {
        std::vector<Arc> in;
        for (auto& a : arcs_) {
            if (a.lo.sign() < 0 || a.hi > Rational(1) || a.lo > a.hi)
                throw PreconditionError("arc outside [0,1]: " + a.lo.str() + "," + a.hi.str());
            if (a.lo < a.hi) in.push_back(a);
        }
        std::sort(in.begin(), in.end(), [](const Arc& x, const Arc& y) { return x.lo < y.lo; });
        arcs_.clear();
        for (auto& a : in) {
            if (!arcs_.empty() && a.lo <= arcs_.back().hi) {
                if (a.hi > arcs_.back().hi) arcs_.back().hi = a.hi;
            } else {
                arcs_.push_back(a);
            }
        }
        if (measure() >= Rational(1)) {
            arcs_.clear();
            arcs_.push_back({Rational(0), Rational(1)});
        }
    }

    std::vector<Arc> arcs_;
};

/// C - C on the circle: union of [a_i - b_j, b_i - a_j] mod 1; the full
/// circle as soon as the union reaches measure 1.
inline ArcSet arc_difference(const ArcSet& c) {
    if (c.empty()) return ArcSet();
    if (c.is_full()) return ArcSet::full_circle();
    std::vector<std::pair<Rational, Rational>> raw;
    const auto& arcs = c.arcs();
    for (const auto& a : arcs)
        for (const auto& b : arcs) {
            if (a.length() + b.length() >= Rational(1)) return ArcSet::full_circle();
            raw.push_back({a.lo - b.hi, b.length() + a.length() + (a.lo - b.hi)});
        }
    return ArcSet::from_raw(std::move(raw));
}

struct KneserCheck {
    Rational diff_measure;
    Rational bound; // 2 m(C)
    bool holds;
};

/// m(C - C) >= 2 m(C) for 0 < m(C) <= 1/2; `holds` records the verdict.
inline KneserCheck kneser_check(const ArcSet& c) {
    const Rational m = c.measure();
    if (!(m.sign() > 0) || m > Rational(Int(1), Int(2)))
        throw PreconditionError("kneser_check needs 0 < m(C) <= 1/2");
    const Rational md = arc_difference(c).measure();
    const Rational bound = Rational(2) * m;
    return {md, bound, md >= bound};
}

struct KneserEquality {
    std::int64_t order;    // n with C = chi^{-1}(I), chi(z) = z^n
    Rational base_start;   // left endpoint of I
    Rational base_length;  // m(I) = n * m(C)
};

/// Some(n, I) iff C is exactly n equal-length arcs with consecutive starts
/// 1/n apart: the preimage of the arc I under z -> z^n. Some always implies
/// equality in the doubling bound. Below saturation (m(C) < 1/2) the
/// converse holds too; at m(C) = 1/2 the difference set is the full circle
/// for every C, equality is automatic, and only preimage sets classify.
inline std::optional<KneserEquality> kneser_equality_classify(const ArcSet& c) {
    const Rational m = c.measure();
    if (!(m.sign() > 0) || m > Rational(Int(1), Int(2)))
        throw PreconditionError("kneser_equality_classify needs 0 < m(C) <= 1/2");
    const auto logical = c.logical_arcs();
    const std::int64_t n = static_cast<std::int64_t>(logical.size());
    const Rational len = logical.front().second;
    for (const auto& [start, l] : logical)
        if (l != len) return std::nullopt;
    const Rational gap{Int(1), Int(n)};
    for (std::int64_t i = 0; i < n; ++i) {
        const Rational next = logical[static_cast<std::size_t>((i + 1) % n)].first;
        const Rational cur = logical[static_cast<std::size_t>(i)].first;
        if (frac(next - cur) != frac(gap)) return std::nullopt;
    }
    KneserEquality eq;
    eq.order = n;
    eq.base_start = frac(logical.front().first * Rational(n));
    eq.base_length = len * Rational(n);
    return eq;
}

/// |D - D| on Z_N for D = {j : [j/N, (j+1)/N) subset of C}; the discretized
/// difference count for the cross-check against the exact m(C - C).
inline Int discretized_difference_count(const ArcSet& c, std::int64_t n_cells) {
    const std::size_t words = static_cast<std::size_t>((n_cells + 63) / 64);
    std::vector<std::uint64_t> d(words, 0);
    // mark cells via cell-index ranges per arc: [j/N, (j+1)/N) subset [lo, hi]
    bool any = false;
    for (const auto& a : c.arcs()) {
        const Int jlo = ceil(a.lo * Rational(Int(n_cells)));
        const Int jhi = floor(a.hi * Rational(Int(n_cells))) - 1;
        for (Int j = jlo; j <= jhi; ++j) {
            const std::int64_t jj = j.convert_to<std::int64_t>();
            if (jj < 0 || jj >= n_cells) continue;
            d[static_cast<std::size_t>(jj / 64)] |= (1ULL << (jj % 64));
            any = true;
        }
    }
    if (!any) return 0;
    // doubled copy makes circular shifts plain reads
    std::vector<std::uint64_t> d2(2 * words, 0);
    for (std::size_t w = 0; w < words; ++w) d2[w] = d[w];
    for (std::int64_t j = 0; j < n_cells; ++j) {
        const std::int64_t k = n_cells + j;
        if ((d[static_cast<std::size_t>(j / 64)] >> (j % 64)) & 1ULL)
            d2[static_cast<std::size_t>(k / 64)] |= (1ULL << (k % 64));
    }
    auto word_at = [&](std::int64_t bit) {
        // 64 bits of d2 starting at `bit`
        const std::size_t w = static_cast<std::size_t>(bit / 64);
        const int off = static_cast<int>(bit % 64);
        std::uint64_t v = d2[w] >> off;
        if (off && w + 1 < d2.size()) v |= d2[w + 1] << (64 - off);
        return v;
    };
    Int count = 0;
    for (std::int64_t shift = 0; shift < n_cells; ++shift) {
        bool hit = false;
        for (std::size_t w = 0; w < words && !hit; ++w) {
            std::uint64_t mask = d[w];
            if (w == words - 1 && (n_cells % 64)) mask &= (1ULL << (n_cells % 64)) - 1;
            if (mask & word_at(static_cast<std::int64_t>(w) * 64 + shift)) hit = true;
        }
        if (hit) ++count;
    }
    return count;
}

/// Random arc set with at most max_arcs arcs, endpoint denominators drawn
/// from den_pool, measure strictly inside (0, 1/2). The saturated boundary
/// m(C) = 1/2 is excluded: there every difference set is the full circle
/// and the Kneser equality case is structureless.
inline ArcSet random_arcset(Prng& rng, int max_arcs, const std::vector<std::int64_t>& den_pool) {
    for (;;) {
        const int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_arcs)));
        std::vector<Rational> cuts;
        const std::int64_t den =
            den_pool[rng.below(den_pool.size())];
        for (int i = 0; i < 2 * n; ++i)
            cuts.push_back(Rational(Int(static_cast<std::int64_t>(rng.below(
                               static_cast<std::uint64_t>(den)))),
                           Int(den)));
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        if (cuts.size() < 2) continue;
        std::vector<Arc> arcs;
        for (std::size_t i = 0; i + 1 < cuts.size(); i += 2) arcs.push_back({cuts[i], cuts[i + 1]});
        ArcSet c(std::move(arcs));
        if (c.measure().sign() > 0 && c.measure() < Rational(Int(1), Int(2))) return c;
    }
}

/// Random character preimage: n arcs of equal length spaced 1/n, an exact
/// Kneser equality witness.
inline ArcSet random_equality_arcset(Prng& rng, int max_order,
                                     const std::vector<std::int64_t>& den_pool) {
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng.below(
                                   static_cast<std::uint64_t>(max_order)));
    const std::int64_t den = den_pool[rng.below(den_pool.size())];
    // base length in (0, 1/(2n)] with denominator den*n achievable
    const std::int64_t steps = den / (2) + 1;
    Rational len{Int(1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(steps)))),
                 Int(den)};
    len = len / Rational(Int(2 * n)); // <= 1/(2n) roughly
    if (len.is_zero()) len = Rational(Int(1), Int(2 * n * den));
    Rational start{Int(static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(den)))),
                   Int(den)};
    start = start / Rational(Int(n));
    std::vector<std::pair<Rational, Rational>> raw;
    for (std::int64_t i = 0; i < n; ++i) {
        Rational s = start + Rational(Int(i), Int(n));
        raw.push_back({s, s + len});
    }
    return ArcSet::from_raw(std::move(raw));
}

} // namespace adelic_lab
