#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "adelic_lab/adelic.hpp"
#include "adelic_lab/window.hpp"

namespace adelic_lab {

/// The point set P = u * F(W + tau) in the finite adeles: dilated,
/// translated generalized Farey fractions. Points are tagged by the rational
/// q with P ∋ u * iota(q).
struct FareySpec {
    ValuationProfile dilation; // u, entries >= 0
    Window1D window;           // W
    Rational translate{0};     // tau

    FareySpec(ValuationProfile u, Window1D w, Rational tau = Rational(0))
        : dilation(std::move(u)), window(std::move(w)), translate(std::move(tau)) {
        if (!dilation.all_nonnegative())
            throw PreconditionError("dilation profile must have nonnegative entries");
    }
};

struct RationalPointSet {
    std::vector<Rational> points; // sorted, duplicate-free

    std::size_t size() const { return points.size(); }
    bool contains(const Rational& q) const {
        return std::binary_search(points.begin(), points.end(), q);
    }
};

/// The unique r > 0 with {q in Q : v_p(q) >= -e_p - k_p for all p} = rZ,
/// namely r = prod_p p^{-(e_p + k_p)} over the joint support.
inline Rational lattice_spacing(const FareySpec& spec, const AdelicBox& box) {
    Rational r(1);
    for (const auto& [p, e] : box.exponents.entries())
        r *= prime_power(p, -(e + spec.dilation.at(p)));
    for (const auto& [p, k] : spec.dilation.entries())
        if (box.exponents.at(p) == 0) r *= prime_power(p, -k);
    return r;
}

namespace detail {

/// Integer range [m_lo, m_hi] of m with m*r in [lo, hi]; empty when m_lo > m_hi.
inline std::pair<Int, Int> grid_range(const QuadExtReal& lo, const QuadExtReal& hi,
                                      const Rational& r) {
    const QuadExtReal rq{r};
    return {ceil(lo / rq), floor(hi / rq)};
}

inline bool window_is_rational(const Window1D& w) {
    for (const auto& iv : w.intervals())
        if (!iv.lo.is_rational() || !iv.hi.is_rational()) return false;
    return true;
}

} // namespace detail

/// Closed-form count of rZ ∩ (W + tau), r = lattice_spacing.
inline Int count_points(const FareySpec& spec, const AdelicBox& box) {
    const Rational r = lattice_spacing(spec, box);
    const QuadExtReal tau{spec.translate};
    Int total = 0;
    for (const auto& iv : spec.window.intervals()) {
        auto [mlo, mhi] = detail::grid_range(iv.lo + tau, iv.hi + tau, r);
        if (mhi >= mlo) total += mhi - mlo + 1;
    }
    return total;
}

/// Exactly rZ ∩ (W + tau), enumerated.
inline RationalPointSet farey_points(const FareySpec& spec, const AdelicBox& box,
                                     std::int64_t cap = 5'000'000) {
    if (count_points(spec, box) > cap)
        throw CapOverflow("farey_points: count exceeds cap " + std::to_string(cap));
    const Rational r = lattice_spacing(spec, box);
    const QuadExtReal tau{spec.translate};
    RationalPointSet out;
    for (const auto& iv : spec.window.intervals()) {
        auto [mlo, mhi] = detail::grid_range(iv.lo + tau, iv.hi + tau, r);
        for (Int m = mlo; m <= mhi; ++m) out.points.push_back(Rational(m) * r);
    }
    // intervals are sorted and disjoint, so points arrive sorted and unique
    return out;
}

namespace detail {

/// Difference-set candidate scan shared by difference_points and the
/// doubling reports. Enumerates d in r_q Z inside W - W and keeps d iff some
/// interval pair (i, j) of W + tau realizes d as q1 - q2 with q1, q2 in
/// r_g Z, the grid of the step-enlarged generating box.
template <typename Sink>
void scan_difference_candidates(const FareySpec& spec, const AdelicBox& box, int step,
                                std::int64_t cap, Sink&& sink) {
    if (step < 0) throw PreconditionError("negative generating-box step");
    AdelicBox gen = box;
    for (const auto& [p, e] : box.exponents.entries()) gen.exponents.set(p, e + step);
    const Rational rq = lattice_spacing(spec, box);
    const Rational rg = lattice_spacing(spec, gen);

    const Window1D diff = window_difference(spec.window);
    const QuadExtReal tau{spec.translate};
    const auto& ivs = spec.window.intervals();

    // candidate volume guard
    {
        Int est = 0;
        for (const auto& iv : diff.intervals()) {
            auto [mlo, mhi] = grid_range(iv.lo, iv.hi, rq);
            if (mhi >= mlo) est += mhi - mlo + 1;
        }
        if (est > cap)
            throw CapOverflow("difference scan: candidate count exceeds cap " +
                              std::to_string(cap));
    }

    if (window_is_rational(spec.window)) {
        // integer fast path: scale all bounds to a common denominator
        std::vector<Rational> lows, highs;
        for (const auto& iv : spec.window.intervals()) {
            lows.push_back(iv.lo.rational_part() + spec.translate);
            highs.push_back(iv.hi.rational_part() + spec.translate);
        }
        Int scale = 1;
        auto fold = [&scale](const Rational& q) {
            scale *= q.den() / boost::multiprecision::gcd(scale, q.den());
        };
        fold(rq);
        fold(rg);
        for (const auto& q : lows) fold(q);
        for (const auto& q : highs) fold(q);
        auto scaled = [&scale](const Rational& q) { return q.num() * (scale / q.den()); };

        std::vector<std::array<Int, 4>> bounds; // {alo, ahi, blo, bhi}
        bounds.reserve(lows.size() * lows.size());
        for (std::size_t i = 0; i < lows.size(); ++i)
            for (std::size_t j = 0; j < lows.size(); ++j)
                bounds.push_back(
                    {scaled(lows[i]), scaled(highs[i]), scaled(lows[j]), scaled(highs[j])});
        const Int rqs = scaled(rq);
        const Int rgs = scaled(rg);
        for (const auto& iv : diff.intervals()) {
            auto [mlo, mhi] = grid_range(iv.lo, iv.hi, rq);
            for (Int m = mlo; m <= mhi; ++m) {
                const Int d = m * rqs;
                bool ok = false;
                for (const auto& pr : bounds) {
                    // q2-window for this pair: [max(blo, alo - d), min(bhi, ahi - d)]
                    const Int alo_d = pr[0] - d;
                    const Int ahi_d = pr[1] - d;
                    const Int wlo = pr[2] > alo_d ? pr[2] : alo_d;
                    const Int whi = pr[3] < ahi_d ? pr[3] : ahi_d;
                    if (wlo > whi) continue;
                    if (floor_div(whi, rgs) >= ceil_div(wlo, rgs)) {
                        ok = true;
                        break;
                    }
                }
                if (ok) sink(Rational(m) * rq);
            }
        }
        return;
    }

    // generic exact path for windows with irrational endpoints
    struct PairBounds {
        QuadExtReal alo, ahi, blo, bhi;
    };
    std::vector<PairBounds> bounds;
    for (const auto& a : ivs)
        for (const auto& b : ivs)
            bounds.push_back({a.lo + tau, a.hi + tau, b.lo + tau, b.hi + tau});
    for (const auto& iv : diff.intervals()) {
        auto [mlo, mhi] = grid_range(iv.lo, iv.hi, rq);
        for (Int m = mlo; m <= mhi; ++m) {
            const QuadExtReal d{Rational(m) * rq};
            bool ok = false;
            for (const auto& pr : bounds) {
                const QuadExtReal wlo = max(pr.blo, pr.alo - d);
                const QuadExtReal whi = min(pr.bhi, pr.ahi - d);
                if (wlo > whi) continue;
                auto [qlo, qhi] = grid_range(wlo, whi, rg);
                if (qhi >= qlo) {
                    ok = true;
                    break;
                }
            }
            if (ok) sink(Rational(m) * rq);
        }
    }
}

} // namespace detail

/// {q1 - q2 : q1, q2 in P ∩ F'} ∩ F where F' is the query box enlarged by
/// `step` on its support. Equals the literal pairwise difference set of the
/// enumerated points.
inline RationalPointSet difference_points(const FareySpec& spec, const AdelicBox& box,
                                          int step = 1, std::int64_t cap = 5'000'000) {
    RationalPointSet out;
    detail::scan_difference_candidates(spec, box, step, cap,
                                       [&](const Rational& d) { out.points.push_back(d); });
    return out;
}

inline Int count_difference_points(const FareySpec& spec, const AdelicBox& box, int step = 1,
                                   std::int64_t cap = 50'000'000) {
    Int n = 0;
    detail::scan_difference_candidates(spec, box, step, cap, [&](const Rational&) { ++n; });
    return n;
}

/// Elements of u*F(W-W) \ (u*F(W) - u*F(W)) with denominator <= cap.
/// A rational d in W - W fails to be a difference of two rationals of W
/// exactly when every section W ∩ (W - d) is a single irrational point, so
/// only endpoints of pairwise difference intervals can qualify.
inline RationalPointSet exceptional_points(const FareySpec& spec, std::int64_t cap) {
    if (cap < 1) throw PreconditionError("cap must be >= 1");
    const auto& ivs = spec.window.intervals();
    std::vector<Rational> candidates;
    for (const auto& a : ivs)
        for (const auto& b : ivs) {
            for (const QuadExtReal& end : {a.lo - b.hi, a.hi - b.lo}) {
                if (!end.is_rational()) continue;
                const Rational d = end.rational_part();
                if (d.den() <= cap) candidates.push_back(d);
            }
        }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    RationalPointSet out;
    for (const Rational& d : candidates) {
        const QuadExtReal dd{d};
        bool realizable = false;
        for (const auto& a : ivs) {
            for (const auto& b : ivs) {
                const QuadExtReal wlo = max(b.lo, a.lo - dd);
                const QuadExtReal whi = min(b.hi, a.hi - dd);
                const int cmp = compare_quad(wlo, whi);
                if (cmp > 0) continue;
                if (cmp < 0 || wlo.is_rational()) {
                    realizable = true;
                    break;
                }
            }
            if (realizable) break;
        }
        if (!realizable) out.points.push_back(d);
    }
    return out;
}

} // namespace adelic_lab
