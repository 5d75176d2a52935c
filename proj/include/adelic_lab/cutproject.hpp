#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adelic_lab/adelic.hpp"
#include "adelic_lab/window.hpp"

namespace adelic_lab {

enum class GroupKind { SingleP, MultiP, Adelic };

/// The lattice Z[1/Q](u,t) = {(m/q)(u,t) : m in Z, q a product of primes in
/// Q} in G x R. Q is the group's prime set: {p} for G = Q_p, S for a finite
/// product, all primes for the finite adeles. Only these groups are
/// supported; they are the ones whose lattices all have this dilated form.
struct LatticeSpec {
    GroupKind kind;
    std::vector<Prime> group_primes; // empty for Adelic
    ValuationProfile u;              // entries >= 0
    Rational t;                      // nonzero

    LatticeSpec(GroupKind k, std::vector<Prime> primes, ValuationProfile dilation, Rational real_part)
        : kind(k), group_primes(std::move(primes)), u(std::move(dilation)), t(std::move(real_part)) {
        if (t.is_zero()) throw PreconditionError("lattice with t = 0");
        if (!u.all_nonnegative())
            throw PreconditionError("lattice dilation must have nonnegative entries");
        std::sort(group_primes.begin(), group_primes.end());
        group_primes.erase(std::unique(group_primes.begin(), group_primes.end()),
                           group_primes.end());
        for (Prime p : group_primes) require_prime(p);
        switch (kind) {
            case GroupKind::SingleP:
                if (group_primes.size() != 1)
                    throw PreconditionError("SingleP group needs exactly one prime");
                break;
            case GroupKind::MultiP:
                if (group_primes.empty())
                    throw PreconditionError("MultiP group needs a nonempty prime set");
                break;
            case GroupKind::Adelic:
                if (!group_primes.empty())
                    throw PreconditionError("Adelic group fixes Q = all primes");
                break;
        }
        if (kind != GroupKind::Adelic)
            for (const auto& [p, k] : u.entries())
                if (!allows_prime(p))
                    throw PreconditionError("dilation prime " + std::to_string(p) +
                                            " outside the group");
    }

    bool allows_prime(Prime p) const {
        if (kind == GroupKind::Adelic) return true;
        return std::binary_search(group_primes.begin(), group_primes.end(), p);
    }

    void validate_box(const AdelicBox& box) const {
        for (const auto& [p, e] : box.exponents.entries())
            if (!allows_prime(p))
                throw PreconditionError("box prime " + std::to_string(p) + " outside the group");
    }
};

/// covol = m(Z_G * u) * |t| = prod_p p^{-k_p} * |t|.
inline Rational covolume(const LatticeSpec& lat) {
    return adelic_norm(lat.u) * abs(lat.t);
}

/// Scalars s = m/q with the G-part s*u inside the box: s in rZ with
/// r = prod_{p in Q} p^{-(e_p + k_p)}.
inline Rational scalar_spacing(const LatticeSpec& lat, const AdelicBox& box) {
    lat.validate_box(box);
    Rational r(1);
    for (const auto& [p, e] : box.exponents.entries())
        r *= prime_power(p, -(e + lat.u.at(p)));
    for (const auto& [p, k] : lat.u.entries())
        if (box.exponents.at(p) == 0) r *= prime_power(p, -k);
    return r;
}

/// Counting oracle for the covolume formula: m(g_box) * 2T / |Γ ∩ (g_box x
/// [-T,T])|, relative error at most 2/count.
inline Rational covolume_by_counting(const LatticeSpec& lat, const AdelicBox& g_box,
                                     const Rational& T, Int min_points = 1000) {
    if (!(T > Rational(0))) throw PreconditionError("T must be positive");
    const Rational r = scalar_spacing(lat, g_box);
    const Int half = floor(T / (abs(lat.t) * r));
    const Int count = 2 * half + 1;
    if (count < min_points)
        throw PreconditionError("too few lattice points for the counting oracle: " +
                                count.str());
    return box_measure(g_box) * Rational(2) * T / Rational(count);
}

/// Rational-tagged cut-and-project points: all s in Z[1/Q] with s*u inside
/// g_box and s*t in W. Each point of the set is s*u as an adele; the tag s
/// is unique because the lattice projects injectively.
struct CapPoint {
    Rational tag;        // s = m/q
    Rational real_image; // s * t
};

struct CapQuery {
    LatticeSpec lattice;
    Window1D window;
    AdelicBox g_box;
    std::optional<Rational> base_g;  // rational tag of g0 when on the orbit
    std::optional<Rational> base_h;  // h0
};

inline std::vector<CapPoint> capset_points(const LatticeSpec& lat, const Window1D& w,
                                           const AdelicBox& g_box,
                                           std::int64_t cap = 5'000'000) {
    const Rational r = scalar_spacing(lat, g_box);
    std::vector<CapPoint> out;
    // s*t in W means s in W/t (order flips for negative t)
    const QuadExtReal tq{lat.t};
    Int total = 0;
    for (const auto& iv : w.intervals()) {
        QuadExtReal lo = iv.lo / tq;
        QuadExtReal hi = iv.hi / tq;
        if (lat.t.sign() < 0) std::swap(lo, hi);
        const Int mlo = ceil(lo / QuadExtReal(r));
        const Int mhi = floor(hi / QuadExtReal(r));
        if (mhi >= mlo) total += mhi - mlo + 1;
        if (total > cap) throw CapOverflow("capset enumeration exceeds cap");
        for (Int m = mlo; m <= mhi; ++m) {
            const Rational s = Rational(m) * r;
            out.push_back({s, s * lat.t});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const CapPoint& a, const CapPoint& b) { return a.tag < b.tag; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const CapPoint& a, const CapPoint& b) { return a.tag == b.tag; }),
              out.end());
    return out;
}

inline std::vector<CapPoint> capset_points(const CapQuery& q, std::int64_t cap = 5'000'000) {
    return capset_points(q.lattice, q.window, q.g_box, cap);
}

/// Closed-form |capset|, no enumeration.
inline Int capset_count(const LatticeSpec& lat, const Window1D& w, const AdelicBox& g_box) {
    const Rational r = scalar_spacing(lat, g_box);
    const QuadExtReal tq{lat.t};
    Int total = 0;
    for (const auto& iv : w.intervals()) {
        QuadExtReal lo = iv.lo / tq;
        QuadExtReal hi = iv.hi / tq;
        if (lat.t.sign() < 0) std::swap(lo, hi);
        const Int mlo = ceil(lo / QuadExtReal(r));
        const Int mhi = floor(hi / QuadExtReal(r));
        if (mhi >= mlo) total += mhi - mlo + 1;
    }
    return total;
}

/// Intensity covol^{-1} * m(W): expected points per unit Haar measure.
inline QuadExtReal intensity_value(const LatticeSpec& lat, const Window1D& w) {
    return window_measure(w) / QuadExtReal(covolume(lat));
}

/// covol^{-1} * m(W° - W°) and covol^{-1} * m(W - W). For closed interval
/// unions the interior difference has the same measure, so the pair
/// coincides; both are still reported.
inline std::pair<QuadExtReal, QuadExtReal> icovol_bounds(const LatticeSpec& lat,
                                                         const Window1D& w) {
    const QuadExtReal v = window_measure(window_difference(w)) / QuadExtReal(covolume(lat));
    return {v, v};
}

struct ReturnTimes {
    std::vector<CapPoint> points;
    bool shifted; // false when the basepoint had no rational tag: points are
                  // the unshifted valuation-level result
};

/// Return-time set of the basepoint (g0, h0): -proj_G(Γ ∩ (G x (h0 - W))) +
/// g0. Points are tagged rationals; a profile-only basepoint yields the
/// unshifted set.
inline ReturnTimes return_times(const CapQuery& query, std::int64_t cap = 5'000'000) {
    if (!query.base_h) throw PreconditionError("return_times requires a basepoint");
    const Window1D reflected = query.window.reflected_about(*query.base_h);
    auto pts = capset_points(query.lattice, reflected, query.g_box, cap);
    ReturnTimes out;
    out.shifted = query.base_g.has_value();
    const Rational g0 = query.base_g.value_or(Rational(0));
    for (auto& p : pts) {
        Rational tag = -p.tag + g0;
        out.points.push_back({tag, tag * query.lattice.t});
    }
    std::sort(out.points.begin(), out.points.end(),
              [](const CapPoint& a, const CapPoint& b) { return a.tag < b.tag; });
    return out;
}

/// Γ ∩ (V1 x W) = {0}: true iff no nonzero s in Z[1/Q] has s*u in V1 and
/// s*t in W. Decided exactly via the scalar lattice.
inline bool lattice_discreteness_check(const LatticeSpec& lat, const AdelicBox& v1,
                                       const Window1D& w) {
    if (!w.contains(QuadExtReal(Rational(0))))
        throw PreconditionError("discreteness window must contain 0");
    auto pts = capset_points(lat, w, v1);
    for (const auto& p : pts)
        if (!p.tag.is_zero()) return false;
    return true;
}

/// icovol/intensity = m(W-W)/m(W); >= 2 with equality iff W is one interval.
inline QuadExtReal doubling_certificate(const LatticeSpec& lat, const Window1D& w) {
    (void)lat; // the ratio is covolume-free
    return window_measure(window_difference(w)) / window_measure(w);
}

} // namespace adelic_lab
