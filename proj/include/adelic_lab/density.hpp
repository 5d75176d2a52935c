#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "adelic_lab/farey.hpp"

namespace adelic_lab {

/// Følner box schedule F_n: exponent e_p(n) = max(0, n - delay_p) per listed
/// prime. A prime with delay d enters the boxes at n = d + 1, so a growing
/// delay sequence realizes a growing prime cutoff P(n).
///
/// The schedules here compute d_F along a user-chosen sequence. The upper
/// Banach density d* itself is a supremum over all strong Følner sequences
/// and is never optimized; the closed forms from the density formulas serve
/// as targets instead. This is the central scope restriction of the module.
class FolnerSchedule {
public:
    FolnerSchedule(std::vector<std::pair<Prime, int>> primes_delays)
        : entries_(std::move(primes_delays)) {
        for (auto& [p, d] : entries_) {
            require_prime(p);
            if (d < 0) throw PreconditionError("negative schedule delay");
        }
        std::sort(entries_.begin(), entries_.end());
    }

    /// Primes 2, 3, 5 with no delay: measures grow as 30^n.
    static FolnerSchedule standard() { return FolnerSchedule({{2, 0}, {3, 0}, {5, 0}}); }

    /// All primes up to the cutoff (default 97), the k-th prime entering at
    /// step k+1: the prime cutoff P(n) grows with n and the boxes exhaust
    /// every profile supported below the cutoff.
    static FolnerSchedule full(Prime cutoff = 97) {
        std::vector<std::pair<Prime, int>> v;
        int idx = 0;
        for (Prime p = 2; p <= cutoff; ++p)
            if (is_prime(p)) v.push_back({p, idx++});
        return FolnerSchedule(std::move(v));
    }

    AdelicBox box_at(int n) const {
        if (n < 1) throw PreconditionError("schedule index must be >= 1");
        ValuationProfile e;
        for (const auto& [p, d] : entries_) {
            std::int64_t exp = n - d;
            if (exp > 0) e.set(p, exp);
        }
        return AdelicBox{e};
    }

    const std::vector<std::pair<Prime, int>>& entries() const { return entries_; }

    std::string str() const {
        std::string s;
        for (const auto& [p, d] : entries_) {
            if (!s.empty()) s += ",";
            s += std::to_string(p);
            if (d > 0) s += "+" + std::to_string(d);
        }
        return s;
    }

private:
    std::vector<std::pair<Prime, int>> entries_;
};

struct DensityRow {
    int n;
    Int count;
    Rational measure;
    Rational ratio; // count / measure, exact
    Rational bound; // a-posteriori |ratio - target| bound
};

struct DensityReport {
    std::vector<DensityRow> rows;
    QuadExtReal target; // ||u||^{-1} m(W) for the generating spec
};

/// Exact density table of P = u*F(W+tau) along the schedule. Counts use the
/// closed form; enumeration is available through farey_points separately.
/// Every row satisfies |ratio - target| <= bound with
/// bound = (#intervals + 1)/measure.
inline DensityReport density_estimate(const FareySpec& spec, const FolnerSchedule& schedule,
                                      int n_max) {
    if (n_max < 1) throw PreconditionError("n_max must be >= 1");
    DensityReport rep;
    rep.target = window_measure(spec.window) / QuadExtReal(adelic_norm(spec.dilation));
    const Rational slack{Int(static_cast<std::int64_t>(spec.window.interval_count()) + 1)};
    for (int n = 1; n <= n_max; ++n) {
        const AdelicBox box = schedule.box_at(n);
        DensityRow row;
        row.n = n;
        row.count = count_points(spec, box);
        row.measure = box_measure(box);
        row.ratio = Rational(row.count) / row.measure;
        row.bound = slack / row.measure;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

struct DoublingReport {
    DensityReport base; // P
    DensityReport diff; // P - P
    std::vector<Rational> ratio;       // d_n(P-P)/d_n(P) per row, 0 when undefined
    std::vector<Rational> ratio_bound; // certified |ratio - target_ratio| bound
    QuadExtReal target_ratio;          // m(W-W)/m(W)
};

/// Paired density tables for P and P - P. Difference counts come from the
/// step-enlarged generating box scan; their certified slack constant is
/// #intervals(W-W) + 4 * #intervals(W)^2.
inline DoublingReport doubling_report(const FareySpec& spec, const FolnerSchedule& schedule,
                                      int n_max, int step = 1,
                                      std::int64_t cap = 50'000'000) {
    DoublingReport rep;
    rep.base = density_estimate(spec, schedule, n_max);
    const Window1D dwin = window_difference(spec.window);
    rep.diff.target = window_measure(dwin) / QuadExtReal(adelic_norm(spec.dilation));
    rep.target_ratio = window_measure(dwin) / window_measure(spec.window);
    const std::int64_t nw = static_cast<std::int64_t>(spec.window.interval_count());
    const Rational diff_slack{Int(static_cast<std::int64_t>(dwin.interval_count()) + 4 * nw * nw)};
    for (int n = 1; n <= n_max; ++n) {
        const AdelicBox box = schedule.box_at(n);
        DensityRow row;
        row.n = n;
        row.count = count_difference_points(spec, box, step, cap);
        row.measure = box_measure(box);
        row.ratio = Rational(row.count) / row.measure;
        row.bound = diff_slack / row.measure;
        rep.diff.rows.push_back(row);

        const DensityRow& b = rep.base.rows[static_cast<std::size_t>(n - 1)];
        if (b.count == 0) {
            rep.ratio.push_back(Rational(0));
            rep.ratio_bound.push_back(Rational(0));
        } else {
            rep.ratio.push_back(row.ratio / b.ratio);
            // |X/Y - T| <= (bound_X + T * bound_Y)/Y, with T replaced by a
            // rational upper bound when m(W-W)/m(W) is irrational
            const QuadExtReal t = rep.target_ratio;
            const Rational t_upper = t.is_rational() ? t.rational_part() : Rational(floor(t) + 1);
            rep.ratio_bound.push_back((row.bound + t_upper * b.bound) / b.ratio);
        }
    }
    return rep;
}

/// m(F_n K)/m(F_n) per n: exact, equals prod_p p^{max(e_p(n), f_p) - e_p(n)}.
inline std::vector<std::pair<int, Rational>> folner_diagnostic(const FolnerSchedule& schedule,
                                                               const AdelicBox& k, int n_max) {
    if (n_max < 1) throw PreconditionError("n_max must be >= 1");
    std::vector<std::pair<int, Rational>> out;
    for (int n = 1; n <= n_max; ++n)
        out.push_back({n, box_product_ratio(schedule.box_at(n), k)});
    return out;
}

/// Box-level U-adapted core of F. Equals F whenever U is a subset of F
/// (boxes are subgroups and absorb translations from inside); otherwise each
/// exponent drops by U's excess over F at that prime.
inline AdelicBox adapted_core(const AdelicBox& f, const AdelicBox& u) {
    if (box_subset(u, f)) return f;
    ValuationProfile e;
    auto core_at = [&](Prime p) {
        const std::int64_t ef = f.exponents.at(p);
        const std::int64_t eu = u.exponents.at(p);
        return ef - std::max<std::int64_t>(0, eu - ef);
    };
    for (const auto& [p, ef] : f.exponents.entries()) {
        std::int64_t v = core_at(p);
        if (v != 0) e.set(p, v);
    }
    for (const auto& [p, eu] : u.exponents.entries()) {
        if (f.exponents.at(p) != 0) continue;
        std::int64_t v = core_at(p);
        if (v != 0) e.set(p, v);
    }
    return AdelicBox{e};
}

} // namespace adelic_lab
