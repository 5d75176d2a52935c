// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exit code 0 iff all pass.

#include <chrono>
#include <iostream>
#include <vector>

#include "adelic_lab/boxgeo.hpp"
#include "adelic_lab/cutproject.hpp"
#include "adelic_lab/density.hpp"
#include "adelic_lab/parallel.hpp"
#include "adelic_lab/parse.hpp"
#include "adelic_lab/prng.hpp"
#include "adelic_lab/solenoid.hpp"

using namespace adelic_lab;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion-" << criterion << " " << name;
    if (!detail.empty()) std::cout << " [" << detail << "]";
    std::cout << std::endl;
    if (!ok) ++failures;
}

Rational q(std::int64_t n, std::int64_t d = 1) { return Rational(Int(n), Int(d)); }
QuadExtReal qe(std::int64_t n, std::int64_t d = 1) { return QuadExtReal(q(n, d)); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. Farey density at n = 4 on the standard schedule.
void criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    FareySpec spec(ValuationProfile{}, Window1D(qe(0), qe(1)));
    DensityReport rep = density_estimate(spec, FolnerSchedule::standard(), 4);
    const double closed_form_time = seconds_since(t0);
    bool ok = rep.rows[3].ratio == q(810001, 810000);
    ok = ok && abs(QuadExtReal(rep.rows[3].ratio) - rep.target) <= QuadExtReal(q(2, 1000000));
    ok = ok && closed_form_time < 1.0;
    // enumeration cross-check at n <= 2
    for (int n = 1; n <= 2; ++n) {
        const AdelicBox box = FolnerSchedule::standard().box_at(n);
        ok = ok && Int(farey_points(spec, box).size()) ==
                       rep.rows[static_cast<std::size_t>(n - 1)].count;
    }
    report(1, "farey density ratio (810000+1)/810000 at n=4", ok,
           "closed form " + std::to_string(closed_form_time) + "s");
}

// 2. Dilated density with certified bound < 1e-8 at n = 6.
void criterion2() {
    FareySpec spec(ValuationProfile{{2, 1}}, Window1D(qe(0), qe(1, 3)));
    DensityReport rep = density_estimate(spec, FolnerSchedule::standard(), 6);
    bool ok = rep.target == QuadExtReal(q(2, 3));
    for (const auto& row : rep.rows)
        ok = ok && abs(QuadExtReal(row.ratio) - rep.target) <= QuadExtReal(row.bound);
    ok = ok && rep.rows[5].bound < q(1, 100000000);
    report(2, "dilated density -> 2/3 with bound < 1e-8 at n=6", ok,
           "bound " + decimal_string(rep.rows[5].bound, 3));
}

// 3. Doubling ratios: 50 random single intervals -> 2, the two-interval
// witness -> 3, with exact target equality.
void criterion3() {
    Prng rng(20260809);
    bool ok = true;
    for (int i = 0; i < 50 && ok; ++i) {
        const std::int64_t den = 1 + rng.range(0, 11);
        const std::int64_t a = rng.range(-4 * den, 4 * den);
        const std::int64_t len = 1 + rng.range(0, 3 * den - 1);
        FareySpec spec(ValuationProfile{}, Window1D(qe(a, den), qe(a + len, den)));
        DoublingReport rep = doubling_report(spec, FolnerSchedule::standard(), 3);
        // exact fraction equality of targets
        ok = ok && rep.diff.target == rep.base.target * QuadExtReal(q(2));
        ok = ok && rep.target_ratio == QuadExtReal(q(2));
        // convergence to exactly 2 within the certified bound, bound shrinking
        const std::size_t last = rep.ratio.size() - 1;
        ok = ok && abs(QuadExtReal(rep.ratio[last]) - rep.target_ratio) <=
                       QuadExtReal(rep.ratio_bound[last]);
        ok = ok && rep.ratio_bound[last] < rep.ratio_bound[0];
    }
    {
        FareySpec spec(ValuationProfile{},
                       Window1D({{qe(0), qe(1, 4)}, {qe(1, 2), qe(3, 4)}}));
        DoublingReport rep = doubling_report(spec, FolnerSchedule::standard(), 3);
        ok = ok && rep.target_ratio == QuadExtReal(q(3));
        const std::size_t last = rep.ratio.size() - 1;
        ok = ok && abs(QuadExtReal(rep.ratio[last]) - rep.target_ratio) <=
                       QuadExtReal(rep.ratio_bound[last]);
        ok = ok && rep.ratio_bound[last] < rep.ratio_bound[0];
    }
    report(3, "doubling ratios: 50 random intervals -> 2, split window -> 3", ok);
}

// 4. Exceptional points, exact and under 1 second.
void criterion4() {
    const auto t0 = std::chrono::steady_clock::now();
    const QuadExtReal sqrt2(q(0), q(1), Int(2));
    FareySpec irr(ValuationProfile{}, Window1D(sqrt2, QuadExtReal(q(1)) + sqrt2));
    auto ex = exceptional_points(irr, 1000);
    bool ok = ex.points == std::vector<Rational>{q(-1), q(1)};
    FareySpec rat(ValuationProfile{}, Window1D(qe(0), qe(1)));
    ok = ok && exceptional_points(rat, 1000).points.empty();
    const double elapsed = seconds_since(t0);
    ok = ok && elapsed < 1.0;
    report(4, "exceptional points: [sqrt2,1+sqrt2] -> {-1,+1}, [0,1] -> {}", ok,
           std::to_string(elapsed) + "s");
}

// 5. Kneser randomized suite with classifier equivalence and Z_N cross-check.
void criterion5() {
    const int total = 10000;
    const std::int64_t zn = 2520;
    const Rational slack = q(2 * 36, zn);
    // endpoint denominators divide 2520 and stay <= 360
    const std::vector<std::int64_t> dens = {8,  9,  12, 18, 20,  24,  36, 40,
                                            45, 60, 72, 90, 120, 180, 360};
    Prng rng(5);
    std::vector<ArcSet> cases;
    cases.reserve(total);
    for (int i = 0; i < total; ++i)
        cases.push_back(i % 5 == 0 ? random_equality_arcset(rng, 6, dens)
                                   : random_arcset(rng, 6, dens));
    std::vector<int> bad(cases.size(), 0);
    parallel_for(cases.size(), [&](std::size_t i) {
        const ArcSet& c = cases[i];
        const auto k = kneser_check(c);
        if (!k.holds) bad[i] |= 1;
        const bool equality = k.diff_measure == k.bound;
        const bool classified = kneser_equality_classify(c).has_value();
        if (classified != equality) bad[i] |= 2;
        const Int disc = discretized_difference_count(c, zn);
        if (abs(k.diff_measure - q(disc.convert_to<std::int64_t>(), zn)) > slack) bad[i] |= 4;
    });
    int violations = 0, mismatches = 0, zn_failures = 0;
    for (int b : bad) {
        violations += b & 1;
        mismatches += (b >> 1) & 1;
        zn_failures += (b >> 2) & 1;
    }
    const bool ok = violations == 0 && mismatches == 0 && zn_failures == 0;
    report(5, "kneser suite: 10^4 arc sets, zero violations and mismatches", ok,
           "violations=" + std::to_string(violations) + " mismatches=" +
               std::to_string(mismatches) + " zn=" + std::to_string(zn_failures));
}

// 6. Intensity through counting at box 2^{-20} Z_2.
void criterion6() {
    LatticeSpec lat(GroupKind::SingleP, {2}, ValuationProfile{}, q(1));
    Window1D w(qe(0), qe(1));
    const Int count = capset_count(lat, w, AdelicBox{{2, 20}});
    const Rational measure = box_measure(AdelicBox{{2, 20}});
    const Rational density = Rational(count) / measure;
    const Int two20 = pow_int(2, 20);
    bool ok = count == two20 + 1;
    ok = ok && density == q(1) + Rational(Int(1), two20);
    ok = ok && intensity_value(lat, w) == QuadExtReal(q(1));
    report(6, "intensity: counted density 1 + 2^-20 against target 1", ok);
}

// 7. Covolume formula against the counting oracle on 20 random lattices.
void criterion7() {
    Prng rng(7);
    const Prime pool[] = {2, 3, 5, 7};
    int tested = 0;
    bool ok = true;
    while (tested < 20) {
        const int kindpick = static_cast<int>(rng.below(3));
        GroupKind kind = GroupKind::Adelic;
        std::vector<Prime> primes;
        if (kindpick == 0) {
            kind = GroupKind::SingleP;
            primes = {pool[rng.below(4)]};
        } else if (kindpick == 1) {
            kind = GroupKind::MultiP;
            primes = {2, pool[1 + rng.below(3)]};
        }
        auto allowed = [&](Prime p) {
            return kind == GroupKind::Adelic ||
                   std::find(primes.begin(), primes.end(), p) != primes.end();
        };
        ValuationProfile u;
        for (Prime p : {Prime(2), Prime(3), Prime(5)})
            if (allowed(p) && rng.below(2)) u.set(p, 1 + rng.range(0, 2));
        Rational t{Int(1 + rng.range(0, 11)), Int(1 + rng.range(0, 4))};
        if (rng.below(2)) t = -t;
        LatticeSpec lat(kind, primes, u, t);
        ValuationProfile e;
        const Prime bp = kind == GroupKind::Adelic ? 2 : primes[rng.below(primes.size())];
        e.set(bp, 14 + rng.range(0, 3));
        AdelicBox box{e};
        const Rational T = abs(t) * q(1 + rng.range(0, 2));
        const Int count = 2 * floor(T / (abs(t) * scalar_spacing(lat, box))) + 1;
        if (count < 10000) continue;
        ++tested;
        const Rational est = covolume_by_counting(lat, box, T);
        const Rational exact = covolume(lat);
        ok = ok && abs(est - exact) / exact <= q(2) / Rational(count);
    }
    report(7, "covolume oracle within 2/count on 20 random lattices", ok);
}

// 8. Solenoid round trips at depth 8 over p = 2.
void criterion8() {
    PrimeSchedule s = PrimeSchedule::constant(2, 8);
    Prng rng(8);
    bool ok = true;
    for (int i = 0; i < 100 && ok; ++i) {
        Rational theta{Int(rng.range(0, 999999)), Int(1000000)};
        SolPoint z;
        z.angles.assign(8, q(0));
        z.angles[7] = theta;
        for (int n = 7; n >= 1; --n)
            z.angles[static_cast<std::size_t>(n - 1)] =
                frac(q(2) * z.angles[static_cast<std::size_t>(n)]);
        ok = ok && solpoint_compatible(z, s);
        const LiftResult lr = lift(z, s);
        ok = ok && phi(lr.g, lr.r, s) == z;
    }
    for (int i = 0; i < 100 && ok; ++i) {
        Rational w{Int(rng.range(-5000, 5000)), Int(1 + rng.range(0, 99))};
        const LiftResult lr = lift(rho(w, s), s);
        ok = ok && phi(lr.g, lr.r, s) == rho(w, s);
        ok = ok && kernel_equivalent(lr.g, lr.r, PadicRep(2, q(0), 8), w, s);
    }
    {
        auto ks = kernel_enumerate(s, 0, Window1D(qe(-1, 2), qe(1, 2)));
        ok = ok && ks.size() == 1 && ks[0].first == q(0) && ks[0].second == q(0);
    }
    report(8, "solenoid: phi(lift(z)) = z, lift(rho(w)) = (0,w) mod kernel", ok);
}

// 9. Cross-section identity at depth 4 on the grid of denominator 64.
void criterion9() {
    const bool ok = cross_section_check(Window1D(qe(-1, 4), qe(1, 4)),
                                        PrimeSchedule::constant(2, 4), 64);
    report(9, "cross-section identity S = rho(W) on the grid", ok);
}

// 10. Brunn-Minkowski: d=1 randomized equality law; d=2 certified brackets.
void criterion10() {
    Prng rng(10);
    bool ok = true;
    for (int i = 0; i < 200 && ok; ++i) {
        const int n = 1 + static_cast<int>(rng.below(3));
        std::vector<BoxNd> boxes;
        std::int64_t pos = -80;
        for (int j = 0; j < n; ++j) {
            pos += 2 + rng.range(0, 10);
            const std::int64_t len = 1 + rng.range(0, 8);
            boxes.push_back(BoxNd{{{q(pos, 2), q(pos + len, 2)}}});
            pos += len + 2;
        }
        BoxUnion w(1, std::move(boxes));
        const BmResult r = bm_check(w);
        ok = ok && r.ratio_lower >= q(2);
        ok = ok && ((r.ratio_lower == q(2)) == (w.boxes().size() == 1));
        ok = ok && r.equality == (w.boxes().size() == 1);
    }
    Rational square_width;
    {
        BoxUnion sq(2, {BoxNd{{{q(0), q(1)}, {q(0), q(1)}}}});
        const auto v = box_difference_volume(sq, 512);
        ok = ok && v.lower <= q(4) && q(4) <= v.upper;
        ok = ok && v.width() < q(4) * q(2, 100); // width < 2% of 4
        square_width = v.width();
    }
    {
        BoxUnion lshape(2, {BoxNd{{{q(0), q(1)}, {q(0), q(1, 2)}}},
                            BoxNd{{{q(0), q(1, 2)}, {q(1, 2), q(1)}}}});
        const BmResult r = bm_check(lshape, 512);
        ok = ok && r.holds && !r.equality;
        ok = ok && r.ratio_lower - q(4) > r.ratio_upper - r.ratio_lower;
    }
    report(10, "Brunn-Minkowski: d=1 equality law, d=2 brackets at grid 512", ok,
           "square width " + decimal_string(square_width, 3));
}

// 11. Folner diagnostics: formula vs definition, adapted-core absorption.
void criterion11() {
    Prng rng(11);
    const Prime pool[] = {2, 3, 5, 7, 11};
    auto random_box = [&]() {
        ValuationProfile v;
        const int n = static_cast<int>(rng.below(4));
        for (int i = 0; i < n; ++i) v.set(pool[rng.below(5)], rng.range(-3, 3));
        return AdelicBox{v};
    };
    bool ok = true;
    for (int i = 0; i < 100 && ok; ++i) {
        AdelicBox f = random_box();
        AdelicBox k = random_box();
        Rational formula(1);
        std::set<Prime> support;
        for (const auto& [p, e] : f.exponents.entries()) support.insert(p);
        for (const auto& [p, e] : k.exponents.entries()) support.insert(p);
        for (Prime p : support) {
            const std::int64_t e = f.exponents.at(p);
            formula *= prime_power(p, std::max(e, k.exponents.at(p)) - e);
        }
        ok = ok && box_product_ratio(f, k) == formula;
        ok = ok && box_measure(box_product(f, k)) / box_measure(f) == formula;
    }
    for (int i = 0; i < 100 && ok; ++i) {
        AdelicBox f = random_box();
        // any U below F pointwise (and below 0 off F's support) is absorbed
        ValuationProfile v;
        for (const auto& [p, e] : f.exponents.entries()) v.set(p, e - rng.range(0, 2));
        const Prime extra = pool[rng.below(5)];
        v.set(extra, std::min<std::int64_t>(f.exponents.at(extra), 0) - rng.range(0, 2));
        AdelicBox u{v};
        ok = ok && box_subset(u, f);
        ok = ok && adapted_core(f, u) == f;
    }
    report(11, "Folner ratio formula and adapted-core absorption", ok);
}

// 12. Higher-order sumset r=3 bracketed at grid 1024.
void criterion12() {
    const auto v = higher_order_sumset_volume(Window1D(qe(0), qe(1)), 3, 1024);
    bool ok = v.lower <= QuadExtReal(q(3)) && QuadExtReal(q(3)) <= v.upper;
    ok = ok && v.width() < QuadExtReal(q(3) * q(2, 100)); // width < 2% of 3
    report(12, "sumset W^{[3]} of [0,1] brackets 3 with width < 2%", ok,
           "width " + decimal_string(v.width().rational_part(), 3));
}

} // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    criterion12();
    if (failures == 0) {
        std::cout << "acceptance: all 12 criteria passed" << std::endl;
        return 0;
    }
    std::cout << "acceptance: " << failures << " criteria FAILED" << std::endl;
    return 1;
}
