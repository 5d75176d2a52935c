#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "adelic_lab/quadext.hpp"
#include "adelic_lab/rational.hpp"

using namespace adelic_lab;

TEST_CASE("rational normalization and arithmetic") {
    Rational q(Int(6), Int(-8));
    CHECK(q.num() == -3);
    CHECK(q.den() == 4);
    CHECK(Rational(Int(2), Int(4)) == Rational(Int(1), Int(2)));
    CHECK((Rational(Int(1), Int(3)) + Rational(Int(1), Int(6))) == Rational(Int(1), Int(2)));
    CHECK((Rational(Int(3), Int(4)) * Rational(Int(2), Int(3))) == Rational(Int(1), Int(2)));
    CHECK((Rational(1) / Rational(Int(1), Int(3))) == Rational(3));
    CHECK(Rational(Int(7), Int(2)) > Rational(3));
    CHECK_THROWS_AS(Rational(Int(1), Int(0)), PreconditionError);
    CHECK_THROWS_AS(Rational(1) / Rational(0), PreconditionError);
}

TEST_CASE("floor and ceil") {
    CHECK(floor(Rational(Int(7), Int(2))) == 3);
    CHECK(floor(Rational(Int(-7), Int(2))) == -4);
    CHECK(ceil(Rational(Int(7), Int(2))) == 4);
    CHECK(ceil(Rational(Int(-7), Int(2))) == -3);
    CHECK(floor(Rational(4)) == 4);
    CHECK(frac(Rational(Int(-1), Int(3))) == Rational(Int(2), Int(3)));
}

TEST_CASE("p_valuation examples") {
    CHECK(p_valuation(Rational(Int(3), Int(4)), 2) == ExtendedInt(-2));
    CHECK(p_valuation(Rational(0), 5).is_infinite());
    CHECK(p_valuation(Rational(18), 3) == ExtendedInt(2));
    CHECK_THROWS_AS(p_valuation(Rational(1), 6), PreconditionError);
    CHECK_THROWS_AS(p_valuation(Rational(1), 1), PreconditionError);
}

TEST_CASE("p_norm examples") {
    CHECK(p_norm(Rational(Int(3), Int(4)), 2) == Rational(4));
    CHECK(p_norm(Rational(1), 7) == Rational(1));
    CHECK(p_norm(Rational(50), 5) == Rational(Int(1), Int(25)));
    CHECK(p_norm(Rational(0), 3) == Rational(0));
}

TEST_CASE("valuation algebra properties") {
    std::mt19937_64 rng(20240809);
    auto rand_rational = [&]() {
        std::int64_t n = static_cast<std::int64_t>(rng() % 2001) - 1000;
        std::int64_t d = static_cast<std::int64_t>(rng() % 999) + 1;
        return Rational(Int(n), Int(d));
    };
    const std::int64_t primes[] = {2, 3, 5, 7, 11};
    for (int iter = 0; iter < 2000; ++iter) {
        Rational q1 = rand_rational();
        Rational q2 = rand_rational();
        std::int64_t p = primes[rng() % 5];
        ExtendedInt v1 = p_valuation(q1, p);
        ExtendedInt v2 = p_valuation(q2, p);
        // multiplicativity
        ExtendedInt vp = p_valuation(q1 * q2, p);
        if (v1.is_infinite() || v2.is_infinite()) {
            CHECK(vp.is_infinite());
        } else {
            CHECK(vp == ExtendedInt(v1.value() + v2.value()));
        }
        // ultrametric inequality, equality when the minima differ
        ExtendedInt vs = p_valuation(q1 + q2, p);
        ExtendedInt vmin = v1 < v2 ? v1 : v2;
        CHECK(vs >= vmin);
        if (!v1.is_infinite() && !v2.is_infinite() && v1.value() != v2.value())
            CHECK(vs == vmin);
        // q / p^{v_p(q)} is a unit at p
        if (!v1.is_infinite()) {
            Rational unit = q1 / prime_power(p, v1.value());
            CHECK(p_valuation(unit, p) == ExtendedInt(0));
            CHECK(p_norm(q1, p) * prime_power(p, v1.value()) == Rational(1));
        }
    }
}

TEST_CASE("quad ext normalization") {
    QuadExtReal x(Rational(1), Rational(1), Int(8));
    CHECK(x.radicand() == 2);
    CHECK(x.radical_coeff() == Rational(2));
    QuadExtReal y(Rational(1), Rational(3), Int(1));
    CHECK(y.is_rational());
    CHECK(y.rational_part() == Rational(4));
    QuadExtReal z(Rational(2), Rational(0), Int(5));
    CHECK(z.radicand() == 0);
    CHECK_THROWS_AS(QuadExtReal(Rational(0), Rational(1), Int(-2)), PreconditionError);
}

TEST_CASE("compare_quad examples") {
    const QuadExtReal sqrt2(Rational(0), Rational(1), Int(2));
    CHECK(compare_quad(sqrt2, QuadExtReal(Rational(Int(3), Int(2)))) < 0);
    const QuadExtReal onePlus(Rational(1), Rational(1), Int(2));
    CHECK(compare_quad(onePlus, onePlus) == 0);
    // sign of 49/25 - 2 decides 7/5 < sqrt(2)
    CHECK(compare_quad(QuadExtReal(Rational(Int(7), Int(5))), sqrt2) < 0);
    CHECK_THROWS_AS(compare_quad(sqrt2, QuadExtReal(Rational(0), Rational(1), Int(3))),
                    PreconditionError);
}

TEST_CASE("quad ext field arithmetic") {
    const QuadExtReal sqrt2(Rational(0), Rational(1), Int(2));
    CHECK((sqrt2 * sqrt2) == QuadExtReal(Rational(2)));
    const QuadExtReal x(Rational(1), Rational(2), Int(2));
    const QuadExtReal y = x / sqrt2;
    CHECK((y * sqrt2) == x);
    CHECK((x - x).is_zero());
}

TEST_CASE("compare_quad agrees with 80-bit floating evaluation") {
    std::mt19937_64 rng(7);
    auto rand_rational = [&](std::int64_t lim) {
        std::int64_t n = static_cast<std::int64_t>(rng() % (2 * lim + 1)) - lim;
        std::int64_t d = static_cast<std::int64_t>(rng() % 99) + 1;
        return Rational(Int(n), Int(d));
    };
    const Int ks[] = {Int(0), Int(2), Int(3), Int(5), Int(7)};
    int checked = 0;
    for (int iter = 0; iter < 10000; ++iter) {
        Int k = ks[rng() % 5];
        QuadExtReal x(rand_rational(50), k == 0 ? Rational(0) : rand_rational(20), k);
        QuadExtReal y(rand_rational(50), k == 0 ? Rational(0) : rand_rational(20), k);
        const long double fx = x.to_long_double();
        const long double fy = y.to_long_double();
        if (fabsl(fx - fy) < 1e-12L) continue; // too close for a float verdict
        ++checked;
        const int expected = fx < fy ? -1 : 1;
        CHECK(compare_quad(x, y) == expected);
    }
    CHECK(checked > 9000);
}

TEST_CASE("quad ext floor and ceil") {
    const QuadExtReal sqrt2(Rational(0), Rational(1), Int(2));
    CHECK(floor(sqrt2) == 1);
    CHECK(ceil(sqrt2) == 2);
    CHECK(floor(-sqrt2) == -2);
    CHECK(floor(QuadExtReal(Rational(3))) == 3);
    CHECK(ceil(QuadExtReal(Rational(3))) == 3);
    // 5 + 4*sqrt(2) = 10.656...
    QuadExtReal v(Rational(5), Rational(4), Int(2));
    CHECK(floor(v) == 10);
    CHECK(ceil(v) == 11);
    std::mt19937_64 rng(99);
    for (int i = 0; i < 500; ++i) {
        std::int64_t a = static_cast<std::int64_t>(rng() % 401) - 200;
        std::int64_t b = static_cast<std::int64_t>(rng() % 41) - 20;
        std::int64_t ad = static_cast<std::int64_t>(rng() % 9) + 1;
        QuadExtReal x(Rational(Int(a), Int(ad)), Rational(Int(b)), Int(3));
        Int f = floor(x);
        CHECK(QuadExtReal(Rational(f)) <= x);
        CHECK(x < QuadExtReal(Rational(f + 1)));
    }
}

TEST_CASE("decimal rendering") {
    CHECK(decimal_string(Rational(0)) == "0");
    CHECK(decimal_string(Rational(1)) == "1");
    CHECK(decimal_string(Rational(Int(1), Int(3))) == "0.333333333333");
    CHECK(decimal_string(Rational(Int(2), Int(3))) == "0.666666666667");
    CHECK(decimal_string(Rational(Int(-1), Int(2))) == "-0.5");
    CHECK(decimal_string(Rational(Int(810001), Int(810000))) == "1.00000123457");
    CHECK(decimal_string(Rational(Int(2), Int(25))) == "0.08");
    CHECK(decimal_string(Rational(1000000)) == "1000000");
    CHECK(decimal_string(Rational(Int(1), Int(100000))) == "1e-5");
    CHECK(decimal_string(Rational(Int(1), Int(1000))) == "0.001");
}

TEST_CASE("rational text form") {
    CHECK(Rational(Int(-3), Int(4)).str() == "-3/4");
    CHECK(Rational(5).str() == "5");
}
