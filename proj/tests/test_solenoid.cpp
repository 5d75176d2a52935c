#include <catch2/catch_amalgamated.hpp>

#include "adelic_lab/prng.hpp"
#include "adelic_lab/solenoid.hpp"

using namespace adelic_lab;

namespace {
Rational q(std::int64_t n, std::int64_t d = 1) { return Rational(Int(n), Int(d)); }
} // namespace

TEST_CASE("rho examples") {
    PrimeSchedule s = PrimeSchedule::constant(2, 3);
    CHECK(rho(q(0), s).angles == std::vector<Rational>{q(0), q(0), q(0)});
    CHECK(rho(q(1, 2), s).angles == std::vector<Rational>{q(1, 2), q(1, 4), q(1, 8)});
    CHECK(rho(q(1), s).angles == std::vector<Rational>{q(0), q(1, 2), q(1, 4)});
    CHECK(solpoint_compatible(rho(q(7, 3), s), s));
    PrimeSchedule mixed({2, 3, 5});
    CHECK(solpoint_compatible(rho(q(-11, 7), mixed), mixed));
}

TEST_CASE("padic_frac") {
    CHECK(padic_frac(q(1, 4), 2) == q(1, 4));
    CHECK(padic_frac(q(3, 4), 2) == q(3, 4));
    CHECK(padic_frac(q(2), 2) == q(0));
    CHECK(padic_frac(q(1, 3), 2) == q(0)); // unit at 2
    // 1/6 = (1/2)(1/3): 2-adic part: frac = c/2 with 1/6 - c/2 in Z_2:
    // c = 1: 1/6 - 1/2 = -1/3, v_2 = 0 >= 0
    CHECK(padic_frac(q(1, 6), 2) == q(1, 2));
    // 3-adic: 1/6 - c/3 in Z_3: c = 2: 1/6 - 2/3 = -1/2 ok
    CHECK(padic_frac(q(1, 6), 3) == q(2, 3));
}

TEST_CASE("chi examples") {
    CHECK(chi(PadicRep(2, q(1), 3), 3) == q(1, 4));
    CHECK(chi(PadicRep(2, q(4), 2), 2) == q(0));
    CHECK(chi(PadicRep(2, q(1, 2), 1), 1) == q(1, 2));
    CHECK_THROWS_AS(chi(PadicRep(2, q(1), 3), 4), PreconditionError);
}

TEST_CASE("character tower and kernel containment") {
    Prng rng(17);
    const Prime primes[] = {2, 3, 5};
    for (int i = 0; i < 500; ++i) {
        const Prime p = primes[rng.below(3)];
        const int depth = 2 + static_cast<int>(rng.below(5));
        // random g with valuation >= -(depth)
        const std::int64_t num = rng.range(-2000, 2000);
        const std::int64_t powr = rng.range(0, depth);
        Rational g = q(num) / prime_power(p, powr);
        PadicRep rep(p, g, depth);
        for (int n = 1; n < depth; ++n) {
            CHECK(frac(Rational(p) * chi(rep, n + 1)) == chi(rep, n));
        }
        // kernel: v in p^n Z_p => chi(v, n) = 0
        for (int n = 1; n <= depth; ++n) {
            Rational v = q(rng.range(1, 50)) * prime_power(p, n);
            CHECK(chi(PadicRep(p, v, depth), n) == q(0));
        }
    }
}

TEST_CASE("phi examples") {
    PrimeSchedule s = PrimeSchedule::constant(2, 3);
    // phi(0, r) = rho(r)
    CHECK(phi(PadicRep(2, q(0), 3), q(5, 8), s) == rho(q(5, 8), s));
    // phi(1, 0) = (0, 1/2, 1/4)
    CHECK(phi(PadicRep(2, q(1), 3), q(0), s).angles ==
          std::vector<Rational>{q(0), q(1, 2), q(1, 4)});
    // kernel law: phi(gamma, -gamma) = identity
    CHECK(phi(PadicRep(2, q(1), 3), q(-1), s).angles ==
          std::vector<Rational>{q(0), q(0), q(0)});
    CHECK_THROWS_AS(phi(PadicRep(3, q(0), 3), q(0), s), PreconditionError);
}

TEST_CASE("kernel law for all dyadic gamma") {
    PrimeSchedule s = PrimeSchedule::constant(2, 6);
    Prng rng(18);
    for (int i = 0; i < 300; ++i) {
        const std::int64_t m = rng.range(-500, 500);
        const std::int64_t k = rng.range(0, 5); // k < N
        Rational gamma = q(m) / prime_power(2, k);
        SolPoint z = phi(PadicRep(2, gamma, 6), -gamma, s);
        for (const auto& a : z.angles) CHECK(a == q(0));
    }
}

TEST_CASE("lift examples") {
    PrimeSchedule s = PrimeSchedule::constant(2, 3);
    {
        SolPoint z{{q(0), q(1, 2), q(1, 4)}};
        auto lr = lift(z, s);
        CHECK(lr.r == q(0));
        CHECK(frac(lr.g.value - q(1)) == q(0)); // g = 1 mod small powers
        CHECK(padic_equivalent(PadicRep(2, lr.g.value, 2), PadicRep(2, q(1), 2)));
        CHECK(phi(lr.g, lr.r, s) == z);
        // (0, 1) is kernel-equivalent to the lift
        CHECK(kernel_equivalent(lr.g, lr.r, PadicRep(2, q(0), 3), q(1), s));
    }
    {
        // theta_1 = 1/3 forces r = 1/3
        PrimeSchedule s2 = PrimeSchedule::constant(2, 2);
        SolPoint z{{q(1, 3), q(2, 3)}};
        REQUIRE(solpoint_compatible(z, s2));
        auto lr = lift(z, s2);
        CHECK(lr.r == q(1, 3));
        CHECK(phi(lr.g, lr.r, s2) == z);
    }
    SolPoint bad{{q(1, 3), q(1, 3)}};
    CHECK_THROWS_AS(lift(bad, s), PreconditionError);
}

TEST_CASE("lift of rho is (0, w) modulo the kernel") {
    PrimeSchedule s = PrimeSchedule::constant(2, 8);
    Prng rng(19);
    for (int i = 0; i < 200; ++i) {
        Rational w{Int(rng.range(-4000, 4000)), Int(1 + rng.range(0, 60))};
        auto lr = lift(rho(w, s), s);
        CHECK(phi(lr.g, lr.r, s) == rho(w, s));
        CHECK(kernel_equivalent(lr.g, lr.r, PadicRep(2, q(0), 8), w, s));
    }
}

TEST_CASE("round trip on random compatible points") {
    Prng rng(20);
    const Prime primes[] = {2, 3};
    for (int i = 0; i < 300; ++i) {
        const Prime p = primes[rng.below(2)];
        const int depth = 3 + static_cast<int>(rng.below(6));
        PrimeSchedule s = PrimeSchedule::constant(p, depth);
        // random compatible point from theta_N upward
        Rational theta{Int(rng.range(0, 100000)), Int(100001)};
        SolPoint z;
        z.angles.assign(static_cast<std::size_t>(depth), q(0));
        z.angles[static_cast<std::size_t>(depth - 1)] = theta;
        for (int n = depth - 1; n >= 1; --n)
            z.angles[static_cast<std::size_t>(n - 1)] =
                frac(Rational(p) * z.angles[static_cast<std::size_t>(n)]);
        REQUIRE(solpoint_compatible(z, s));
        auto lr = lift(z, s);
        CHECK(phi(lr.g, lr.r, s) == z);
        // minimal nonnegative integer representative
        CHECK(lr.g.value.is_integer());
        CHECK(lr.g.value.sign() >= 0);
        CHECK(Rational(lr.g.value) < prime_power(p, depth - 1));
    }
}

TEST_CASE("interval cascade") {
    // len(I_n) = q_n * len(I_{n+1}) by construction of the level products
    PrimeSchedule s({2, 3, 5, 7});
    const Rational c = q(1, 3);
    for (int n = 1; n < s.depth(); ++n) {
        Rational len_n = Rational(2) * c / Rational(s.level_product(n));
        Rational len_next = Rational(2) * c / Rational(s.level_product(n + 1));
        CHECK(len_n == Rational(s.q[static_cast<std::size_t>(n - 1)]) * len_next);
    }
}

TEST_CASE("cross_section_check examples") {
    PrimeSchedule s = PrimeSchedule::constant(2, 4);
    Window1D w(QuadExtReal(q(-1, 4)), QuadExtReal(q(1, 4)));
    CHECK(cross_section_check(w, s, 64));
    // adversarial compatible point with theta_2 perturbed breaks compatibility
    SolPoint adv{{q(0), q(1, 64), q(0), q(0)}};
    CHECK(!solpoint_compatible(adv, s));
    // non-centered window rejected
    Window1D off(QuadExtReal(q(-2, 3)), QuadExtReal(q(2, 3)));
    CHECK_THROWS_AS(cross_section_check(off, s, 64), PreconditionError);
}

TEST_CASE("cross_section_check across schedules") {
    CHECK(cross_section_check(Window1D(QuadExtReal(q(-1, 4)), QuadExtReal(q(1, 4))),
                              PrimeSchedule::constant(3, 3), 36));
    CHECK(cross_section_check(Window1D(QuadExtReal(q(-1, 3)), QuadExtReal(q(1, 3))),
                              PrimeSchedule({2, 3, 2}), 24));
}

TEST_CASE("kernel_enumerate examples") {
    PrimeSchedule s = PrimeSchedule::constant(2, 4);
    {
        auto ks = kernel_enumerate(s, 0, Window1D(QuadExtReal(q(-1, 2)), QuadExtReal(q(1, 2))));
        REQUIRE(ks.size() == 1);
        CHECK(ks[0].first == q(0));
        CHECK(ks[0].second == q(0));
    }
    {
        auto ks = kernel_enumerate(s, 1, Window1D(QuadExtReal(q(-1)), QuadExtReal(q(1))));
        CHECK(ks.size() == 5); // gamma in {-1, -1/2, 0, 1/2, 1}
        bool has_half = false;
        for (const auto& [g, r] : ks)
            if (g == q(1, 2) && r == q(-1, 2)) has_half = true;
        CHECK(has_half);
    }
    CHECK_THROWS_AS(Window1D(QuadExtReal(q(0)), QuadExtReal(q(0))), PreconditionError);
}

TEST_CASE("kernel elements map to the identity through phi") {
    PrimeSchedule s = PrimeSchedule::constant(2, 5);
    auto ks = kernel_enumerate(s, 2, Window1D(QuadExtReal(q(-2)), QuadExtReal(q(2))));
    for (const auto& [g, r] : ks) {
        SolPoint z = phi(PadicRep(2, g, 5), r, s);
        for (const auto& a : z.angles) CHECK(a == q(0));
    }
}
