#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "adelic_lab/adelic.hpp"
#include "adelic_lab/window.hpp"

namespace adelic_lab {

/// Primes q_1, ..., q_N of the truncated inverse limit
/// T <- T <- ... (z -> z^{q_n}); all statements are "at depth N".
struct PrimeSchedule {
    std::vector<Prime> q;

    explicit PrimeSchedule(std::vector<Prime> primes) : q(std::move(primes)) {
        if (q.empty()) throw PreconditionError("schedule needs depth >= 1");
        for (Prime p : q) require_prime(p);
    }
    static PrimeSchedule constant(Prime p, int depth) {
        return PrimeSchedule(std::vector<Prime>(static_cast<std::size_t>(depth), p));
    }

    int depth() const { return static_cast<int>(q.size()); }
    bool constant_prime() const {
        for (Prime p : q)
            if (p != q[0]) return false;
        return true;
    }
    /// q_0 * ... * q_{n-1} with q_0 = 1, for 1 <= n <= depth.
    Int level_product(int n) const {
        Int r = 1;
        for (int i = 0; i + 1 < n; ++i) r *= q[static_cast<std::size_t>(i)];
        return r;
    }

    std::string str() const {
        if (constant_prime()) return std::to_string(q[0]) + "^" + std::to_string(depth());
        std::string s;
        for (Prime p : q) {
            if (!s.empty()) s += ",";
            s += std::to_string(p);
        }
        return s;
    }
};

/// Point of the truncated solenoid in angle coordinates: theta_n in [0,1)
/// with theta_n = q_n * theta_{n+1} (mod 1). Angles are exact rationals, so
/// every solenoid identity is a rational congruence.
struct SolPoint {
    std::vector<Rational> angles;

    std::string str() const {
        std::string s;
        for (const auto& a : angles) {
            if (!s.empty()) s += ";";
            s += a.str();
        }
        return s;
    }

    friend bool operator==(const SolPoint& x, const SolPoint& y) { return x.angles == y.angles; }
    friend bool operator!=(const SolPoint& x, const SolPoint& y) { return !(x == y); }
};

inline bool solpoint_compatible(const SolPoint& z, const PrimeSchedule& s) {
    if (static_cast<int>(z.angles.size()) != s.depth()) return false;
    for (const auto& a : z.angles)
        if (a.sign() < 0 || a >= Rational(1)) return false;
    for (int n = 0; n + 1 < s.depth(); ++n)
        if (frac(Rational(s.q[static_cast<std::size_t>(n)]) *
                 z.angles[static_cast<std::size_t>(n + 1)]) != z.angles[static_cast<std::size_t>(n)])
            return false;
    return true;
}

/// rho(r) = (r / (q_0 ... q_{n-1}) mod 1)_n, the dense embedding of R.
inline SolPoint rho(const Rational& r, const PrimeSchedule& s) {
    SolPoint z;
    for (int n = 1; n <= s.depth(); ++n)
        z.angles.push_back(frac(r / Rational(s.level_product(n))));
    return z;
}

/// Element of Q_p read modulo p^N Z_p.
struct PadicRep {
    Prime p;
    Rational value;
    int depth;

    PadicRep(Prime prime, Rational v, int n) : p(prime), value(std::move(v)), depth(n) {
        require_prime(p);
        if (depth < 1) throw PreconditionError("depth must be >= 1");
    }
};

/// Reps are equal iff their difference lies in p^N Z_p.
inline bool padic_equivalent(const PadicRep& a, const PadicRep& b) {
    if (a.p != b.p || a.depth != b.depth) return false;
    const Rational d = a.value - b.value;
    if (d.is_zero()) return true;
    return p_valuation(d, a.p).value() >= a.depth;
}

/// p-adic fractional part: the unique c/p^j in [0,1) with x - c/p^j in Z_p.
inline Rational padic_frac(const Rational& x, Prime p) {
    if (x.is_zero()) return Rational(0);
    const ExtendedInt v = p_valuation(x, p);
    if (v.is_infinite() || v.value() >= 0) return Rational(0);
    const std::int64_t j = -v.value();
    const Int pj = pow_int(Int(p), static_cast<std::uint64_t>(j));
    // x = num / (p^j m) in lowest terms; c = num * m^{-1} mod p^j
    const Int m = x.den() / pj;
    // modular inverse by extended gcd
    Int g = m % pj, inv = 0;
    {
        Int a = g < 0 ? g + pj : g, b = pj, x0 = 1, x1 = 0;
        while (b != 0) {
            Int quot = a / b;
            Int tmp = a - quot * b;
            a = b;
            b = tmp;
            tmp = x0 - quot * x1;
            x0 = x1;
            x1 = tmp;
        }
        inv = x0 % pj;
        if (inv < 0) inv += pj;
    }
    Int c = (x.num() % pj) * inv % pj;
    if (c < 0) c += pj;
    return Rational(c, pj);
}

/// chi_n(g) = frac_p(g / p^{n-1}) as an angle; the concrete eigencharacter
/// tower: q * chi(g, n+1) = chi(g, n) (mod 1) and chi vanishes on p^n Z_p.
inline Rational chi(const PadicRep& g, int n) {
    if (n < 1 || n > g.depth) throw PreconditionError("character level out of range");
    return padic_frac(g.value / prime_power(g.p, n - 1), g.p);
}

/// Phi(g, r) = chi(g) + rho(r) in the solenoid.
inline SolPoint phi(const PadicRep& g, const Rational& r, const PrimeSchedule& s) {
    if (!s.constant_prime() || s.q[0] != g.p)
        throw PreconditionError("phi needs a constant-p schedule matching the rep");
    if (s.depth() != g.depth) throw PreconditionError("depth mismatch");
    SolPoint z = rho(r, s);
    for (int n = 1; n <= s.depth(); ++n) {
        auto& a = z.angles[static_cast<std::size_t>(n - 1)];
        a = frac(a + chi(g, n));
    }
    return z;
}

struct LiftResult {
    PadicRep g;
    Rational r;
};

/// Inductive lift: r is read off theta_1; per level the q_n-th root-of-unity
/// discrepancy omega_n is matched by v_n = j * p^{n-1} with
/// chi_{n+1}(v_n) = omega_n. The result g is the minimal nonnegative
/// integer representative; phi(lift(z)) = z exactly at every level, and g is
/// determined modulo p^{N-1} Z_p together with the kernel {(γ, -γ)}.
inline LiftResult lift(const SolPoint& z, const PrimeSchedule& s) {
    if (!s.constant_prime())
        throw PreconditionError("lift is implemented for constant-p schedules");
    if (!solpoint_compatible(z, s)) throw PreconditionError("incompatible solenoid point");
    const Prime p = s.q[0];
    const Rational r = z.angles[0];
    Rational g(0);
    for (int n = 1; n < s.depth(); ++n) {
        // a_{n+1} = chi_{n+1}(g_n) + rho_{n+1}(r)
        PadicRep gn(p, g, s.depth());
        const Rational a_next =
            frac(chi(gn, n + 1) + frac(r / Rational(s.level_product(n + 1))));
        const Rational omega = frac(z.angles[static_cast<std::size_t>(n)] - a_next);
        // omega is a p-th root of unity: omega = j/p
        const Rational jr = omega * Rational(p);
        if (!jr.is_integer())
            throw PreconditionError("discrepancy is not a q_n-th root of unity");
        g += jr * prime_power(p, n - 1);
    }
    return {PadicRep(p, g, s.depth()), r};
}

/// (g1, r1) and (g2, r2) map to the same solenoid point at depth N:
/// the difference is a kernel element (γ, -γ), γ in Z[1/p], modulo
/// p^{N-1} Z_p in the group coordinate.
inline bool kernel_equivalent(const PadicRep& g1, const Rational& r1, const PadicRep& g2,
                              const Rational& r2, const PrimeSchedule& s) {
    if (g1.p != g2.p) return false;
    const Prime p = g1.p;
    const Rational gamma = r2 - r1;
    // gamma must lie in Z[1/p]
    Rational rest = gamma;
    if (!rest.is_zero()) {
        Int den = rest.den();
        while (den % p == 0) den /= p;
        if (den != 1) return false;
    }
    const Rational d = g1.value - (g2.value + gamma);
    if (d.is_zero()) return true;
    return p_valuation(d, p).value() >= s.depth() - 1;
}

/// Exact two-sided check of the cross-section identity S = rho(W) at depth
/// N for a centered window W = [-c, c], on the rational grid of denominator
/// grid_den. I_n is the centered arc of length m(W) / (q_0 ... q_{n-1}).
inline bool cross_section_check(const Window1D& w, const PrimeSchedule& s, std::int64_t grid_den) {
    if (w.interval_count() != 1) throw PreconditionError("cross-section window must be one interval");
    const auto& iv = w.intervals()[0];
    if (!iv.lo.is_rational() || !iv.hi.is_rational())
        throw PreconditionError("cross-section window must have rational endpoints");
    const Rational c = iv.hi.rational_part();
    if (!(iv.lo.rational_part() == -c) || !(c.sign() > 0) || !(c < Rational(Int(1), Int(2))))
        throw PreconditionError("window must be [-c, c] with 0 < c < 1/2");

    // membership of an angle in the centered arc image of I_n on [0,1)
    auto in_interval_image = [&](const Rational& angle, int n) {
        const Rational half = c / Rational(s.level_product(n));
        return angle <= half || angle >= Rational(1) - half;
    };

    // direction (a): rho(w) lands in prod I_n for grid points w of W
    {
        const Int mlo = ceil(Rational(-c) * Rational(Int(grid_den)));
        const Int mhi = floor(c * Rational(Int(grid_den)));
        for (Int m = mlo; m <= mhi; ++m) {
            const SolPoint z = rho(Rational(m, Int(grid_den)), s);
            for (int n = 1; n <= s.depth(); ++n)
                if (!in_interval_image(z.angles[static_cast<std::size_t>(n - 1)], n)) return false;
        }
    }

    // direction (b): every compatible grid point of prod I_n is rho(w) with
    // w read off theta_1
    {
        const Int prod = s.level_product(s.depth());
        const Int den = Int(grid_den) * prod;
        // theta_N ranges over the two arcs of I_N's image
        const Rational half_n = c / Rational(prod);
        std::vector<std::pair<Rational, Rational>> segments = {
            {Rational(0), half_n}, {Rational(1) - half_n, Rational(1)}};
        for (const auto& [lo, hi] : segments) {
            const Int klo = ceil(lo * Rational(den));
            const Int khi = floor(hi * Rational(den));
            for (Int k = klo; k <= khi; ++k) {
                Rational theta{k, den};
                if (theta >= Rational(1)) continue;
                // build the compatible point upward from theta_N
                SolPoint z;
                z.angles.assign(static_cast<std::size_t>(s.depth()), Rational(0));
                z.angles[static_cast<std::size_t>(s.depth() - 1)] = theta;
                for (int n = s.depth() - 1; n >= 1; --n)
                    z.angles[static_cast<std::size_t>(n - 1)] =
                        frac(Rational(s.q[static_cast<std::size_t>(n - 1)]) *
                             z.angles[static_cast<std::size_t>(n)]);
                // keep only points inside prod I_n
                bool inside = true;
                for (int n = 1; n <= s.depth() && inside; ++n)
                    inside = in_interval_image(z.angles[static_cast<std::size_t>(n - 1)], n);
                if (!inside) continue;
                // w from theta_1, folded into [-c, c]
                Rational wv = z.angles[0];
                if (wv > c) wv -= Rational(1);
                if (wv < -c || wv > c) return false;
                if (rho(wv, s) != z) return false;
            }
        }
    }
    return true;
}

/// All kernel elements (γ, -γ), γ in Z[1/p], with the group part in the box
/// p^{-e} Z_p and the real part in W.
inline std::vector<std::pair<Rational, Rational>> kernel_enumerate(const PrimeSchedule& s,
                                                                   std::int64_t v1_exponent,
                                                                   const Window1D& w) {
    if (!s.constant_prime())
        throw PreconditionError("kernel enumeration is implemented for constant-p schedules");
    const Prime p = s.q[0];
    // γ in p^{-e} Z: γ = m * p^{-e}; -γ in W bounds m
    const Rational step = prime_power(p, -v1_exponent);
    std::vector<std::pair<Rational, Rational>> out;
    for (const auto& iv : w.intervals()) {
        const Int mlo = ceil(-iv.hi / QuadExtReal(step));
        const Int mhi = floor(-iv.lo / QuadExtReal(step));
        for (Int m = mlo; m <= mhi; ++m) {
            const Rational gamma = Rational(m) * step;
            out.push_back({gamma, -gamma});
        }
    }
    return out;
}

} // namespace adelic_lab
