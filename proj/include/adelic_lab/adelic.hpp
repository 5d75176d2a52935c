#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "adelic_lab/rational.hpp"

namespace adelic_lab {

using Prime = std::int64_t;

/// Finitely supported map prime -> exponent.
///
/// This is the central modeling reduction of the library: finite adeles are
/// kept at valuation resolution only. Every quantity in scope -- box
/// membership, adelic norms, Haar measures of boxes, dilations -- depends
/// solely on the per-prime valuations of an adele's components, so unit
/// parts are never stored. Profile addition is pointwise, matching adele
/// multiplication.
class ValuationProfile {
public:
    ValuationProfile() = default;
    ValuationProfile(std::initializer_list<std::pair<Prime, std::int64_t>> init) {
        for (const auto& [p, k] : init) set(p, k);
    }

    void set(Prime p, std::int64_t k) {
        require_prime(p);
        if (k == 0)
            entries_.erase(p);
        else
            entries_[p] = k;
    }

    std::int64_t at(Prime p) const {
        auto it = entries_.find(p);
        return it == entries_.end() ? 0 : it->second;
    }

    const std::map<Prime, std::int64_t>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    bool all_nonnegative() const {
        for (const auto& [p, k] : entries_)
            if (k < 0) return false;
        return true;
    }

    std::vector<Prime> support() const {
        std::vector<Prime> s;
        s.reserve(entries_.size());
        for (const auto& [p, k] : entries_) s.push_back(p);
        return s;
    }

    friend ValuationProfile operator+(const ValuationProfile& x, const ValuationProfile& y) {
        ValuationProfile r = x;
        for (const auto& [p, k] : y.entries_) {
            auto it = r.entries_.find(p);
            std::int64_t v = (it == r.entries_.end() ? 0 : it->second) + k;
            if (v == 0)
                r.entries_.erase(p);
            else
                r.entries_[p] = v;
        }
        return r;
    }
    ValuationProfile operator-() const {
        ValuationProfile r;
        for (const auto& [p, k] : entries_) r.entries_[p] = -k;
        return r;
    }

    friend bool operator==(const ValuationProfile& x, const ValuationProfile& y) {
        return x.entries_ == y.entries_;
    }
    friend bool operator!=(const ValuationProfile& x, const ValuationProfile& y) {
        return !(x == y);
    }

    /// "p1:k1,p2:k2" over the sorted support; "" for the trivial profile.
    std::string str() const {
        std::string s;
        for (const auto& [p, k] : entries_) {
            if (!s.empty()) s += ",";
            s += std::to_string(p) + ":" + std::to_string(k);
        }
        return s;
    }

private:
    std::map<Prime, std::int64_t> entries_;
};

/// Valuation profile of a nonzero rational under the diagonal embedding.
inline ValuationProfile profile_of(const Rational& q) {
    if (q.is_zero()) throw PreconditionError("profile of zero");
    ValuationProfile v;
    auto factor = [&](Int n, int sgn) {
        for (Prime p = 2; n > 1; p == 2 ? p = 3 : p += 2) {
            if (p * p > n) {
                // remaining cofactor is prime
                if (n > Int(std::int64_t(1) << 62))
                    throw CapOverflow("prime factor exceeds 2^62 in profile_of");
                const Prime big = n.convert_to<Prime>();
                v.set(big, v.at(big) + sgn);
                break;
            }
            std::int64_t e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            if (e) v.set(p, v.at(p) + sgn * e);
        }
    };
    factor(abs_int(q.num()), +1);
    factor(q.den(), -1);
    return v;
}

/// F = prod_{p in supp} p^{-e_p} Z_p x prod_{p off supp} Z_p, a compact open
/// subgroup of the finite adeles for any integer exponents.
struct AdelicBox {
    ValuationProfile exponents;

    AdelicBox() = default;
    explicit AdelicBox(ValuationProfile e) : exponents(std::move(e)) {}
    AdelicBox(std::initializer_list<std::pair<Prime, std::int64_t>> init) : exponents(init) {}

    friend bool operator==(const AdelicBox& x, const AdelicBox& y) {
        return x.exponents == y.exponents;
    }
    friend bool operator!=(const AdelicBox& x, const AdelicBox& y) { return !(x == y); }

    std::string str() const { return exponents.str(); }
};

/// ||u||_fin = prod_p p^{-k_p}; 1 for the trivial profile.
inline Rational adelic_norm(const ValuationProfile& u) {
    Rational r(1);
    for (const auto& [p, k] : u.entries()) r *= prime_power(p, -k);
    return r;
}

/// Haar measure prod_p p^{e_p}, normalized so that m(Z_p) = 1.
inline Rational box_measure(const AdelicBox& f) {
    Rational r(1);
    for (const auto& [p, e] : f.exponents.entries()) r *= prime_power(p, e);
    return r;
}

/// FK: pointwise max of exponents, absent primes reading as 0 (boxes are
/// subgroups, so FK = F + K).
inline AdelicBox box_product(const AdelicBox& f, const AdelicBox& k) {
    ValuationProfile r;
    for (const auto& [p, e] : f.exponents.entries()) {
        std::int64_t m = std::max(e, k.exponents.at(p));
        if (m != 0) r.set(p, m);
    }
    for (const auto& [p, e] : k.exponents.entries()) {
        if (f.exponents.at(p) != 0) continue; // already handled
        std::int64_t m = std::max(e, std::int64_t(0));
        if (m != 0) r.set(p, m);
    }
    return AdelicBox(r);
}

/// m(FK)/m(F) = prod_p p^{max(e_p,f_p)-e_p}, exact.
inline Rational box_product_ratio(const AdelicBox& f, const AdelicBox& k) {
    Rational r(1);
    AdelicBox fk = box_product(f, k);
    for (const auto& [p, e] : f.exponents.entries()) {
        std::int64_t excess = fk.exponents.at(p) - e;
        if (excess != 0) r *= prime_power(p, excess);
    }
    for (const auto& [p, e] : fk.exponents.entries())
        if (f.exponents.at(p) == 0 && e != 0) r *= prime_power(p, e);
    return r;
}

/// Membership of a nonzero adele given by its valuation profile:
/// v_p >= -e_p for every prime (both default to 0 off support).
inline bool box_contains(const AdelicBox& f, const ValuationProfile& v) {
    for (const auto& [p, k] : v.entries())
        if (k < -f.exponents.at(p)) return false;
    for (const auto& [p, e] : f.exponents.entries())
        if (e < 0 && v.at(p) < -e) return false;
    return true;
}

inline bool box_subset(const AdelicBox& inner, const AdelicBox& outer) {
    for (const auto& [p, e] : inner.exponents.entries())
        if (e > outer.exponents.at(p)) return false;
    for (const auto& [p, e] : outer.exponents.entries())
        if (e < 0 && inner.exponents.at(p) > e) return false;
    return true;
}

} // namespace adelic_lab
