#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

#include "adelic_lab/errors.hpp"

namespace adelic_lab {

using Int = boost::multiprecision::cpp_int;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

/// Floor division with positive divisor.
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Int ceil_div(const Int& a, const Int& b) { return -floor_div(-a, b); }

inline Int pow_int(Int base, std::uint64_t e) {
    Int r = 1;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (std::int64_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

inline void require_prime(std::int64_t p) {
    if (!is_prime(p)) throw PreconditionError("not a prime: " + std::to_string(p));
}

/// Exact fraction with arbitrary-precision parts. Always normalized:
/// denominator > 0 and gcd(|num|, den) = 1. Equality is structural.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(int n) : num_(n), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(Int n) : num_(std::move(n)), den_(1) {}
    Rational(Int n, Int d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    const Int& num() const { return num_; }
    const Int& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

    friend Rational operator+(const Rational& x, const Rational& y) {
        return Rational(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
    }
    friend Rational operator-(const Rational& x, const Rational& y) {
        return Rational(x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_);
    }
    friend Rational operator*(const Rational& x, const Rational& y) {
        return Rational(x.num_ * y.num_, x.den_ * y.den_);
    }
    friend Rational operator/(const Rational& x, const Rational& y) {
        if (y.num_ == 0) throw PreconditionError("division by zero rational");
        return Rational(x.num_ * y.den_, x.den_ * y.num_);
    }
    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    Rational& operator+=(const Rational& y) { return *this = *this + y; }
    Rational& operator-=(const Rational& y) { return *this = *this - y; }
    Rational& operator*=(const Rational& y) { return *this = *this * y; }
    Rational& operator/=(const Rational& y) { return *this = *this / y; }

    friend bool operator==(const Rational& x, const Rational& y) {
        return x.num_ == y.num_ && x.den_ == y.den_;
    }
    friend bool operator!=(const Rational& x, const Rational& y) { return !(x == y); }
    friend bool operator<(const Rational& x, const Rational& y) {
        return x.num_ * y.den_ < y.num_ * x.den_;
    }
    friend bool operator>(const Rational& x, const Rational& y) { return y < x; }
    friend bool operator<=(const Rational& x, const Rational& y) { return !(y < x); }
    friend bool operator>=(const Rational& x, const Rational& y) { return !(x < y); }

    /// Text form "a/b", or "a" when the denominator is 1.
    std::string str() const {
        std::string s = num_.str();
        if (den_ != 1) s += "/" + den_.str();
        return s;
    }

    double to_double() const {
        return num_.convert_to<double>() / den_.convert_to<double>();
    }
    long double to_long_double() const {
        return num_.convert_to<long double>() / den_.convert_to<long double>();
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& q) {
        return os << q.str();
    }

private:
    void normalize() {
        if (den_ == 0) throw PreconditionError("zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        Int g = boost::multiprecision::gcd(abs_int(num_), den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    Int num_;
    Int den_;
};

inline Rational abs(const Rational& q) { return q.sign() < 0 ? -q : q; }

inline Int floor(const Rational& q) { return floor_div(q.num(), q.den()); }
inline Int ceil(const Rational& q) { return ceil_div(q.num(), q.den()); }

/// Fractional part in [0, 1).
inline Rational frac(const Rational& q) { return q - Rational(floor(q)); }

inline Rational min(const Rational& x, const Rational& y) { return x <= y ? x : y; }
inline Rational max(const Rational& x, const Rational& y) { return x >= y ? x : y; }

/// p^e as an exact rational, e of either sign.
inline Rational prime_power(std::int64_t p, std::int64_t e) {
    if (e >= 0) return Rational(pow_int(Int(p), static_cast<std::uint64_t>(e)));
    return Rational(Int(1), pow_int(Int(p), static_cast<std::uint64_t>(-e)));
}

/// Integer or the +infinity sentinel; the valuation of zero is infinite and
/// refuses arithmetic.
class ExtendedInt {
public:
    static ExtendedInt infinity() {
        ExtendedInt v;
        v.infinite_ = true;
        return v;
    }
    ExtendedInt() : infinite_(false), value_(0) {}
    ExtendedInt(std::int64_t v) : infinite_(false), value_(v) {}

    bool is_infinite() const { return infinite_; }
    std::int64_t value() const {
        if (infinite_) throw PreconditionError("arithmetic on infinite valuation");
        return value_;
    }
    friend bool operator==(const ExtendedInt& a, const ExtendedInt& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }
    friend bool operator<(const ExtendedInt& a, const ExtendedInt& b) {
        if (a.infinite_) return false;
        if (b.infinite_) return true;
        return a.value_ < b.value_;
    }
    friend bool operator>=(const ExtendedInt& a, const ExtendedInt& b) { return !(a < b); }
    std::string str() const { return infinite_ ? "inf" : std::to_string(value_); }

private:
    bool infinite_;
    std::int64_t value_;
};

inline std::int64_t int_p_valuation(Int n, std::int64_t p) {
    std::int64_t v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

/// v with q = p^v * (unit prime to p); +infinity for q = 0.
inline ExtendedInt p_valuation(const Rational& q, std::int64_t p) {
    require_prime(p);
    if (q.is_zero()) return ExtendedInt::infinity();
    return ExtendedInt(int_p_valuation(q.num(), p) - int_p_valuation(q.den(), p));
}

/// p^{-v_p(q)}; 0 for q = 0.
inline Rational p_norm(const Rational& q, std::int64_t p) {
    ExtendedInt v = p_valuation(q, p);
    if (v.is_infinite()) return Rational(0);
    return prime_power(p, -v.value());
}

/// Exact decimal rendering with the given number of significant digits,
/// round half away from zero. Presentation only; never feeds computation.
inline std::string decimal_string(const Rational& q, int sig = 12) {
    if (q.is_zero()) return "0";
    const bool neg = q.sign() < 0;
    Int n = abs_int(q.num());
    Int d = q.den();
    // exponent: number of digits before the decimal point, may be <= 0
    int expo = 0;
    {
        Int lo = n, hi = d;
        while (lo >= hi) {
            hi *= 10;
            ++expo;
        }
        while (lo * 10 < hi) {
            // value < 10^{expo-1}; shift down
            lo *= 10;
            --expo;
        }
    }
    // digits = round(n/d * 10^{sig - expo})
    Int scaled;
    if (sig - expo >= 0)
        scaled = n * pow_int(10, static_cast<std::uint64_t>(sig - expo));
    else {
        d = d * pow_int(10, static_cast<std::uint64_t>(expo - sig));
        scaled = n;
    }
    Int digits = (2 * scaled + d) / (2 * d); // round half away from zero
    std::string ds = digits.str();
    if (static_cast<int>(ds.size()) > sig) {
        // rounding carried into one extra digit, e.g. 999.95 -> 1000
        ++expo;
        ds.pop_back();
    }
    std::string out;
    if (expo > 0 && expo <= sig) {
        out = ds.substr(0, static_cast<std::size_t>(expo));
        std::string rest = ds.substr(static_cast<std::size_t>(expo));
        while (!rest.empty() && rest.back() == '0') rest.pop_back();
        if (!rest.empty()) out += "." + rest;
    } else if (expo <= 0 && expo > -4) {
        out = "0." + std::string(static_cast<std::size_t>(-expo), '0') + ds;
        while (out.back() == '0' && out[out.size() - 2] != '.') out.pop_back();
    } else {
        // scientific
        std::string mant = ds.substr(0, 1);
        std::string rest = ds.substr(1);
        while (!rest.empty() && rest.back() == '0') rest.pop_back();
        if (!rest.empty()) mant += "." + rest;
        out = mant + "e" + std::to_string(expo - 1);
    }
    return neg ? "-" + out : out;
}

} // namespace adelic_lab
