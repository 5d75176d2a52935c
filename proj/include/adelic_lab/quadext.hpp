#pragma once

#include <cmath>
#include <ostream>
#include <string>

#include "adelic_lab/rational.hpp"

namespace adelic_lab {

/// a + b*sqrt(k) with rational a, b and squarefree k >= 0. Square factors of
/// k are folded into b on construction; k = 0 forces b = 0. Values with two
/// distinct irrational radicals never meet: mixed arithmetic is rejected.
class QuadExtReal {
public:
    QuadExtReal() : a_(0), b_(0), k_(0) {}
    QuadExtReal(Rational a) : a_(std::move(a)), b_(0), k_(0) {}
    QuadExtReal(int a) : a_(a), b_(0), k_(0) {}
    QuadExtReal(Rational a, Rational b, Int k) : a_(std::move(a)), b_(std::move(b)), k_(std::move(k)) {
        if (k_ < 0) throw PreconditionError("negative radicand");
        if (b_.is_zero()) {
            k_ = 0;
            return;
        }
        // extract the square part of k
        Int square = 1;
        for (Int d = 2; d * d <= k_; ++d) {
            while (k_ % (d * d) == 0) {
                k_ /= d * d;
                square *= d;
            }
        }
        if (square != 1) b_ *= Rational(square);
        if (k_ <= 1) {
            // sqrt(0) = 0, sqrt(1) = 1: fold into the rational part
            a_ += (k_ == 1) ? b_ : Rational(0);
            b_ = Rational(0);
            k_ = 0;
        }
    }

    const Rational& rational_part() const { return a_; }
    const Rational& radical_coeff() const { return b_; }
    const Int& radicand() const { return k_; }
    bool is_rational() const { return b_.is_zero(); }

    /// Exact sign of a + b*sqrt(k).
    int sign() const {
        const int sa = a_.sign();
        const int sb = b_.sign();
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // opposite signs: compare a^2 against b^2 k
        const Rational lhs = a_ * a_;
        const Rational rhs = b_ * b_ * Rational(k_);
        if (lhs == rhs) return 0;
        return lhs > rhs ? sa : sb;
    }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    friend QuadExtReal operator+(const QuadExtReal& x, const QuadExtReal& y) {
        Int k = joint_radicand(x, y);
        return QuadExtReal(x.a_ + y.a_, x.b_ + y.b_, k);
    }
    friend QuadExtReal operator-(const QuadExtReal& x, const QuadExtReal& y) {
        Int k = joint_radicand(x, y);
        return QuadExtReal(x.a_ - y.a_, x.b_ - y.b_, k);
    }
    QuadExtReal operator-() const { return QuadExtReal(-a_, -b_, k_); }
    friend QuadExtReal operator*(const QuadExtReal& x, const QuadExtReal& y) {
        Int k = joint_radicand(x, y);
        return QuadExtReal(x.a_ * y.a_ + x.b_ * y.b_ * Rational(k), x.a_ * y.b_ + x.b_ * y.a_, k);
    }
    friend QuadExtReal operator/(const QuadExtReal& x, const QuadExtReal& y) {
        Int k = joint_radicand(x, y);
        if (y.is_zero()) throw PreconditionError("division by zero");
        // multiply by the conjugate; the norm a^2 - b^2 k is nonzero for y != 0
        const Rational norm = y.a_ * y.a_ - y.b_ * y.b_ * Rational(k);
        return QuadExtReal((x.a_ * y.a_ - x.b_ * y.b_ * Rational(k)) / norm,
                           (x.b_ * y.a_ - x.a_ * y.b_) / norm, k);
    }

    friend bool operator==(const QuadExtReal& x, const QuadExtReal& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.k_ == y.k_;
    }
    friend bool operator!=(const QuadExtReal& x, const QuadExtReal& y) { return !(x == y); }
    friend bool operator<(const QuadExtReal& x, const QuadExtReal& y) {
        return (x - y).sign() < 0;
    }
    friend bool operator>(const QuadExtReal& x, const QuadExtReal& y) { return y < x; }
    friend bool operator<=(const QuadExtReal& x, const QuadExtReal& y) { return !(y < x); }
    friend bool operator>=(const QuadExtReal& x, const QuadExtReal& y) { return !(x < y); }

    double to_double() const {
        double v = a_.to_double();
        if (!b_.is_zero()) v += b_.to_double() * std::sqrt(k_.convert_to<double>());
        return v;
    }
    long double to_long_double() const {
        long double v = a_.to_long_double();
        if (!b_.is_zero()) v += b_.to_long_double() * sqrtl(k_.convert_to<long double>());
        return v;
    }

    /// "a+b√k" (ASCII variant "a+b*sqrt(k)" accepted by the parser).
    std::string str(bool ascii = false) const {
        if (b_.is_zero()) return a_.str();
        std::string s = a_.str();
        s += (b_.sign() < 0) ? "-" : "+";
        const Rational babs = abs(b_);
        if (!(babs == Rational(1))) s += babs.str();
        s += ascii ? "*sqrt(" + k_.str() + ")" : std::string("\xE2\x88\x9A") + k_.str();
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const QuadExtReal& x) {
        return os << x.str();
    }

private:
    static Int joint_radicand(const QuadExtReal& x, const QuadExtReal& y) {
        if (x.b_.is_zero()) return y.k_;
        if (y.b_.is_zero()) return x.k_;
        if (x.k_ != y.k_)
            throw PreconditionError("mixed radicals " + x.k_.str() + " and " + y.k_.str());
        return x.k_;
    }

    Rational a_;
    Rational b_;
    Int k_;
};

inline int compare_quad(const QuadExtReal& x, const QuadExtReal& y) { return (x - y).sign(); }

/// Exact floor of a + b*sqrt(k): candidate from integer-sqrt bounds, then
/// corrected by exact comparisons.
inline Int floor(const QuadExtReal& x) {
    if (x.is_rational()) return floor(x.rational_part());
    const Rational& b = x.radical_coeff();
    // |b|*sqrt(k) = sqrt(num^2 k) / den
    const Int s2 = b.num() * b.num() * x.radicand();
    const Int root = boost::multiprecision::sqrt(s2); // floor sqrt
    Rational radical_approx(root, b.den());
    if (b.sign() < 0) radical_approx = -radical_approx;
    Int n = floor(x.rational_part() + radical_approx);
    while (QuadExtReal(Rational(n)) > x) --n;
    while (QuadExtReal(Rational(n + 1)) <= x) ++n;
    return n;
}

inline Int ceil(const QuadExtReal& x) { return -floor(-x); }

inline QuadExtReal abs(const QuadExtReal& x) { return x.sign() < 0 ? -x : x; }

inline QuadExtReal min(const QuadExtReal& x, const QuadExtReal& y) { return x <= y ? x : y; }
inline QuadExtReal max(const QuadExtReal& x, const QuadExtReal& y) { return x >= y ? x : y; }

} // namespace adelic_lab
