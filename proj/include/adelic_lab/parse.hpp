#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "adelic_lab/arcset.hpp"
#include "adelic_lab/boxgeo.hpp"
#include "adelic_lab/cutproject.hpp"
#include "adelic_lab/density.hpp"
#include "adelic_lab/solenoid.hpp"
#include "adelic_lab/window.hpp"

namespace adelic_lab {

namespace detail {

struct Cursor {
    std::string_view s;
    std::size_t pos = 0;

    bool done() const { return pos >= s.size(); }
    char peek() const { return done() ? '\0' : s[pos]; }
    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool eat(std::string_view word) {
        if (s.substr(pos, word.size()) == word) {
            pos += word.size();
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", pos);
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos); }
};

inline Int parse_integer(Cursor& c) {
    std::size_t start = c.pos;
    bool neg = c.eat('-');
    if (!neg) c.eat('+');
    std::string digits;
    while (!c.done() && c.peek() >= '0' && c.peek() <= '9') digits += c.s[c.pos++];
    if (digits.empty()) throw ParseError("expected integer", start);
    Int v(digits);
    return neg ? Int(-v) : v;
}

inline Rational parse_rational_at(Cursor& c) {
    Int num = parse_integer(c);
    if (c.eat('/')) {
        Int den = parse_integer(c);
        return Rational(num, den);
    }
    return Rational(num);
}

inline QuadExtReal parse_quad_at(Cursor& c) {
    auto radical = [&]() -> Int {
        // "√k", "*sqrt(k)", "sqrt(k)"
        if (c.eat("\xE2\x88\x9A")) return parse_integer(c);
        std::size_t save = c.pos;
        c.eat('*');
        if (c.eat("sqrt(")) {
            Int k = parse_integer(c);
            c.expect(')');
            return k;
        }
        c.pos = save;
        return Int(-1); // no radical here
    };
    // forms: "a", "a+b√k", "a-√k", "b√k", "√k"
    if (c.peek() == '\xE2' || c.s.substr(c.pos, 5) == "sqrt(") {
        Int k = radical();
        return QuadExtReal(Rational(0), Rational(1), k);
    }
    Rational a = parse_rational_at(c);
    {
        // "b√k" with no separator: a is actually the coefficient
        std::size_t save = c.pos;
        Int k = radical();
        if (k >= 0) return QuadExtReal(Rational(0), a, k);
        c.pos = save;
    }
    if (c.peek() == '+' || c.peek() == '-') {
        std::size_t save = c.pos;
        const bool neg = c.peek() == '-';
        ++c.pos;
        Rational b(1);
        if (c.peek() >= '0' && c.peek() <= '9') b = parse_rational_at(c);
        Int k = radical();
        if (k >= 0) return QuadExtReal(a, neg ? -b : b, k);
        c.pos = save; // not a radical tail; leave for the caller
    }
    return QuadExtReal(a);
}

} // namespace detail

inline Rational parse_rational(std::string_view s) {
    detail::Cursor c{s};
    Rational r = detail::parse_rational_at(c);
    if (!c.done()) c.fail("trailing characters in rational");
    return r;
}

inline QuadExtReal parse_quadext(std::string_view s) {
    detail::Cursor c{s};
    QuadExtReal q = detail::parse_quad_at(c);
    if (!c.done()) c.fail("trailing characters in number");
    return q;
}

/// "p1:k1,p2:k2"; the empty string is the trivial profile.
inline ValuationProfile parse_profile(std::string_view s) {
    ValuationProfile v;
    if (s.empty()) return v;
    detail::Cursor c{s};
    for (;;) {
        Int p = detail::parse_integer(c);
        c.expect(':');
        Int k = detail::parse_integer(c);
        v.set(p.convert_to<Prime>(), k.convert_to<std::int64_t>());
        if (!c.eat(',')) break;
    }
    if (!c.done()) c.fail("trailing characters in profile");
    return v;
}

inline AdelicBox parse_box(std::string_view s) { return AdelicBox{parse_profile(s)}; }

/// "[a,b];[c,d]" with QuadExtReal endpoints; an inverted interval is a
/// grammar error, a zero-measure window a domain one.
inline Window1D parse_window(std::string_view s) {
    detail::Cursor c{s};
    std::vector<Interval> ivs;
    for (;;) {
        c.expect('[');
        QuadExtReal lo = detail::parse_quad_at(c);
        c.expect(',');
        QuadExtReal hi = detail::parse_quad_at(c);
        c.expect(']');
        if (lo > hi) c.fail("empty interval: lo > hi");
        ivs.push_back({std::move(lo), std::move(hi)});
        if (!c.eat(';')) break;
    }
    if (!c.done()) c.fail("trailing characters in window");
    return Window1D(std::move(ivs));
}

/// "a,b;c,d" with rational endpoints in [0,1); b < a wraps through 0.
inline ArcSet parse_arcs(std::string_view s) {
    detail::Cursor c{s};
    std::vector<std::pair<Rational, Rational>> raw;
    for (;;) {
        Rational lo = detail::parse_rational_at(c);
        c.expect(',');
        Rational hi = detail::parse_rational_at(c);
        raw.push_back({std::move(lo), std::move(hi)});
        if (!c.eat(';')) break;
    }
    if (!c.done()) c.fail("trailing characters in arc list");
    return ArcSet::from_raw(std::move(raw));
}

/// "[a,b]x[c,d];[e,f]x[g,h]": boxes separated by ';', sides by 'x'.
inline BoxUnion parse_boxunion(std::string_view s) {
    detail::Cursor c{s};
    std::vector<BoxNd> boxes;
    int dim = -1;
    for (;;) {
        BoxNd b;
        for (;;) {
            c.expect('[');
            Rational lo = detail::parse_rational_at(c);
            c.expect(',');
            Rational hi = detail::parse_rational_at(c);
            c.expect(']');
            b.sides.push_back({std::move(lo), std::move(hi)});
            if (!c.eat('x')) break;
        }
        if (dim < 0)
            dim = static_cast<int>(b.sides.size());
        else if (dim != static_cast<int>(b.sides.size()))
            c.fail("boxes with mixed dimensions");
        boxes.push_back(std::move(b));
        if (!c.eat(';')) break;
    }
    if (!c.done()) c.fail("trailing characters in box union");
    return BoxUnion(dim, std::move(boxes));
}

inline std::string boxunion_str(const BoxUnion& w) {
    std::string s;
    for (const auto& b : w.boxes()) {
        if (!s.empty()) s += ";";
        std::string bs;
        for (const auto& [lo, hi] : b.sides) {
            if (!bs.empty()) bs += "x";
            bs += "[" + lo.str() + "," + hi.str() + "]";
        }
        s += bs;
    }
    return s;
}

/// "Z[1/{2,3}](u=2:1,t=3/2)@G=prod:2,3", "Z[1/2](u=,t=1)@G=qp:2",
/// "Z[1/*](u=2:1,t=1)@G=adelic".
inline LatticeSpec parse_lattice(std::string_view s) {
    detail::Cursor c{s};
    if (!c.eat("Z[1/")) c.fail("lattice must start with Z[1/");
    std::vector<Prime> q_primes;
    bool all_primes = false;
    if (c.eat('*')) {
        all_primes = true;
    } else if (c.eat('{')) {
        for (;;) {
            q_primes.push_back(detail::parse_integer(c).convert_to<Prime>());
            if (!c.eat(',')) break;
        }
        c.expect('}');
    } else {
        q_primes.push_back(detail::parse_integer(c).convert_to<Prime>());
    }
    c.expect(']');
    c.expect('(');
    if (!c.eat("u=")) c.fail("expected u=");
    ValuationProfile u;
    while (c.peek() >= '0' && c.peek() <= '9') {
        Int p = detail::parse_integer(c);
        c.expect(':');
        Int k = detail::parse_integer(c);
        u.set(p.convert_to<Prime>(), k.convert_to<std::int64_t>());
        if (!c.eat(',')) break;
        if (c.peek() == 't') {
            // the t= key follows; undo the comma consumption semantics
            break;
        }
    }
    if (!c.eat("t=")) {
        c.eat(',');
        if (!c.eat("t=")) c.fail("expected t=");
    }
    Rational t = detail::parse_rational_at(c);
    c.expect(')');
    if (!c.eat("@G=")) c.fail("expected @G=");
    GroupKind kind;
    std::vector<Prime> group;
    if (c.eat("adelic")) {
        kind = GroupKind::Adelic;
        if (!all_primes) c.fail("adelic lattices use Z[1/*]");
    } else if (c.eat("qp:")) {
        kind = GroupKind::SingleP;
        group.push_back(detail::parse_integer(c).convert_to<Prime>());
        if (all_primes || q_primes != group) c.fail("Q must equal {p} for G=qp");
    } else if (c.eat("prod:")) {
        kind = GroupKind::MultiP;
        for (;;) {
            group.push_back(detail::parse_integer(c).convert_to<Prime>());
            if (!c.eat(',')) break;
        }
        std::vector<Prime> sorted_q = q_primes;
        std::sort(sorted_q.begin(), sorted_q.end());
        std::vector<Prime> sorted_g = group;
        std::sort(sorted_g.begin(), sorted_g.end());
        if (all_primes || sorted_q != sorted_g) c.fail("Q must equal the product primes");
    } else {
        c.fail("unknown group kind");
    }
    if (!c.done()) c.fail("trailing characters in lattice");
    return LatticeSpec(kind, group, std::move(u), std::move(t));
}

inline std::string lattice_str(const LatticeSpec& lat) {
    std::string s = "Z[1/";
    if (lat.kind == GroupKind::Adelic) {
        s += "*";
    } else if (lat.group_primes.size() == 1) {
        s += std::to_string(lat.group_primes[0]);
    } else {
        s += "{";
        for (std::size_t i = 0; i < lat.group_primes.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(lat.group_primes[i]);
        }
        s += "}";
    }
    s += "](u=" + lat.u.str() + ",t=" + lat.t.str() + ")@G=";
    switch (lat.kind) {
        case GroupKind::Adelic:
            s += "adelic";
            break;
        case GroupKind::SingleP:
            s += "qp:" + std::to_string(lat.group_primes[0]);
            break;
        case GroupKind::MultiP: {
            s += "prod:";
            for (std::size_t i = 0; i < lat.group_primes.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(lat.group_primes[i]);
            }
            break;
        }
    }
    return s;
}

/// "2^8" or "q1,q2,q3" for solenoid schedules.
inline PrimeSchedule parse_prime_schedule(std::string_view s) {
    detail::Cursor c{s};
    Int first = detail::parse_integer(c);
    if (c.eat('^')) {
        Int depth = detail::parse_integer(c);
        if (!c.done()) c.fail("trailing characters in schedule");
        return PrimeSchedule::constant(first.convert_to<Prime>(), depth.convert_to<int>());
    }
    std::vector<Prime> qs{first.convert_to<Prime>()};
    while (c.eat(',')) qs.push_back(detail::parse_integer(c).convert_to<Prime>());
    if (!c.done()) c.fail("trailing characters in schedule");
    return PrimeSchedule(std::move(qs));
}

/// "standard", "full", "full:97", or "2,3,5+1" (prime with optional +delay).
inline FolnerSchedule parse_folner_schedule(std::string_view s) {
    if (s == "standard" || s.empty()) return FolnerSchedule::standard();
    if (s == "full") return FolnerSchedule::full();
    detail::Cursor c{s};
    if (c.eat("full:")) {
        Int cutoff = detail::parse_integer(c);
        if (!c.done()) c.fail("trailing characters in schedule");
        return FolnerSchedule::full(cutoff.convert_to<Prime>());
    }
    std::vector<std::pair<Prime, int>> entries;
    for (;;) {
        Int p = detail::parse_integer(c);
        int delay = 0;
        if (c.eat('+')) delay = detail::parse_integer(c).convert_to<int>();
        entries.push_back({p.convert_to<Prime>(), delay});
        if (!c.eat(',')) break;
    }
    if (!c.done()) c.fail("trailing characters in schedule");
    return FolnerSchedule(std::move(entries));
}

/// "t1;t2;..." exact fractions.
inline SolPoint parse_solpoint(std::string_view s) {
    detail::Cursor c{s};
    SolPoint z;
    for (;;) {
        z.angles.push_back(detail::parse_rational_at(c));
        if (!c.eat(';')) break;
    }
    if (!c.done()) c.fail("trailing characters in solenoid point");
    return z;
}

} // namespace adelic_lab
