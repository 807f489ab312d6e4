#pragma once

#include <boost/rational.hpp>
#include <compare>
#include <cstdint>
#include <ostream>

namespace sharpflat {

using Rat = boost::rational<long long>;

// Element of Q u {+infinity}, the value semiring for p-adic valuations.
// Closed under min and +; infinity is absorbing for +.
struct ValQ {
    Rat q{0};
    bool inf = false;

    ValQ() = default;
    ValQ(long long n) : q(n) {}
    ValQ(long long n, long long d) : q(n, d) {}
    explicit ValQ(Rat r) : q(r) {}
    static ValQ infinity() {
        ValQ v;
        v.inf = true;
        return v;
    }

    bool is_finite() const { return !inf; }

    ValQ operator+(const ValQ& o) const {
        if (inf || o.inf) return infinity();
        return ValQ(q + o.q);
    }
    ValQ operator-(const ValQ& o) const {
        if (inf) return infinity();
        return ValQ(q - o.q);
    }
    ValQ operator*(long long k) const {
        if (inf) return infinity();
        return ValQ(q * k);
    }

    bool operator==(const ValQ& o) const {
        if (inf || o.inf) return inf == o.inf;
        return q == o.q;
    }
    bool operator!=(const ValQ& o) const { return !(*this == o); }
    bool operator<(const ValQ& o) const {
        if (inf) return false;
        if (o.inf) return true;
        return q < o.q;
    }
    bool operator<=(const ValQ& o) const { return *this < o || *this == o; }
    bool operator>(const ValQ& o) const { return o < *this; }
    bool operator>=(const ValQ& o) const { return o <= *this; }
};

inline ValQ vmin(const ValQ& a, const ValQ& b) { return a < b ? a : b; }

inline std::ostream& operator<<(std::ostream& os, const ValQ& v) {
    if (v.inf) return os << "inf";
    os << v.q.numerator();
    if (v.q.denominator() != 1) os << "/" << v.q.denominator();
    return os;
}

// A valuation-matrix entry: either an exact valuation or a lower bound ">= v".
// The paper's supersingular calculations genuinely return mixed matrices.
struct ValEntry {
    ValQ v;
    bool lower_bound = false;

    ValEntry() = default;
    ValEntry(ValQ x, bool lb = false) : v(x), lower_bound(lb) {}

    ValEntry operator+(const ValEntry& o) const {
        return ValEntry(v + o.v, lower_bound || o.lower_bound);
    }
    bool operator==(const ValEntry& o) const {
        return v == o.v && lower_bound == o.lower_bound;
    }
};

// min in the (exact | ">=") lattice: the result is exact iff some exact
// candidate is <= every lower bound.
inline ValEntry vmin(const ValEntry& a, const ValEntry& b) {
    ValQ m = vmin(a.v, b.v);
    bool exact_hit = (!a.lower_bound && a.v == m) || (!b.lower_bound && b.v == m);
    return ValEntry(m, !exact_hit);
}

inline std::ostream& operator<<(std::ostream& os, const ValEntry& e) {
    if (e.lower_bound) os << ">=";
    return os << e.v;
}

}  // namespace sharpflat
