#pragma once

#include <vector>

#include "sharpflat/errors.hpp"

namespace sharpflat {

// Dense polynomial in T over a precision-tracked ring (Zp or QuadExt).
// Coefficients ascending. A default-constructed Poly is the zero polynomial;
// ring constants are cloned from a model element.
template <class R>
struct Poly {
    std::vector<R> c;

    Poly() = default;
    explicit Poly(std::vector<R> cc) : c(std::move(cc)) { trim(); }

    static Poly zero() { return Poly(); }
    static Poly constant(const R& v) {
        Poly f;
        f.c.push_back(v);
        f.trim();
        return f;
    }

    bool is_zero_res() const {
        for (const auto& x : c)
            if (!x.is_zero_res()) return false;
        return true;
    }
    long deg() const { return (long)c.size() - 1; }  // -1 for zero

    R coeff(size_t k, const R& model) const { return k < c.size() ? c[k] : model.zero_like(); }

    void trim() {
        while (!c.empty() && c.back().is_zero_res()) c.pop_back();
    }

    Poly operator+(const Poly& o) const {
        Poly r;
        size_t n = std::max(c.size(), o.c.size());
        r.c.reserve(n);
        for (size_t i = 0; i < n; ++i) {
            if (i < c.size() && i < o.c.size())
                r.c.push_back(c[i] + o.c[i]);
            else if (i < c.size())
                r.c.push_back(c[i]);
            else
                r.c.push_back(o.c[i]);
        }
        r.trim();
        return r;
    }
    Poly operator-() const {
        Poly r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }

    Poly operator*(const Poly& o) const {
        if (c.empty() || o.c.empty()) return Poly();
        Poly r;
        r.c.assign(c.size() + o.c.size() - 1, c[0].zero_like());
        for (size_t i = 0; i < c.size(); ++i) {
            if (c[i].is_zero_res()) continue;
            for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] = r.c[i + j] + c[i] * o.c[j];
        }
        r.trim();
        return r;
    }

    Poly scale(const R& s) const {
        Poly r = *this;
        for (auto& x : r.c) x = x * s;
        r.trim();
        return r;
    }

    Poly mul_Tk(size_t k) const {
        if (c.empty()) return Poly();
        Poly r;
        r.c.assign(k, c[0].zero_like());
        r.c.insert(r.c.end(), c.begin(), c.end());
        return r;
    }

    Poly truncate(size_t order) const {  // keep T^0..T^{order}
        Poly r = *this;
        if (r.c.size() > order + 1) r.c.resize(order + 1);
        r.trim();
        return r;
    }

    // quotient/remainder by a divisor with unit leading coefficient
    std::pair<Poly, Poly> divrem(const Poly& d) const {
        if (d.c.empty()) throw NotAUnit("polynomial division by zero");
        Poly rem = *this;
        rem.trim();
        Poly q;
        if (rem.c.size() < d.c.size()) return {q, rem};
        R lead_inv = d.c.back().inv();
        q.c.assign(rem.c.size() - d.c.size() + 1, d.c.back().zero_like());
        for (long k = (long)rem.c.size() - (long)d.c.size(); k >= 0; --k) {
            size_t top = k + d.c.size() - 1;
            if (top >= rem.c.size() || rem.c[top].is_zero_res()) continue;
            R f = rem.c[top] * lead_inv;
            q.c[k] = f;
            for (size_t i = 0; i < d.c.size(); ++i) rem.c[k + i] = rem.c[k + i] - f * d.c[i];
        }
        q.trim();
        rem.trim();
        return {q, rem};
    }

    R eval(const R& t) const {
        if (c.empty()) return t.zero_like();
        R acc = c.back();
        for (long i = (long)c.size() - 2; i >= 0; --i) acc = acc * t + c[i];
        return acc;
    }

    Poly derivative() const {
        Poly r;
        for (size_t i = 1; i < c.size(); ++i) {
            R acc = c[i].zero_like();
            for (size_t j = 0; j < i; ++j) acc = acc + c[i];
            r.c.push_back(acc);
        }
        r.trim();
        return r;
    }

    bool congruent(const Poly& o, int digits, const R& model) const {
        size_t n = std::max(c.size(), o.c.size());
        for (size_t i = 0; i < n; ++i)
            if (!coeff(i, model).congruent(o.coeff(i, model), digits)) return false;
        return true;
    }
};

// (1+T)^k for k >= 0 over R, built from a model element.
template <class R>
Poly<R> one_plus_T_pow(size_t k, const R& model) {
    Poly<R> base;
    base.c = {model.one_like(), model.one_like()};
    Poly<R> out = Poly<R>::constant(model.one_like());
    while (k) {
        if (k & 1) out = out * base;
        base = base * base;
        k >>= 1;
    }
    return out;
}

// poly * (1+T)^{-shift}; the completed objects live here.
template <class R>
struct Laurent {
    Poly<R> num;
    long shift = 0;

    Laurent() = default;
    Laurent(Poly<R> f, long s = 0) : num(std::move(f)), shift(s) {}

    bool is_zero_res() const { return num.is_zero_res(); }

    Laurent operator+(const Laurent& o) const {
        if (num.is_zero_res()) return o;
        if (o.num.is_zero_res()) return *this;
        long s = std::max(shift, o.shift);
        const R& model = num.c[0];
        Poly<R> a = num * one_plus_T_pow(s - shift, model);
        Poly<R> b = o.num * one_plus_T_pow(s - o.shift, model);
        return Laurent(a + b, s);
    }
    Laurent operator-() const { return Laurent(-num, shift); }
    Laurent operator-(const Laurent& o) const { return *this + (-o); }
    Laurent operator*(const Laurent& o) const { return Laurent(num * o.num, shift + o.shift); }
    Laurent scale(const R& s) const { return Laurent(num.scale(s), shift); }
};

}  // namespace sharpflat
