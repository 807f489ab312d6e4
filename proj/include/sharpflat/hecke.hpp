#pragma once

#include <cstdint>
#include <optional>

#include "sharpflat/padic.hpp"
#include "sharpflat/valq.hpp"

namespace sharpflat {

// Hecke data of a weight-two eigenform at a good prime:
// alpha, beta are the roots of X^2 - ap X + eps p.
struct HeckeData {
    uint64_t p = 3;
    long long ap = 0;
    int eps = 1;           // eps(p), a unit (+-1 for rational forms)
    long long level_Nf = 0;  // level of the form (for the functional equation)
    int eps_minus1 = 1;    // eps(-1); trivial nebentype for elliptic curves

    ValQ v() const {  // v = ord_p(ap); infinity when ap = 0
        if (ap == 0) return ValQ::infinity();
        long long a = ap < 0 ? -ap : ap;
        long k = 0;
        while (a % (long long)p == 0) {
            a /= (long long)p;
            ++k;
        }
        return ValQ(k);
    }
    bool ordinary() const { return ap % (long long)p != 0; }
    bool supersingular() const { return !ordinary(); }
};

// x + y*alpha with alpha^2 = ap*alpha - eps*p.
class QuadExt {
  public:
    QuadExt() = default;
    QuadExt(Zp x, Zp y, const HeckeData& h) : x_(x), y_(y), ap_(h.ap), eps_(h.eps) {}

    static QuadExt from_zp(const Zp& x, const HeckeData& h) {
        return QuadExt(x, x.zero_like(), h);
    }
    static QuadExt alpha(const HeckeData& h, int prec) {
        return QuadExt(Zp::zero(h.p).cap_abs_prec(prec + 4), Zp::one(h.p).cap_abs_prec(prec + 4), h);
    }
    static QuadExt beta(const HeckeData& h, int prec) {
        // beta = ap - alpha
        return QuadExt(Zp::from_int(h.p, h.ap, prec + 4), -Zp::one(h.p).cap_abs_prec(prec + 4), h);
    }

    const Zp& x() const { return x_; }
    const Zp& y() const { return y_; }
    uint64_t prime() const { return x_.prime(); }

    QuadExt conj() const;  // alpha -> ap - alpha

    QuadExt operator+(const QuadExt& o) const;
    QuadExt operator-(const QuadExt& o) const;
    QuadExt operator-() const;
    QuadExt operator*(const QuadExt& o) const;
    QuadExt inv() const;
    QuadExt pow(long e) const;  // negative exponents allowed

    Zp norm() const;  // z * conj(z), lands in Z_p

    bool is_zero_res() const { return x_.is_zero_res() && y_.is_zero_res(); }
    int abs_prec() const { return std::min(x_.abs_prec(), y_.abs_prec()); }
    bool congruent(const QuadExt& o, int digits) const {
        return x_.congruent(o.x_, digits) && y_.congruent(o.y_, digits);
    }

    QuadExt zero_like() const { return QuadExt(x_.zero_like(), x_.zero_like(), hecke()); }
    QuadExt one_like() const { return QuadExt(x_.one_like(), x_.zero_like(), hecke()); }

    HeckeData hecke() const {
        HeckeData h;
        h.p = x_.prime();
        h.ap = ap_;
        h.eps = eps_;
        return h;
    }

  private:
    Zp x_, y_;
    long long ap_ = 0;
    int eps_ = 1;
};

// ord_p on Q_p(alpha): half the norm valuation when the Hecke polynomial is
// irreducible over Q_p; via the Hensel-lifted unit root when it splits.
ValQ ord_quad(const QuadExt& z);

// Unit root of X^2 - ap X + eps p when ord(ap) = 0 (Hensel lift from ap mod p).
std::optional<Zp> hensel_unit_root(const HeckeData& h, int prec);

}  // namespace sharpflat
