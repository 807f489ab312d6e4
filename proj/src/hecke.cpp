#include "sharpflat/hecke.hpp"

namespace sharpflat {

QuadExt QuadExt::conj() const {
    // alpha -> ap - alpha: x + y*ap, -y
    Zp ap = Zp::from_int(prime(), ap_, max_prec_for(prime()));
    return QuadExt(x_ + y_ * ap, -y_, hecke());
}

QuadExt QuadExt::operator+(const QuadExt& o) const { return QuadExt(x_ + o.x_, y_ + o.y_, hecke()); }
QuadExt QuadExt::operator-(const QuadExt& o) const { return QuadExt(x_ - o.x_, y_ - o.y_, hecke()); }
QuadExt QuadExt::operator-() const { return QuadExt(-x_, -y_, hecke()); }

QuadExt QuadExt::operator*(const QuadExt& o) const {
    // (x1 + y1 a)(x2 + y2 a) = x1x2 - eps p y1y2 + (x1y2 + x2y1 + ap y1y2) a
    uint64_t p = prime();
    Zp ap = Zp::from_int(p, ap_, max_prec_for(p));
    Zp ep = Zp::from_int(p, eps_ * (long long)p, max_prec_for(p));
    Zp yy = y_ * o.y_;
    return QuadExt(x_ * o.x_ - ep * yy, x_ * o.y_ + o.x_ * y_ + ap * yy, hecke());
}

Zp QuadExt::norm() const {
    // z zbar = x^2 + ap x y + eps p y^2
    uint64_t p = prime();
    Zp ap = Zp::from_int(p, ap_, max_prec_for(p));
    Zp ep = Zp::from_int(p, eps_ * (long long)p, max_prec_for(p));
    return x_ * x_ + ap * x_ * y_ + ep * y_ * y_;
}

QuadExt QuadExt::inv() const {
    // 1/z = conj(z) / norm(z)
    Zp n = norm();
    QuadExt c = conj();
    return QuadExt(c.x().div(n), c.y().div(n), hecke());
}

QuadExt QuadExt::pow(long e) const {
    QuadExt base = e < 0 ? inv() : *this;
    unsigned long k = e < 0 ? (unsigned long)(-e) : (unsigned long)e;
    QuadExt r = one_like();
    while (k) {
        if (k & 1) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

std::optional<Zp> hensel_unit_root(const HeckeData& h, int prec) {
    if (h.ap % (long long)h.p == 0) return std::nullopt;
    // f(X) = X^2 - ap X + eps p; root == ap mod p, f'(root) == ap != 0 mod p
    int A = std::min(prec, max_prec_for(h.p));
    Zp x = Zp::from_int(h.p, h.ap, A);
    Zp ap = Zp::from_int(h.p, h.ap, A);
    Zp ep = Zp::from_int(h.p, h.eps * (long long)h.p, A);
    for (int i = 0; i < A + 2; ++i) {
        Zp f = x * x - ap * x + ep;
        if (f.is_zero_res()) break;
        Zp fp = x + x - ap;
        x = x - f.div(fp);
    }
    return x;
}

ValQ ord_quad(const QuadExt& z) {
    if (z.is_zero_res())
        throw PrecisionExhausted("ord_quad: zero to working precision in both coordinates");
    HeckeData h = z.hecke();
    if (h.ordinary()) {
        // split: evaluate at the unit root
        auto r = hensel_unit_root(h, z.abs_prec() + 4);
        Zp val = z.x() + z.y() * (*r);
        return ValQ(val.ord_or_throw());
    }
    Zp n = z.norm();
    long o = n.ord_or_throw();
    return ValQ(o, 2);
}

}  // namespace sharpflat
