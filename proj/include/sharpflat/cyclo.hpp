#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sharpflat/errors.hpp"
#include "sharpflat/padic.hpp"
#include "sharpflat/valq.hpp"

namespace sharpflat {

// Z_p[zeta_{p^L}] = Z_p[X]/Phi_{p^L}(X), coefficients mod p^M (p^M < 2^63).
// Elements are coefficient vectors of length e = p^{L-1}(p-1).
// ord_p is exact below M via the (X-1)-adic expansion: the fractional parts
// j/e are pairwise distinct, so no cancellation is possible across digits.
class CycloField {
  public:
    using Elem = std::vector<uint64_t>;

    CycloField(uint64_t p, int level, int prec);

    uint64_t p() const { return p_; }
    int level() const { return L_; }
    int prec() const { return M_; }
    size_t deg() const { return e_; }
    uint64_t modulus() const { return q_; }
    long ram_index() const { return (long)e_; }  // ramification e(Q_p(zeta)/Q_p)

    Elem zero() const { return Elem(e_, 0); }
    Elem one() const;
    Elem from_int(long long v) const;
    Elem from_zp(const Zp& z) const;  // requires integral z with abs_prec >= M

    // zeta_{p^m} for 1 <= m <= L (embedding zeta_{p^m} = zeta_{p^L}^{p^{L-m}})
    Elem zeta(int m) const;
    // embed an element of the level-m subfield (given in its own power basis)
    Elem embed_from_level(const CycloField& sub, const Elem& x) const;

    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem scal(const Elem& a, long long c) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem pow(const Elem& a, unsigned long k) const;
    Elem mul_p_power(const Elem& a, int k) const;  // multiply by p^k, k >= 0

    bool is_zero(const Elem& a) const;

    // Phi_{p^i}(zeta_{p^n}) for n <= L (sparse sum of zeta powers)
    Elem phi_at_zeta(int i, int n) const;

    // exact ord_p if < M, else nullopt (PrecisionExhausted territory)
    std::optional<ValQ> ord(const Elem& a) const;
    ValQ ord_or_throw(const Elem& a) const;

    // Horner evaluation of a T-polynomial at T = zeta_{p^m} - 1 (coefficients
    // must be p-integral; certified digits = min coefficient precision vs M)
    struct EvalResult {
        Elem value;
        int certified;  // p-adic digits certified for the value
    };
    template <class PolyT>
    EvalResult eval_poly_at_zeta_minus_1(const PolyT& f, int m) const {
        Elem t = sub(zeta(m), one());
        Elem acc = zero();
        int cert = M_;
        for (long i = f.deg(); i >= 0; --i) {
            acc = mul(acc, t);
            const Zp& c = f.c[(size_t)i];
            cert = std::min(cert, c.abs_prec());
            acc = add(acc, from_zp(c.cap_abs_prec(M_)));
        }
        return {acc, cert};
    }

  private:
    uint64_t p_;
    int L_;
    int M_;
    size_t e_;
    uint64_t q_;  // p^M
};

// max precision usable for cyclotomic work at this p (p^M < 2^63)
int cyclo_max_prec(uint64_t p);

}  // namespace sharpflat
