#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sharpflat/cyclo.hpp"
#include "sharpflat/valq.hpp"

namespace sharpflat {

// 2x2 matrix over the (min, +) semiring with ">= x" lower-bound entries.
struct ValMatrix {
    std::array<ValEntry, 4> e;  // row-major [[0,1],[2,3]]

    static ValMatrix identity() {
        ValMatrix m;
        m.e = {ValEntry(ValQ(0)), ValEntry(ValQ::infinity()), ValEntry(ValQ::infinity()),
               ValEntry(ValQ(0))};
        return m;
    }
    ValEntry& at(int i, int j) { return e[2 * i + j]; }
    const ValEntry& at(int i, int j) const { return e[2 * i + j]; }
    bool operator==(const ValMatrix& o) const { return e == o.e; }
};

ValMatrix trop_mul(const ValMatrix& a, const ValMatrix& b);

// entrywise: does every exact entry match, and every lower-bound entry bound x from below?
bool dominates(const ValMatrix& exact, const ValMatrix& claimed);

// closed form [C] for v < 1/2 raised to the n (Lemma on powers of C)
ValMatrix c_power_val(ValQ v, int n);

// v_r profile of Phi_{p^n}(1+T): min(1, -log_p(r) p^{n-1}(p-1)); r given as
// p^{-1/rden} i.e. -log_p r = 1/rden.
ValQ v_r_phi(uint64_t p, int n, const Rat& minus_log_p_r);

// ---- the element a of the closed unit disk (cyclotomic realization) ----
// a = int_part * p^{p_exp} * (zeta_{p^level} - 1)^{pi_exp}
struct AParam {
    long long int_part = 1;
    int p_exp = 0;
    int level = 1;   // cyclotomic level of the pi-part (ignored when pi_exp = 0)
    long pi_exp = 0;
    std::vector<long long> unit_digits;  // optional extra unit: 1 + sum d_j (zeta-1)^j

    ValQ ord(uint64_t p) const;
};

struct GrowthParams {
    uint64_t p = 3;
    ValQ v;       // ord_p(a)
    int k = 1;    // least k >= 1 with v >= p^{-k}/2
    ValQ v2;      // upper-left entry of [H_a^2(zeta_{p^{k+2}}-1)]
    ValQ delta;   // min(v2 - 2v, (p-1) p^{-k-2}) at the boundary, else 0

    static GrowthParams make(uint64_t p, ValQ v, ValQ v2);
};

int k_of_v(uint64_t p, const ValQ& v);

// f_{sharp/flat, n}(v, v2); at v = 0 the limits 0 and p-1.
ValQ f_star(const GrowthParams& g, int n, bool sharp);

// exact valuation matrix of H_a^i(zeta_{p^n}-1) by cyclotomic arithmetic
ValMatrix H_valmat_exact(uint64_t p, const AParam& a, int i, int n, int eps, int prec);

// the paper's closed form for [H_a^{n-1}(zeta_{p^n}-1)] on its validated
// domain (see H_valmat_check); entries may be lower bounds
ValMatrix H_valmat_closed(uint64_t p, const AParam& a, int n, int eps, int prec);

struct HCheckReport {
    ValMatrix exact;
    ValMatrix closed;
    bool consistent = false;   // exact entries equal, ">=" entries satisfied
    bool shift_identity = false;  // column-shift identity for H^n at zeta_{p^n}
    std::string note;
};
HCheckReport H_valmat_check(uint64_t p, const AParam& a, int n, int eps, int prec);

// v_m = upper-left of [H_a^m(zeta_{p^{k+2}}-1)], exact; the closed-form
// cross-check (valid for 2 <= m <= k+1) is reported alongside.
struct VmResult {
    ValQ vm;
    bool lemma_applies = false;
    bool lemma_ok = false;
};
VmResult v_m_compute(uint64_t p, const AParam& a, int m, int eps, int prec);

// n-th sharp/flat Kurihara term
long long kurihara_q(uint64_t p, int n, bool sharp);

bool sporadic_predicate(uint64_t p, const ValQ& v, const ValQ& v2, int n, int k, const ValQ& mu_s,
                        const ValQ& mu_f, long lam_s, long lam_f);

// Modesty Algorithm: picks sharp (true) / flat (false); TieError on equality.
bool modesty_select(const GrowthParams& g, int n, const ValQ& mu_s, const ValQ& mu_f, long lam_s,
                    long lam_f);

struct ShaGrowthReport {
    int n;
    ValQ e_jump;          // e_n - e_{n-1}
    bool star_sharp;      // which invariants entered
    std::string branch;   // which theorem bullet fired
    bool sporadic = false;
};

// e_n - e_{n-1} by the theorem's bullets (elliptic-curve case)
ShaGrowthReport sha_growth_elliptic(uint64_t p, long long ap, const ValQ& mu_s, const ValQ& mu_f,
                                    long lam_s, long lam_f, long r_inf, int n);

// predicted ord of tau(chi) L(f, chi^{-1}, 1)/Omega_f: g_n/(p^n - p^{n-1})
ValQ special_value_ord(const GrowthParams& g, int n, const ValQ& mu_s, const ValQ& mu_f, long lam_s,
                       long lam_f);

struct RankBound {
    int nu_sharp = 0;
    int nu_flat = 0;
    long long bound = 0;
    long long lambda_sum = 0;  // the a_p = 0 comparison bound
};
RankBound rank_bound(uint64_t p, long lam_s, long lam_f);

}  // namespace sharpflat
