#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sharpflat/lambda.hpp"
#include "sharpflat/logmatrix.hpp"
#include "sharpflat/mazurtate.hpp"

namespace sharpflat {

// The vector Upsilon_n = (L^sharp_n, L^flat_n) in Lambda_n^{+2} produced by
// the tandem extraction, with (Theta_n, nu Theta_{n-1}) = Upsilon_n
// Chat_1...Chat_n Atilde^{-1} holding exactly in Lambda_n.
struct SharpFlatPair {
    LambdaElement sharp, flat;
    bool completed = true;
    HeckeData h;
    int tame_i = 0;
    // the data the pair reconstructs (kept for the exact identity checks)
    LambdaElement theta_n, nu_theta_nm1;
};

struct ExtractionStep {
    int level;
    long divided_degree;
    bool remainder_zero;
    int min_prec_after;
};

struct ExtractionTrace {
    std::vector<ExtractionStep> steps;
};

// Tandem-Lemma extraction from the level-n queue data, on representatives.
SharpFlatPair extract(const LambdaElement& theta_n, const LambdaElement& nu_theta_nm1,
                      const HeckeData& h, bool completed, ExtractionTrace* trace = nullptr);

// the same loop on raw polynomials (no reduction anywhere): returns the
// Laurent pair Upsilon with (Q_{n+1}, Q_n) = Upsilon Chat_1..Chat_n Atilde^{-1}
std::pair<Laurent<Zp>, Laurent<Zp>> extract_raw(const Poly<Zp>& Qn1, const Poly<Zp>& Qn,
                                                const HeckeData& h, int n, bool completed,
                                                ExtractionTrace* trace = nullptr);
SharpFlatPair extract_from_table(const ModularSymbolTable& t, int i, int n, int prec, bool completed,
                                 ExtractionTrace* trace = nullptr);

// forward map (the oracle): Upsilon * Chat_1..Chat_n * Atilde^{-1} on
// representatives; when reduce is false the raw Laurent pair is returned.
std::pair<Laurent<Zp>, Laurent<Zp>> forward_compose_raw(const Poly<Zp>& u1, const Poly<Zp>& u2,
                                                        const HeckeData& h, int n, bool completed);
std::pair<LambdaElement, LambdaElement> forward_compose(const LambdaElement& u1,
                                                        const LambdaElement& u2, const HeckeData& h,
                                                        bool completed,
                                                        bool* nu_image_certified = nullptr);

// Stabilized series for (L^sharp, L^flat): extracts at every level the table
// covers and sets each coefficient's ledger to the observed agreement depth
// between consecutive levels (plus the pair at the top level).
struct StableSeries {
    SeriesApprox sharp, flat;
    SharpFlatPair top;
    std::vector<int> levels;
};
StableSeries extract_stable(const ModularSymbolTable& t, int i, int prec, bool completed);

// ---- the identity checks ----

struct CheckReport {
    bool pass = false;
    int certified_digits = 0;
    std::string detail;
};

// (eps_i L_{N,alpha}, eps_i L_{N,beta}) = -Upsilon_n Chat_1..Chat_n C^{-(N+1)} roots
// coefficientwise in Lambda_n over the quadratic extension.
CheckReport main_theorem_check(const ModularSymbolTable& t, int i, int n, int prec, int digits);

// Omega-free ratio of the special-value table at T = 0.
struct SpecialValueReport {
    bool determined = false;
    bool pass = false;
    int certified_digits = 0;
    bool degenerate_flag = false;  // (2 - ap) = 0 (p odd) or a_2 = 1 (p = 2)
    std::string which_column;      // which column the table degenerates in
};
SpecialValueReport special_value_table_check(const SharpFlatPair& pair, int digits);

// Functional equation: (i) the exact queue-data identity
//     sigma(Theta_n, nu Theta_{n-1}) = -eps(-1) omega^i(-N) X^{log_gamma N} (...)
// (ii) the exact mod-kernel identity: -X^{-L} sigma(pair) reconstructs the
// same data through Chat_1..Chat_n Atilde^{-1};
// (iii) coefficientwise comparison at the observed stabilization window.
struct FeReport {
    bool data_fe_exact = false;
    bool mod_kernel_exact = false;
    int direct_window_digits = 0;  // digits to which pair == -X^{-L} sigma(pair)
    bool wfe_mod_kernel = false;   // a_p = 0: W-twisted uncompleted version
    bool wfe_negative_control = false;  // without W the identity must fail
};
FeReport functional_equation_check(const SharpFlatPair& pair, const StableSeries* stable = nullptr);

// orders of vanishing d_m^an of the vector Upsilon C_1...C_n at zeta_{p^m}-1
// (vector order = min of component orders), plus the equiroots assertion via
// the nonvanishing of det Xi_n.
struct VanishingRow {
    int m;
    std::optional<long> ord_sharp_component, ord_flat_component;
    std::optional<long> d_m;
    bool equiroots_certified = false;
};
std::vector<VanishingRow> vanishing_orders(const SharpFlatPair& pair, int m_max);

struct GcdReport {
    std::optional<long> t_exponent;      // exact power of T dividing the gcd
    std::optional<long> r0_an;           // = d_0
    struct Cyclo {
        int m;
        long gcd_exponent;   // Phi_{p^m}-exponent of the gcd
        long d_m;
        int lemma_branch;    // which of the four order-comparison cases fired
        bool consistent;     // gcd_exponent in {d_m - 1, d_m}
    };
    std::vector<Cyclo> cyclotomic;
    bool pass = true;
};
GcdReport gcd_structure(const SharpFlatPair& pair, int m_max);

// Perrin-Riou style invariants from the queue sequence; the labels follow the
// matching mu_sharp = mu_+ etc. (odd levels give +, even give -).
struct PmInvariants {
    ValQ mu_plus, mu_minus;
    long lambda_plus = 0, lambda_minus = 0;
    bool stabilized_plus = false, stabilized_minus = false;
};
PmInvariants queue_invariants_pm(const std::vector<LambdaElement>& thetas, const HeckeData& h);

struct GreenbergReport {
    long lambda_gcd_bound = -1;  // common zeros off roots of unity are <= this
    std::vector<VanishingRow> at_roots;
    bool finiteness_assumes_rohrlich = true;
};
GreenbergReport greenberg_report(const SharpFlatPair& pair, int m_max);

}  // namespace sharpflat
