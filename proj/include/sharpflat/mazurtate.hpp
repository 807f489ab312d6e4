#pragma once

#include <map>
#include <string>
#include <vector>

#include "sharpflat/hecke.hpp"
#include "sharpflat/lambda.hpp"
#include "sharpflat/logmatrix.hpp"

namespace sharpflat {

// Ingested modular-symbol data [a/p^N]^sign for 1 <= N <= nmax, a in (Z/p^N)^*.
// Values are exact rationals with p-free denominators bounded by denbound.
struct ModularSymbolTable {
    HeckeData h;
    int nmax = 1;       // largest symbol level N present
    char sign = '+';
    bool neron_period = false;  // period=omega_f | neron
    long long denbound = 1;
    std::map<std::pair<int, long long>, std::pair<long long, long long>> entries;  // (N,a) -> num/den

    std::pair<long long, long long> at(int N, long long a) const;
    // content hash of the source file (reproducibility header)
    std::string source_hash;
};

ModularSymbolTable load_table(const std::string& path);
ModularSymbolTable parse_table(std::istream& in);
void write_table(const ModularSymbolTable& t, std::ostream& out);

// theta_n(omega^i, T) for 0 <= n <= theta_top(table): the isotypical
// Mazur-Tate elements. N = n+1 (p odd) or n+2 (p = 2).
int theta_top(const ModularSymbolTable& t);
LambdaElement build_theta(const ModularSymbolTable& t, int i, int n, int prec);
std::vector<LambdaElement> build_theta_tower(const ModularSymbolTable& t, int i, int prec);

struct QueueReport {
    bool valid = true;
    int first_failure = -1;
    bool matrix_form_ok = true;  // pi(Theta_n, nu Theta_{n-1}) = (Theta_{n-1}, nu Theta_{n-2}) A
};
QueueReport validate_queue(const std::vector<LambdaElement>& thetas, const HeckeData& h);

// p = 2 symmetry of the table: omega^i(a) [a]^± = ± omega^i(-a) [-a]^±
bool check_sign_symmetry(const ModularSymbolTable& t);

// Riemann sum eps_{omega^i} L_{N,alpha} (and beta) as Lambda_n elements over
// the quadratic extension; matrix route via the Lemma, direct route as the
// independent cross-check.
struct RiemannSums {
    Poly<QuadExt> Lalpha, Lbeta;  // representatives of degree < p^n
    int n = 0;
};
RiemannSums riemann_sum_L(const ModularSymbolTable& t, int i, int N, int prec, bool direct_route);

}  // namespace sharpflat
