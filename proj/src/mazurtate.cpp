#include "sharpflat/mazurtate.hpp"

#include <fstream>
#include <sstream>

namespace sharpflat {

std::pair<long long, long long> ModularSymbolTable::at(int N, long long a) const {
    auto it = entries.find({N, a});
    if (it == entries.end())
        throw IncompleteLevel("missing symbol at N=" + std::to_string(N) + " a=" + std::to_string(a));
    return it->second;
}

static uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

ModularSymbolTable parse_table(std::istream& in) {
    ModularSymbolTable t;
    std::string line;
    bool have_p = false, have_nmax = false, have_sign = false, have_ap = false;
    std::ostringstream all;
    while (std::getline(in, line)) {
        all << line << "\n";
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        // trim
        size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        size_t e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        size_t eq = line.find('=');
        if (eq != std::string::npos && line.find(' ') == std::string::npos) {
            std::string key = line.substr(0, eq), val = line.substr(eq + 1);
            try {
                if (key == "p") {
                    t.h.p = (uint64_t)std::stoull(val);
                    have_p = true;
                } else if (key == "nmax") {
                    t.nmax = std::stoi(val);
                    have_nmax = true;
                } else if (key == "sign") {
                    if (val != "+" && val != "-") throw ParseError("sign must be + or -");
                    t.sign = val[0];
                    have_sign = true;
                } else if (key == "ap") {
                    t.h.ap = std::stoll(val);
                    have_ap = true;
                } else if (key == "eps") {
                    t.h.eps = std::stoi(val);
                } else if (key == "levelNf") {
                    t.h.level_Nf = std::stoll(val);
                } else if (key == "period") {
                    if (val == "omega_f")
                        t.neron_period = false;
                    else if (val == "neron")
                        t.neron_period = true;
                    else
                        throw ParseError("period must be omega_f or neron");
                } else if (key == "denbound") {
                    t.denbound = std::stoll(val);
                } else {
                    throw ParseError("unknown header key: " + key);
                }
            } catch (std::invalid_argument&) {
                throw ParseError("bad header value in: " + line);
            }
            continue;
        }
        // entry line: N a value
        std::istringstream ls(line);
        int N;
        long long a;
        std::string val;
        if (!(ls >> N >> a >> val)) throw ParseError("bad entry line: " + line);
        long long num, den = 1;
        size_t slash = val.find('/');
        try {
            if (slash == std::string::npos) {
                num = std::stoll(val);
            } else {
                num = std::stoll(val.substr(0, slash));
                den = std::stoll(val.substr(slash + 1));
            }
        } catch (std::exception&) {
            throw ParseError("bad value: " + val);
        }
        if (den <= 0) throw ParseError("nonpositive denominator: " + val);
        t.entries[{N, a}] = {num, den};
    }
    if (!have_p || !have_nmax || !have_sign || !have_ap)
        throw ParseError("missing required header (p=, nmax=, sign=, ap=)");
    // range/completeness checks
    uint64_t p = t.h.p;
    long long m = 1;
    for (int N = 1; N <= t.nmax; ++N) {
        m *= (long long)p;
        for (long long a = 1; a < m; ++a) {
            if (a % (long long)p == 0) continue;
            auto it = t.entries.find({N, a});
            if (it == t.entries.end())
                throw IncompleteLevel("level N=" + std::to_string(N) + " missing residue a=" +
                                      std::to_string(a));
            long long den = it->second.second;
            long long d = den;
            while (d % (long long)p == 0) d /= (long long)p;
            if (d != den) throw DenominatorViolation("denominator divisible by p");
            if (t.denbound % den != 0)
                throw DenominatorViolation("denominator " + std::to_string(den) +
                                           " exceeds declared bound " + std::to_string(t.denbound));
        }
    }
    for (auto& [key, v] : t.entries) {
        auto [N, a] = key;
        (void)v;
        long long mm = 1;
        for (int i = 0; i < N; ++i) mm *= (long long)p;
        if (N < 1 || N > t.nmax || a < 1 || a >= mm || a % (long long)p == 0)
            throw ParseError("entry out of range: N=" + std::to_string(N) + " a=" + std::to_string(a));
    }
    t.source_hash = std::to_string(fnv1a(all.str()));
    return t;
}

ModularSymbolTable load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open table file: " + path);
    return parse_table(in);
}

void write_table(const ModularSymbolTable& t, std::ostream& out) {
    out << "p=" << t.h.p << "\nnmax=" << t.nmax << "\nsign=" << t.sign << "\nap=" << t.h.ap
        << "\neps=" << t.h.eps << "\nlevelNf=" << t.h.level_Nf
        << "\nperiod=" << (t.neron_period ? "neron" : "omega_f") << "\ndenbound=" << t.denbound
        << "\n";
    for (auto& [key, v] : t.entries) {
        out << key.first << " " << key.second << " " << v.first;
        if (v.second != 1) out << "/" << v.second;
        out << "\n";
    }
}

int theta_top(const ModularSymbolTable& t) {
    return t.h.p == 2 ? t.nmax - 2 : t.nmax - 1;
}

LambdaElement build_theta(const ModularSymbolTable& t, int i, int n, int prec) {
    uint64_t p = t.h.p;
    int N = (p == 2) ? n + 2 : n + 1;
    if (N > t.nmax) throw IncompleteLevel("table does not cover level N=" + std::to_string(N));
    size_t pn = 1;
    for (int k = 0; k < n; ++k) pn *= (size_t)p;
    long long m = 1;
    for (int k = 0; k < N; ++k) m *= (long long)p;
    // accumulate in the (1+T)-power basis, then expand
    std::vector<Zp> xcoef(pn, Zp::zero(p));
    for (long long a = 1; a < m; ++a) {
        if (a % (long long)p == 0) continue;
        auto [num, den] = t.at(N, a);
        Zp val = Zp::from_rational(p, num, den, prec);
        if (i != 0) {
            Zp w = teichmuller(p, a, prec);
            Zp wi = w;
            for (int k = 1; k < i; ++k) wi = wi * w;
            val = val * wi;
        }
        long e = discrete_log_gamma(p, a, n);
        xcoef[(size_t)(e % (long)pn)] = xcoef[(size_t)(e % (long)pn)] + val;
    }
    Zp one = Zp::one(p).cap_abs_prec(prec);
    Poly<Zp> rep;
    for (size_t e = 0; e < pn; ++e) {
        if (xcoef[e].is_zero_res()) continue;
        rep = rep + one_plus_T_pow(e, one).scale(xcoef[e]);
    }
    return LambdaElement(rep, p, n);
}

std::vector<LambdaElement> build_theta_tower(const ModularSymbolTable& t, int i, int prec) {
    std::vector<LambdaElement> out;
    int top = theta_top(t);
    for (int n = 0; n <= top; ++n) out.push_back(build_theta(t, i, n, prec));
    return out;
}

QueueReport validate_queue(const std::vector<LambdaElement>& thetas, const HeckeData& h) {
    QueueReport rep;
    if (thetas.size() < 3) return rep;
    Zp ap = Zp::from_int(h.p, h.ap, max_prec_for(h.p));
    Zp eps = Zp::from_int(h.p, h.eps, max_prec_for(h.p));
    for (size_t m = 2; m < thetas.size(); ++m) {
        LambdaElement lhs = project_pi(thetas[m]);
        LambdaElement rhs = thetas[m - 1].scale(ap) - norm_nu(thetas[m - 2]).scale(eps);
        if (!(lhs - rhs).is_zero_res()) {
            rep.valid = false;
            rep.first_failure = (int)m;
            break;
        }
    }
    // matrix form: pi(Theta_n, nu Theta_{n-1}) = (Theta_{n-1}, nu Theta_{n-2}) A
    for (size_t m = 2; m < thetas.size() && rep.valid; ++m) {
        Mat2<Zp> A = mat_A(h, max_prec_for(h.p));
        LambdaElement x = project_pi(thetas[m]);
        LambdaElement y = project_pi(norm_nu(thetas[m - 1]));
        LambdaElement rx = thetas[m - 1].scale(A.a) + norm_nu(thetas[m - 2]).scale(A.c);
        LambdaElement ry = thetas[m - 1].scale(A.b) + norm_nu(thetas[m - 2]).scale(A.d);
        if (!(x - rx).is_zero_res() || !(y - ry).is_zero_res()) {
            rep.matrix_form_ok = false;
            break;
        }
    }
    return rep;
}

bool check_sign_symmetry(const ModularSymbolTable& t) {
    // omega^i(a) eta(a/m) = +- omega^i(-a) eta(-a/m): at the table level this
    // is [-a mod p^N] = sign * [a] for the table's sign
    long long m = 1;
    int s = t.sign == '+' ? 1 : -1;
    for (int N = 1; N <= t.nmax; ++N) {
        m *= (long long)t.h.p;
        for (long long a = 1; a < m; ++a) {
            if (a % (long long)t.h.p == 0) continue;
            auto [n1, d1] = t.at(N, a);
            auto [n2, d2] = t.at(N, m - a);
            // n1/d1 == s * n2/d2
            if ((__int128)n1 * d2 != (__int128)s * n2 * d1) return false;
        }
    }
    return true;
}

RiemannSums riemann_sum_L(const ModularSymbolTable& t, int i, int N, int prec, bool direct_route) {
    uint64_t p = t.h.p;
    int n = (p == 2) ? N - 2 : N - 1;
    if (n < 1) throw IncompleteLevel("Riemann sum needs N >= " + std::to_string(p == 2 ? 3 : 2));
    RiemannSums out;
    out.n = n;
    int wprec = prec + 2 * (N + 2);
    QuadExt alpha = QuadExt::alpha(t.h, wprec);
    QuadExt beta = QuadExt::beta(t.h, wprec);
    QuadExt aiN1 = alpha.pow(-(long)(N + 1));
    QuadExt biN1 = beta.pow(-(long)(N + 1));
    QuadExt aiN = aiN1 * alpha;
    QuadExt biN = biN1 * beta;
    QuadExt eps = QuadExt::from_zp(Zp::from_int(p, t.h.eps, wprec), t.h);
    if (!direct_route) {
        // (L_{N,alpha}, L_{N,beta}) = (theta_n, nu theta_{n-1})
        //    [[alpha^{-N}, beta^{-N}], [-eps alpha^{-(N+1)}, -eps beta^{-(N+1)}]]
        LambdaElement th = build_theta(t, i, n, wprec);
        LambdaElement nth = norm_nu(build_theta(t, i, n - 1, wprec));
        auto lift = [&](const LambdaElement& f) {
            Poly<QuadExt> g;
            for (auto& c : f.rep.c) g.c.push_back(QuadExt::from_zp(c, t.h));
            g.trim();
            return g;
        };
        Poly<QuadExt> A = lift(th), B = lift(nth);
        out.Lalpha = A.scale(aiN) - B.scale(eps * aiN1);
        out.Lbeta = A.scale(biN) - B.scale(eps * biN1);
        return out;
    }
    // direct route: sum_a mu(1_{a + p^N}) omega^i(a) (1+T)^{log_gamma a}
    long long m = 1;
    for (int k = 0; k < N; ++k) m *= (long long)p;
    size_t pn = 1;
    for (int k = 0; k < n; ++k) pn *= (size_t)p;
    std::vector<QuadExt> xa(pn, alpha.zero_like()), xb(pn, alpha.zero_like());
    for (long long a = 1; a < m; ++a) {
        if (a % (long long)p == 0) continue;
        auto [nu1, de1] = t.at(N, a);
        long long am1 = a % (m / (long long)p);
        auto [nu2, de2] = t.at(N - 1, am1);
        Zp s1 = Zp::from_rational(p, nu1, de1, wprec);
        Zp s2 = Zp::from_rational(p, nu2, de2, wprec);
        if (i != 0) {
            Zp w = teichmuller(p, a, wprec);
            Zp wi = w;
            for (int k = 1; k < i; ++k) wi = wi * w;
            s1 = s1 * wi;
            s2 = s2 * wi;
        }
        QuadExt va = QuadExt::from_zp(s1, t.h) * aiN - eps * QuadExt::from_zp(s2, t.h) * aiN1;
        QuadExt vb = QuadExt::from_zp(s1, t.h) * biN - eps * QuadExt::from_zp(s2, t.h) * biN1;
        long e = discrete_log_gamma(p, a, n);
        xa[(size_t)(e % (long)pn)] = xa[(size_t)(e % (long)pn)] + va;
        xb[(size_t)(e % (long)pn)] = xb[(size_t)(e % (long)pn)] + vb;
    }
    QuadExt one = alpha.one_like();
    for (size_t e = 0; e < pn; ++e) {
        if (!xa[e].is_zero_res()) out.Lalpha = out.Lalpha + one_plus_T_pow(e, one).scale(xa[e]);
        if (!xb[e].is_zero_res()) out.Lbeta = out.Lbeta + one_plus_T_pow(e, one).scale(xb[e]);
    }
    return out;
}

}  // namespace sharpflat
