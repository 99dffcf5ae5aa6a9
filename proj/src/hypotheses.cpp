#include "recsum/hypotheses.hpp"

#include <algorithm>

namespace recsum::hypotheses {

namespace {

mpz_class mpz_of(u64 v) {
    mpz_class z;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return z;
}

mpz_class mpz_pow(const mpz_class& base, u64 e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

// ceil(p^{m/k}) as an integer
mpz_class ceil_pow_frac(u64 p, const Fraction& eps) {
    mpz_class pm = mpz_pow(mpz_of(p), eps.num);
    mpz_class root;
    int exact = mpz_root(root.get_mpz_t(), pm.get_mpz_t(), static_cast<unsigned long>(eps.den));
    if (!exact) root += 1;
    return root;
}

// floor(p^{m/k})
mpz_class floor_pow_frac(u64 p, const Fraction& eps) {
    mpz_class pm = mpz_pow(mpz_of(p), eps.num);
    mpz_class root;
    mpz_root(root.get_mpz_t(), pm.get_mpz_t(), static_cast<unsigned long>(eps.den));
    return root;
}

// gcd * p^eps < tau, exactly: gcd^k * p^m < tau^k
bool below_power_threshold(u64 g, u64 p, const Fraction& eps, u64 tau) {
    return mpz_pow(mpz_of(g), eps.den) * mpz_pow(mpz_of(p), eps.num) <
           mpz_pow(mpz_of(tau), eps.den);
}

std::vector<unsigned> proper_divisors_of_degree(unsigned r) {
    std::vector<unsigned> d;
    for (unsigned i = 1; i < r; ++i)
        if (r % i == 0) d.push_back(i);
    return d;
}

}  // namespace

ImprovementReport improvement_range(u64 p, unsigned r, u64 tau, const Fraction& eps) {
    if (r < 2) throw precondition_error("improvement_range: r must be >= 2");
    if (eps.den > 64) throw guard_error("improvement_range: epsilon denominator exceeds 64");
    ImprovementReport rep;
    rep.p = p;
    rep.r = r;
    rep.tau = tau;
    rep.eps = eps;
    rep.p_of_r = least_prime_factor(r);
    rep.improvement_possible = rep.p_of_r > 2;
    // tau > p^{r/q + m/k}  <=>  tau^{qk} > p^{rk + mq}
    const u64 q = rep.p_of_r, k = eps.den, m = eps.num;
    rep.paper_range = mpz_pow(mpz_of(tau), q * k) > mpz_pow(mpz_of(p), r * k + m * q);
    // tau > p^{r/2 - 1/6 + m/k}  <=>  tau^{6k} > p^{3rk - k + 6m}
    rep.shparlinski_range = mpz_pow(mpz_of(tau), 6 * k) > mpz_pow(mpz_of(p), 3 * r * k - k + 6 * m);
    return rep;
}

ConditionReport check_conditions(const lrs::SpectralData& spectral, const Fraction& eps,
                                 const Fraction& eps2) {
    if (eps.den > 64 || eps2.den > 64)
        throw guard_error("check_conditions: epsilon denominators exceed 64");
    ConditionReport rep;
    rep.p = spectral.splitting_field->base.p;
    rep.seq_order = static_cast<unsigned>(spectral.char_poly.degree());
    rep.tau = spectral.least_period;
    rep.eps = eps;
    rep.eps2 = eps2;

    const auto& comps = spectral.components;
    rep.equal_degrees = true;
    for (const auto& c : comps)
        if (c.degree != comps.front().degree) rep.equal_degrees = false;
    rep.common_degree = rep.equal_degrees ? comps.front().degree : 0;

    const u64 p = rep.p;
    mpz_class p_eps_ceil = ceil_pow_frac(p, eps);

    // per-root rows; the gcd tests of condition (a) use the common degree
    for (const auto& c : comps) {
        ConditionReport::RootRow row;
        row.degree = c.degree;
        row.tau_i = c.root_order;
        row.worst_gcd = 0;
        if (rep.equal_degrees && rep.common_degree > 1) {
            for (unsigned d : proper_divisors_of_degree(rep.common_degree)) {
                u64 pd = checked_pow(p, d).value() - 1;
                row.worst_gcd = std::max(row.worst_gcd, gcd_u64(row.tau_i, pd));
            }
            row.cond_a_strict = below_power_threshold(row.worst_gcd, p, eps, row.tau_i);
            row.cond_a_conservative = mpz_of(row.worst_gcd) * p_eps_ceil < mpz_of(row.tau_i);
        }
        rep.roots.push_back(row);
    }

    if (rep.equal_degrees && rep.common_degree > 1) {
        bool any_strict = false, any_cons = false;
        for (const auto& row : rep.roots) {
            any_strict = any_strict || row.cond_a_strict;
            any_cons = any_cons || row.cond_a_conservative;
        }
        rep.condition_a = any_strict;
        rep.condition_a_conservative = any_cons;
    } else if (rep.common_degree == 1) {
        rep.note = "all factors are linear (sequence of Bourgain type, r = 1); "
                   "conditions (a)/(b) do not apply";
    } else {
        rep.note = "factor degrees are mixed; conditions (a)/(b) do not apply";
    }

    // condition (b): some pair of components with isomorphic root fields
    // (equal degrees over F_p) and small gcd of root orders
    rep.min_pair_gcd = 0;
    if (comps.size() >= 2) {
        bool applicable = false, any_strict = false, any_cons = false;
        mpz_class p_eps2_floor = floor_pow_frac(p, eps2);
        for (size_t i = 0; i < comps.size(); ++i) {
            for (size_t j = i + 1; j < comps.size(); ++j) {
                if (comps[i].degree != comps[j].degree) continue;
                applicable = true;
                u64 g = gcd_u64(comps[i].root_order, comps[j].root_order);
                if (rep.min_pair_gcd == 0 || g < rep.min_pair_gcd) rep.min_pair_gcd = g;
                // gcd < p^{eps2}  <=>  gcd^k < p^m
                any_strict = any_strict ||
                             mpz_pow(mpz_of(g), eps2.den) < mpz_pow(mpz_of(p), eps2.num);
                any_cons = any_cons || mpz_of(g) < p_eps2_floor;
            }
        }
        if (applicable && rep.equal_degrees && rep.common_degree > 1) {
            rep.condition_b = any_strict;
            rep.condition_b_conservative = any_cons;
        }
    }

    // period-level condition at eps over the proper divisors of the order
    rep.shparlinski_worst_gcd = 0;
    for (unsigned d : proper_divisors_of_degree(rep.seq_order)) {
        auto pd = checked_pow(p, d);
        if (!pd) continue;
        rep.shparlinski_worst_gcd = std::max(rep.shparlinski_worst_gcd, gcd_u64(rep.tau, *pd - 1));
    }
    rep.shparlinski = rep.seq_order > 1 &&
                      below_power_threshold(rep.shparlinski_worst_gcd, p, eps, rep.tau);

    // Korobov bound nontrivial iff p^{r/2} < tau, i.e. p^r < tau^2
    auto pr = checked_pow(p, rep.seq_order);
    rep.korobov_nontrivial = pr && mpz_of(*pr) < mpz_of(rep.tau) * mpz_of(rep.tau);

    if (rep.seq_order >= 2) rep.improvement = improvement_range(p, rep.seq_order, rep.tau, eps);
    return rep;
}

// ---- root-of-unity classification ----

RootOfUnityVerdict root_of_unity_test(i64 a, i64 b) {
    if (b == 0) throw precondition_error("root_of_unity_test: b = 0");
    RootOfUnityVerdict v;
    mpz_class disc = mpz_class(a) * a - 4 * mpz_class(b);

    auto classify_int_root = [](const mpz_class& r, bool& flag, unsigned& ord) {
        if (r == 1) { flag = true; ord = 1; }
        else if (r == -1) { flag = true; ord = 2; }
    };

    if (disc >= 0 && mpz_perfect_square_p(disc.get_mpz_t())) {
        mpz_class s;
        mpz_sqrt(s.get_mpz_t(), disc.get_mpz_t());
        mpz_class alpha = (-mpz_class(a) + s) / 2;
        mpz_class beta = (-mpz_class(a) - s) / 2;
        classify_int_root(alpha, v.alpha, v.alpha_order);
        classify_int_root(beta, v.beta, v.beta_order);
        if (alpha == beta) { v.ratio = true; v.ratio_order = 1; }
        else if (alpha == -beta) { v.ratio = true; v.ratio_order = 2; }
        return v;
    }

    if (disc < 0) {
        // complex conjugate pair of algebraic integers: on the unit circle
        // iff the norm b equals 1, and then omega is cyclotomic
        if (b == 1) {
            v.alpha = v.beta = true;
            unsigned ord = a == 0 ? 4u : (a == 1 ? 3u : 6u);  // |a| <= 1 forced by disc < 0
            v.alpha_order = v.beta_order = ord;
        }
    }
    // ratio = alpha/beta satisfies z^2 - c z + 1 with c = (a^2 - 2b)/b; it is
    // a root of unity exactly when c is one of the five integral cosine traces
    mpq_class c(mpz_class(a) * a - 2 * mpz_class(b), mpz_class(b));
    c.canonicalize();
    if (c.get_den() == 1) {
        mpz_class cn = c.get_num();
        if (disc < 0) {
            if (cn == -2) { v.ratio = true; v.ratio_order = 2; }
            else if (cn == -1) { v.ratio = true; v.ratio_order = 3; }
            else if (cn == 0) { v.ratio = true; v.ratio_order = 4; }
            else if (cn == 1) { v.ratio = true; v.ratio_order = 6; }
            else if (cn == 2) { v.ratio = true; v.ratio_order = 1; }
        } else {
            // real roots: the ratio is a root of unity only when alpha = -beta
            if (cn == -2) { v.ratio = true; v.ratio_order = 2; }
        }
    }
    return v;
}

std::optional<unsigned> cyclotomic_order_by_division(i64 a, i64 b, unsigned t_max) {
    if (b == 0) throw precondition_error("cyclotomic_order_by_division: b = 0");
    // track x^t mod (x^2 + a x + b) over Q as r1 x + r0; coefficients stay
    // bounded when the roots lie on the unit circle and explode otherwise,
    // so cap their size alongside t
    mpq_class r0 = 0, r1 = 1;  // x^1
    mpq_class A(a), B(b);
    for (unsigned t = 1; t <= t_max; ++t) {
        if (t > 1) {
            mpq_class n1 = r0 - A * r1;
            mpq_class n0 = -B * r1;
            r1 = n1;
            r0 = n0;
        }
        if (r1 == 0 && r0 == 1) return t;
        if (mpz_sizeinbase(r0.get_num().get_mpz_t(), 2) > 64 ||
            mpz_sizeinbase(r1.get_num().get_mpz_t(), 2) > 64)
            return std::nullopt;  // coefficient blow-up, not a root of unity
    }
    return std::nullopt;
}

// ---- Lemma-style exclusion certificate ----

std::vector<mpz_class> lemma_poly(i64 b, unsigned T) {
    if (b == 0) throw precondition_error("lemma_poly: b = 0");
    std::vector<mpz_class> g{1};
    auto mul_factor = [&g](const std::vector<std::pair<unsigned, mpz_class>>& sparse) {
        unsigned deg = sparse.back().first;
        std::vector<mpz_class> out(g.size() + deg);
        for (size_t i = 0; i < g.size(); ++i)
            for (const auto& [e, c] : sparse) out[i + e] += g[i] * c;
        g = std::move(out);
    };
    mpz_class bt = 1;
    for (unsigned t = 1; t <= T; ++t) {
        bt *= b;
        mul_factor({{0, mpz_class(-1)}, {t, mpz_class(1)}});       // x^t - 1
        mul_factor({{0, -bt}, {2 * t, mpz_class(1)}});             // x^{2t} - b^t
    }
    return g;
}

namespace {

// Res(x^2 + a x + b, G) mod q via reduction of G to r1 x + r0 and the
// closed form r0^2 - a r0 r1 + b r1^2
u64 resultant_mod_q(u64 a_mod, u64 b_mod, const std::vector<u64>& g_mod, u64 q) {
    u64 r0 = 0, r1 = 0;
    for (size_t i = g_mod.size(); i-- > 0;) {
        u64 n1 = submod(r0, mulmod(a_mod, r1, q), q);
        u64 n0 = submod(g_mod[i], mulmod(b_mod, r1, q), q);
        r1 = n1;
        r0 = n0;
    }
    u64 res = addmod(mulmod(r0, r0, q), mulmod(b_mod, mulmod(r1, r1, q), q), q);
    return submod(res, mulmod(a_mod, mulmod(r0, r1, q), q), q);
}

// partial factorization of |n|: trial division below 10^6, then rho with a
// bounded budget; whatever resists is returned as a composite remainder
void factor_mpz_partial(mpz_class n, std::vector<std::pair<mpz_class, unsigned>>& out,
                        mpz_class& remainder) {
    remainder = 1;
    if (n < 0) n = -n;
    if (n <= 1) return;
    for (u64 p : primes_up_to(1'000'000)) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            unsigned e = 0;
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
                ++e;
            }
            out.emplace_back(mpz_class(p), e);
        }
        if (n == 1) return;
    }
    // rho stage
    std::vector<mpz_class> stack{n};
    int budget = 64;
    while (!stack.empty() && budget-- > 0) {
        mpz_class m = stack.back();
        stack.pop_back();
        if (m == 1) continue;
        if (mpz_probab_prime_p(m.get_mpz_t(), 40)) {
            bool merged = false;
            for (auto& [p, e] : out)
                if (p == m) { ++e; merged = true; }
            if (!merged) out.emplace_back(m, 1);
            continue;
        }
        // Pollard rho, fixed polynomial x^2 + 1, bounded iterations
        mpz_class x = 2, y = 2, d = 1;
        bool found = false;
        for (unsigned it = 0; it < 200'000; ++it) {
            x = (x * x + 1) % m;
            y = (y * y + 1) % m;
            y = (y * y + 1) % m;
            mpz_class diff = x > y ? x - y : y - x;
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), m.get_mpz_t());
            if (d != 1 && d != m) {
                stack.push_back(d);
                stack.push_back(m / d);
                found = true;
                break;
            }
            if (d == m) break;
        }
        if (!found) remainder *= m;
    }
    for (const auto& m : stack) remainder *= m;
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
}

}  // namespace

ExclusionCertificate resultant_exclusion(i64 a, i64 b, unsigned T, u64 scan_bound) {
    if (b == 0) throw precondition_error("resultant_exclusion: b = 0");
    if (T < 1 || T > 12) throw guard_error("resultant_exclusion: T outside [1, 12]");
    ExclusionCertificate cert;
    cert.a = a;
    cert.b = b;
    cert.T = T;
    cert.scan_bound = scan_bound;
    cert.disc = mpz_class(a) * a - 4 * mpz_class(b);

    auto g = lemma_poly(b, T);

    // |Res| <= (prod_t (M^t + 1)(M^{2t} + |b|^t))^2 with M a root bound
    mpz_class M = 1 + std::max(mpz_class(a) < 0 ? mpz_class(-a) : mpz_class(a),
                               mpz_class(b) < 0 ? mpz_class(-b) : mpz_class(b));
    mpz_class bound = 1, babs = b < 0 ? -b : b, bt = 1;
    for (unsigned t = 1; t <= T; ++t) {
        bt *= babs;
        bound *= mpz_pow(M, t) + 1;
        bound *= mpz_pow(M, 2 * t) + bt;
    }
    bound = 2 * bound * bound + 1;

    // CRT accumulation over fixed word-sized primes
    mpz_class modulus = 1, value = 0;
    u64 q = (1ULL << 62) - 57;  // deterministic descending prime scan start
    auto signed_mod = [](i64 v, u64 q) {
        i64 r = v % static_cast<i64>(q);
        return r >= 0 ? static_cast<u64>(r) : static_cast<u64>(r + static_cast<i64>(q));
    };
    while (modulus < bound) {
        while (!is_prime_u64(q)) --q;
        u64 a_mod = signed_mod(a, q);
        u64 b_mod = signed_mod(b, q);
        std::vector<u64> g_mod(g.size());
        for (size_t i = 0; i < g.size(); ++i) {
            mpz_class r;
            mpz_class qz;
            mpz_import(qz.get_mpz_t(), 1, 1, sizeof(q), 0, 0, &q);
            mpz_fdiv_r(r.get_mpz_t(), g[i].get_mpz_t(), qz.get_mpz_t());
            g_mod[i] = r.get_ui();
        }
        u64 res_q = resultant_mod_q(a_mod, b_mod, g_mod, q);

        // CRT merge
        mpz_class qz;
        mpz_import(qz.get_mpz_t(), 1, 1, sizeof(q), 0, 0, &q);
        mpz_class res_z;
        mpz_import(res_z.get_mpz_t(), 1, 1, sizeof(res_q), 0, 0, &res_q);
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), modulus.get_mpz_t(), qz.get_mpz_t());
        mpz_class t = ((res_z - value) * inv) % qz;
        if (t < 0) t += qz;
        value += modulus * t;
        modulus *= qz;
        ++cert.crt_primes_used;
        --q;
    }
    // symmetric representative
    if (2 * value > modulus) value -= modulus;
    cert.resultant = value;
    cert.resultant_zero = (value == 0);

    if (cert.resultant_zero) {
        cert.diagnostic = root_of_unity_test(a, b);
        cert.composite_remainder = 1;
        return cert;
    }

    factor_mpz_partial(cert.resultant, cert.factors, cert.composite_remainder);

    mpz_class excl = cert.resultant * cert.disc * mpz_class(b);
    for (u64 ell : primes_up_to(scan_bound))
        if (mpz_divisible_ui_p(excl.get_mpz_t(), ell)) cert.excluded_primes.push_back(ell);
    return cert;
}

}  // namespace recsum::hypotheses
