#include "recsum/modforms.hpp"

#include <cmath>

namespace recsum::modforms {

u64 mpz_mod_u64(const mpz_class& v, u64 m) {
    mpz_class r;
    mpz_class mm;
    mpz_import(mm.get_mpz_t(), 1, 1, sizeof(m), 0, 0, &m);
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), mm.get_mpz_t());
    return r.get_ui();
}

u64 mpq_mod_u64(const mpq_class& v, u64 m) {
    u64 den = mpz_mod_u64(v.get_den(), m);
    if (den == 0)
        throw precondition_error("rational residue: denominator not invertible mod l");
    return mulmod(mpz_mod_u64(v.get_num(), m), invmod(den, m), m);
}

static mpz_class mpz_from_u64(u64 v) {
    mpz_class z;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return z;
}

static mpz_class mpz_pow_u64(u64 base, unsigned exp) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), mpz_from_u64(base).get_mpz_t(), exp);
    return r;
}

HeckeParams::HeckeParams(u64 p_, unsigned k_, mpq_class ap, bool level_div)
    : p(p_), k(k_), a_p(std::move(ap)), level_divides(level_div) {
    if (!is_prime_u64(p)) throw precondition_error("HeckeParams: p is not prime");
    if (k < 2 || k % 2 != 0) throw precondition_error("HeckeParams: weight must be even and >= 2");
    a_p.canonicalize();
    if (!level_divides && discriminant() == 0)
        throw precondition_error("HeckeParams: a_p^2 = 4 p^{k-1} is impossible for rational a_p");
}

mpq_class HeckeParams::discriminant() const {
    return a_p * a_p - mpq_class(4 * mpz_pow_u64(p, k - 1));
}

bool HeckeParams::satisfies_deligne_bound() const {
    return a_p * a_p <= mpq_class(4 * mpz_pow_u64(p, k - 1));
}

std::vector<mpq_class> hecke_power_seq(const HeckeParams& params, unsigned n_max) {
    if (n_max > 1000) throw guard_error("hecke_power_seq: n_max exceeds the 10^3 guard");
    std::vector<mpq_class> a(n_max + 1);
    a[0] = 1;
    if (n_max == 0) return a;
    if (params.level_divides) {
        for (unsigned n = 1; n <= n_max; ++n) a[n] = a[n - 1] * params.a_p;
        return a;
    }
    a[1] = params.a_p;
    mpq_class pk(mpz_pow_u64(params.p, params.k - 1));
    for (unsigned n = 2; n <= n_max; ++n) a[n] = params.a_p * a[n - 1] - pk * a[n - 2];
    return a;
}

lrs::LinRecSeq hecke_mod_seq(const HeckeParams& params, u64 ell) {
    if (!is_prime_u64(ell)) throw precondition_error("hecke_mod_seq: l is not prime");
    if (ell == params.p)
        throw precondition_error("hecke_mod_seq: l = p makes the constant term vanish");
    u64 ap = mpq_mod_u64(params.a_p, ell);
    if (params.level_divides) {
        if (ap == 0)
            throw precondition_error("hecke_mod_seq: a_p = 0 mod l, sequence degenerate");
        return lrs::LinRecSeq(ell, {ap}, {1});
    }
    u64 pk = powmod(params.p % ell, params.k - 1, ell);
    // s_{n+2} = a_p s_{n+1} - p^{k-1} s_n, s_0 = 1, s_1 = a_p
    return lrs::LinRecSeq(ell, {submod(0, pk, ell), ap}, {1, ap});
}

int discriminant_class(const HeckeParams& params, u64 ell) {
    if (ell == 2) throw precondition_error("discriminant_class: l = 2 is not classified");
    if (!is_prime_u64(ell)) throw precondition_error("discriminant_class: l is not prime");
    if (ell == params.p) throw precondition_error("discriminant_class: l = p");
    u64 d = mpq_mod_u64(params.discriminant(), ell);
    if (d == 0) return 0;
    u64 eul = powmod(d, (ell - 1) / 2, ell);
    return eul == 1 ? 1 : -1;
}

std::optional<unsigned> zero_index(const HeckeParams& params, unsigned u_max) {
    auto a = hecke_power_seq(params, u_max);
    for (unsigned u = 1; u <= u_max; ++u) {
        if (a[u] == 0) {
            if (u % 2 == 0)
                throw std::logic_error("zero_index: even zero index contradicts the parity argument");
            return u;
        }
    }
    return std::nullopt;
}

ExceptionalReport exceptional_structure_check(const HeckeParams& params, u64 ell, unsigned u_max,
                                              unsigned n_check) {
    auto u_opt = zero_index(params, u_max);
    if (!u_opt) throw precondition_error("exceptional_structure_check: no zero index found");
    ExceptionalReport rep;
    rep.u = *u_opt;
    const unsigned u = rep.u;

    // alpha^{u+1} is rational: alpha^{u+1} = t_{u+1}/2 where
    // t_n = alpha^n + beta^n satisfies the integer recurrence.
    unsigned span = std::min<unsigned>(1000, std::max<unsigned>(n_check * (u + 1) + u + 2, u + 2));
    std::vector<mpq_class> t(u + 2);
    t[0] = 2;
    t[1] = params.a_p;
    mpq_class pk(mpz_pow_u64(params.p, params.k - 1));
    for (unsigned n = 2; n <= u + 1; ++n) t[n] = params.a_p * t[n - 1] - pk * t[n - 2];
    mpq_class alpha_pow = t[u + 1] / 2;
    rep.sign = sgn(alpha_pow);
    // |alpha^{u+1}| = p^{(u+1)(k-1)/2}, verified by squaring (the exponent
    // (u+1)(k-1) is even, its half need not be an integer power)
    mpq_class expect_sq(mpz_pow_u64(params.p, (u + 1) * (params.k - 1)));
    rep.power_identity = (alpha_pow * alpha_pow == expect_sq);

    auto a = hecke_power_seq(params, span);
    rep.lattice_vanishes = true;
    for (unsigned n = 1; n * (u + 1) - 1 <= span; ++n)
        if (a[n * (u + 1) - 1] != 0) rep.lattice_vanishes = false;

    rep.off_lattice_geometric = true;
    for (unsigned e = 1; e <= u; ++e) {
        mpq_class factor = 1;
        for (unsigned n = 0;; ++n) {
            unsigned idx = n * (u + 1) + e;
            if (idx - 1 > span || n > n_check) break;
            if (a[idx - 1] != factor * a[e - 1]) rep.off_lattice_geometric = false;
            factor *= alpha_pow;
        }
    }

    auto prof = expsum::profile(hecke_mod_seq(params, ell));
    rep.tau = prof.tau;
    rep.s1_abs = prof.abs_at_one;
    rep.main_term = static_cast<double>(prof.tau) / static_cast<double>(u + 1);
    rep.deviation = std::abs(rep.s1_abs - rep.main_term);
    rep.reference_scale =
        static_cast<double>(prof.tau) * std::pow(static_cast<double>(ell), -0.1) + u;
    return rep;
}

expsum::cplx multi_prime_sum(const std::vector<HeckeParams>& params, u64 ell, u64 xi) {
    if (params.empty() || params.size() > 3)
        throw precondition_error("multi_prime_sum: nu must be between 1 and 3");
    for (size_t i = 0; i < params.size(); ++i)
        for (size_t j = i + 1; j < params.size(); ++j)
            if (params[i].p == params[j].p)
                throw precondition_error("multi_prime_sum: duplicate primes");

    std::vector<std::vector<u64>> vals;  // vals[i][n-1] = a(p_i^n) mod l, n = 1..tau_i
    u128 product = 1;
    for (const auto& prm : params) {
        auto seq = hecke_mod_seq(prm, ell);
        u64 tau = lrs::least_period(seq);
        product *= tau;
        if (product > iteration_guard())
            throw guard_error("multi_prime_sum: period product exceeds the iteration guard");
        auto terms = seq.iterate(tau + 1);
        vals.emplace_back(terms.begin() + 1, terms.end());
    }

    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    std::vector<std::complex<long double>> e(ell);
    for (u64 c = 0; c < ell; ++c) {
        long double ang = two_pi * static_cast<long double>(c) / static_cast<long double>(ell);
        e[c] = {std::cos(ang), std::sin(ang)};
    }

    std::complex<long double> acc{};
    std::vector<size_t> idx(vals.size(), 0);
    while (true) {
        u64 prod = 1;
        for (size_t i = 0; i < vals.size(); ++i) prod = mulmod(prod, vals[i][idx[i]], ell);
        acc += e[mulmod(xi % ell, prod, ell)];
        size_t axis = 0;
        while (axis < idx.size()) {
            if (++idx[axis] < vals[axis].size()) break;
            idx[axis] = 0;
            ++axis;
        }
        if (axis == idx.size()) break;
    }
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

TauTable tau_table(unsigned n_max) {
    if (n_max < 1 || n_max > 100'000) throw guard_error("tau_table: n_max outside [1, 10^5]");
    // coefficients of P = prod (1-q^n)^24 from the logarithmic derivative
    // q P'/P = -24 sum sigma(m) q^m, i.e. m p_m = -24 sum_{j<=m} sigma(j) p_{m-j}
    std::vector<u64> sigma(n_max, 0);
    for (u64 d = 1; d < n_max; ++d)
        for (u64 m = d; m < n_max; m += d) sigma[m] += d;

    std::vector<mpz_class> p(n_max);
    p[0] = 1;
    mpz_class acc;
    for (u64 m = 1; m < n_max; ++m) {
        acc = 0;
        for (u64 j = 1; j <= m; ++j) acc += mpz_from_u64(sigma[j]) * p[m - j];
        acc *= -24;
        mpz_divexact_ui(p[m].get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(m));
    }

    TauTable t;
    t.n_max = n_max;
    t.values = std::move(p);  // tau(n) = p_{n-1}
    return t;
}

HeckeParams delta_params(u64 p, const TauTable& table) {
    if (table.n_max < p) throw precondition_error("delta_params: tau table does not cover p");
    return HeckeParams(p, 12, mpq_class(table.tau(static_cast<unsigned>(p))), false);
}

HeckeParams delta_params(u64 p) {
    if (p > 100'000) throw guard_error("delta_params: p exceeds the tau table guard");
    return delta_params(p, tau_table(static_cast<unsigned>(p)));
}

RootOrders hecke_roots_mod_ell(const HeckeParams& params, u64 ell, u64 seed) {
    RootOrders ro{};
    ro.klass = discriminant_class(params, ell);
    u64 ap = mpq_mod_u64(params.a_p, ell);
    u64 pk = powmod(params.p % ell, params.k - 1, ell);
    // omega = x^2 - a_p x + p^{k-1} mod l
    ff::FpPoly omega(ell, {pk, submod(0, ap, ell), 1});
    if (ro.klass == 0) {
        // repeated root a_p / 2
        u64 root = mulmod(ap, invmod(2, ell), ell);
        auto K = ff::make_ext_field(ell, 1, seed);
        u64 t = ff::mult_order(K->embed(root));
        ro.order_alpha = ro.order_beta = t;
        ro.order_ratio = 1;
        return ro;
    }
    auto K = ff::make_ext_field(ell, ro.klass == 1 ? 1 : 2, seed);
    std::vector<ff::ExtFieldElement> roots;
    if (ro.klass == 1) {
        for (const auto& [f, mult] : ff::factor_poly(omega, seed))
            roots.push_back(K->embed(submod(0, f.coeff(0), ell)));
    } else {
        roots = ff::find_roots_in_ext(omega, K, seed);
    }
    ro.order_alpha = ff::mult_order(roots[0]);
    ro.order_beta = ff::mult_order(roots[1]);
    ro.order_ratio = ff::mult_order(roots[0] * roots[1].inverse());
    return ro;
}

}  // namespace recsum::modforms
