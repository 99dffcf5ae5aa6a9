#include "recsum/expsum.hpp"

#include <cmath>
#include <numbers>

namespace recsum::expsum {

namespace {

// e_p(c) table in extended precision; character sums are accumulated in
// long double so the stated tau * 2^-40 budget holds with room to spare
std::vector<std::complex<long double>> root_table(u64 p) {
    std::vector<std::complex<long double>> e(p);
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    for (u64 c = 0; c < p; ++c) {
        long double a = two_pi * static_cast<long double>(c) / static_cast<long double>(p);
        e[c] = {std::cos(a), std::sin(a)};
    }
    return e;
}

void finish_profile(SumProfile& prof) {
    const u64 p = prof.p;
    auto e = root_table(p);
    prof.sums.assign(p, cplx{});
    for (u64 xi = 0; xi < p; ++xi) {
        std::complex<long double> acc{};
        for (u64 c = 0; c < p; ++c) {
            if (prof.histogram[c] == 0) continue;
            acc += static_cast<long double>(prof.histogram[c]) * e[mulmod(xi, c, p)];
        }
        prof.sums[xi] = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
    }
    prof.sums[0] = {static_cast<double>(prof.tau), 0.0};  // all phases vanish at xi = 0

    prof.max_xi = 1;
    prof.max_abs = std::abs(prof.sums[1]);
    for (u64 xi = 2; xi < p; ++xi) {
        double a = std::abs(prof.sums[xi]);
        if (a > prof.max_abs) {
            prof.max_abs = a;
            prof.max_xi = xi;
        }
    }
    prof.abs_at_one = std::abs(prof.sums[1]);
    if (prof.max_abs >= static_cast<double>(prof.tau)) {
        prof.empirical_delta = 0.0;
    } else {
        prof.empirical_delta =
            -std::log(prof.max_abs / static_cast<double>(prof.tau)) / std::log(static_cast<double>(p));
    }
}

}  // namespace

double SumProfile::parseval_lhs() const {
    long double s = 0;
    for (const auto& v : sums) s += (long double)std::norm(v);
    return static_cast<double>(s);
}

double SumProfile::parseval_rhs() const {
    long double s = 0;
    for (u64 h : histogram) s += (long double)h * (long double)h;
    return static_cast<double>(s * (long double)p);
}

SumProfile profile(const lrs::LinRecSeq& seq) {
    SumProfile prof;
    prof.p = seq.p();
    prof.degenerate = seq.degenerate();
    prof.tau = lrs::least_period(seq);
    if (prof.tau > iteration_guard()) throw guard_error("profile: period exceeds iteration guard");

    prof.histogram.assign(prof.p, 0);
    auto cur = seq.cursor();
    cur.next();  // histogram covers s_1 .. s_tau, one full period
    for (u64 n = 1; n <= prof.tau; ++n) prof.histogram[cur.next()]++;
    finish_profile(prof);
    return prof;
}

SumProfile profile_from_histogram(u64 p, const std::vector<u64>& histogram, bool degenerate) {
    if (histogram.size() != p) throw precondition_error("profile_from_histogram: histogram size != p");
    SumProfile prof;
    prof.p = p;
    prof.degenerate = degenerate;
    prof.tau = 0;
    for (u64 h : histogram) prof.tau += h;
    if (prof.tau == 0) throw precondition_error("profile_from_histogram: empty histogram");
    prof.histogram = histogram;
    finish_profile(prof);
    return prof;
}

KorobovReport korobov_check(const SumProfile& prof, unsigned r) {
    KorobovReport rep;
    rep.p = prof.p;
    rep.r = r;
    rep.bound = std::sqrt(static_cast<double>(checked_pow(prof.p, r).value()));
    rep.max_abs = prof.max_abs;
    rep.ratio = prof.max_abs / rep.bound;
    rep.satisfied = prof.max_abs <= rep.bound + 1e-6;
    return rep;
}

cplx ranged_sum(const lrs::LinRecSeq& seq, const mpz_class& x_bound, u64 xi) {
    const u64 p = seq.p();
    if (x_bound < p) throw precondition_error("ranged_sum: x must be at least p");
    // N = floor(log x / log p) by exact integer comparison
    mpz_class pw = p;
    u64 N = 0;
    while (pw <= x_bound) {
        ++N;
        pw *= p;
    }
    const u64 tau = lrs::least_period(seq);
    const u64 whole = N / tau, rem = N % tau;

    auto e = root_table(p);
    std::complex<long double> period_sum{}, prefix{};
    auto cur = seq.cursor();
    cur.next();
    for (u64 n = 1; n <= tau; ++n) {
        auto v = e[mulmod(xi % p, cur.next(), p)];
        period_sum += v;
        if (n <= rem) prefix += v;
    }
    std::complex<long double> total = static_cast<long double>(whole) * period_sum + prefix;
    return {static_cast<double>(total.real()), static_cast<double>(total.imag())};
}

u64 digit_inner_product(u64 b, u64 n, u64 ell) {
    u64 acc = 0;
    while (b && n) {
        acc = addmod(acc, mulmod(b % ell, n % ell, ell), ell);
        b /= ell;
        n /= ell;
    }
    return acc;
}

NonlinearityReport nonlinearity(const lrs::LinRecSeq& seq) {
    NonlinearityReport rep;
    rep.ell = seq.p();
    rep.r = seq.order();
    auto size = checked_pow(rep.ell, rep.r);
    if (!size || *size > 1'000'000) throw guard_error("nonlinearity: l^r exceeds the 10^6 guard");
    const u64 B = *size;
    rep.tau = lrs::least_period(seq);

    // W(b) over all b is an r-dimensional DFT of F[n] = e_l(s_n) on the
    // l-ary digit grid, one axis at a time
    auto e = root_table(rep.ell);
    std::vector<std::complex<long double>> F(B, {0.0L, 0.0L});
    auto cur = seq.cursor();
    cur.next();
    for (u64 n = 1; n <= rep.tau; ++n) F[n] = e[cur.next()];

    u64 stride = 1;
    for (unsigned axis = 0; axis < rep.r; ++axis) {
        std::vector<std::complex<long double>> col(rep.ell), out(rep.ell);
        for (u64 base = 0; base < B; ++base) {
            u64 digit = (base / stride) % rep.ell;
            if (digit != 0) continue;  // visit each column once
            for (u64 d = 0; d < rep.ell; ++d) col[d] = F[base + d * stride];
            for (u64 bd = 0; bd < rep.ell; ++bd) {
                std::complex<long double> acc{};
                for (u64 d = 0; d < rep.ell; ++d) acc += col[d] * e[mulmod(bd, d, rep.ell)];
                out[bd] = acc;
            }
            for (u64 d = 0; d < rep.ell; ++d) F[base + d * stride] = out[d];
        }
        stride *= rep.ell;
    }

    rep.values.resize(B);
    rep.max_b = 0;
    rep.max_abs = -1.0;
    for (u64 b = 0; b < B; ++b) {
        rep.values[b] = {static_cast<double>(F[b].real()), static_cast<double>(F[b].imag())};
        double a = std::abs(rep.values[b]);
        if (a > rep.max_abs) {
            rep.max_abs = a;
            rep.max_b = b;
        }
    }
    rep.sw_bound = std::pow(static_cast<double>(rep.tau), 0.75) *
                   std::pow(static_cast<double>(rep.r), 0.25) *
                   std::pow(static_cast<double>(rep.ell), static_cast<double>(rep.r) / 8.0);
    return rep;
}

cplx gauss_subgroup_sum(const ff::ExtFieldElement& alpha, const ff::ExtFieldElement& psi_seed) {
    if (alpha.is_zero() || psi_seed.is_zero())
        throw precondition_error("gauss_subgroup_sum: zero input");
    const u64 p = alpha.ctx()->base.p;
    const u64 t = ff::mult_order(alpha);
    auto e = root_table(p);
    std::complex<long double> acc{};
    ff::ExtFieldElement pw = alpha;
    for (u64 n = 1; n <= t; ++n) {
        acc += e[ff::trace(psi_seed * pw)];
        pw = pw * alpha;
    }
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

}  // namespace recsum::expsum
