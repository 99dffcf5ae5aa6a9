#include "recsum/waring.hpp"

#include <cmath>
#include <numbers>

namespace recsum::waring {

namespace {

std::vector<mpz_class> convolve_mod_ell(const std::vector<mpz_class>& a,
                                        const std::vector<u64>& hist, u64 ell) {
    std::vector<mpz_class> out(ell, mpz_class(0));
    for (u64 i = 0; i < ell; ++i) {
        if (a[i] == 0) continue;
        for (u64 j = 0; j < ell; ++j) {
            if (hist[j] == 0) continue;
            u64 t = i + j;
            if (t >= ell) t -= ell;
            out[t] += a[i] * static_cast<unsigned long>(hist[j]);
        }
    }
    return out;
}

void validate_hist(u64 ell, const std::vector<u64>& histogram) {
    if (!is_prime_u64(ell)) throw precondition_error("waring: l is not prime");
    if (ell > 10'000) throw guard_error("waring: l exceeds the 10^4 convolution guard");
    if (histogram.size() != ell) throw precondition_error("waring: histogram size != l");
}

}  // namespace

WaringTable representation_counts(u64 ell, const std::vector<u64>& histogram, unsigned k) {
    validate_hist(ell, histogram);
    if (k < 1) throw precondition_error("representation_counts: k must be >= 1");
    WaringTable t;
    t.ell = ell;
    t.k = k;
    t.histogram = histogram;
    t.counts.assign(ell, mpz_class(0));
    for (u64 c = 0; c < ell; ++c) t.counts[c] = static_cast<unsigned long>(histogram[c]);
    for (unsigned step = 1; step < k; ++step) t.counts = convolve_mod_ell(t.counts, histogram, ell);
    t.total = 0;
    for (const auto& v : t.counts) t.total += v;
    return t;
}

double fourier_check(const expsum::SumProfile& prof, const WaringTable& table) {
    if (prof.p != table.ell) throw precondition_error("fourier_check: mismatched moduli");
    mpz_class tau_check = 0;
    for (u64 h : prof.histogram) tau_check += static_cast<unsigned long>(h);
    mpz_class expect;
    mpz_pow_ui(expect.get_mpz_t(), tau_check.get_mpz_t(), table.k);
    if (prof.histogram != table.histogram || expect != table.total)
        throw precondition_error("fourier_check: profile and table come from different sources");

    const u64 ell = table.ell;
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    std::vector<std::complex<long double>> powk(ell);
    for (u64 xi = 1; xi < ell; ++xi) {
        std::complex<long double> s{prof.sums[xi].real(), prof.sums[xi].imag()};
        std::complex<long double> acc{1.0L, 0.0L};
        for (unsigned i = 0; i < table.k; ++i) acc *= s;
        powk[xi] = acc;
    }
    long double tau_k = std::pow(static_cast<long double>(prof.tau), (long double)table.k);
    double worst = 0.0;
    for (u64 lam = 0; lam < ell; ++lam) {
        std::complex<long double> acc{};
        for (u64 xi = 1; xi < ell; ++xi) {
            u64 phase = ell - mulmod(xi, lam, ell);  // e_l(-xi lam)
            if (phase == ell) phase = 0;
            long double ang = two_pi * static_cast<long double>(phase) / static_cast<long double>(ell);
            acc += powk[xi] * std::complex<long double>{std::cos(ang), std::sin(ang)};
        }
        long double formula = (tau_k + acc.real()) / static_cast<long double>(ell);
        long double diff = std::fabs(static_cast<long double>(table.counts[lam].get_d()) - formula);
        worst = std::max(worst, static_cast<double>(diff));
    }
    return worst;
}

std::optional<unsigned> min_basis_order(u64 ell, const std::vector<u64>& histogram,
                                        unsigned k_max) {
    validate_hist(ell, histogram);
    bool empty = true;
    for (u64 h : histogram) empty = empty && h == 0;
    if (empty) throw precondition_error("min_basis_order: all-zero histogram");

    std::vector<mpz_class> counts(ell, mpz_class(0));
    for (u64 c = 0; c < ell; ++c) counts[c] = static_cast<unsigned long>(histogram[c]);
    auto all_positive = [&counts] {
        for (const auto& v : counts)
            if (v == 0) return false;
        return true;
    };
    for (unsigned k = 1; k <= k_max; ++k) {
        if (k > 1) counts = convolve_mod_ell(counts, histogram, ell);
        if (all_positive()) {
            // support never shrinks once full
            auto next = convolve_mod_ell(counts, histogram, ell);
            for (const auto& v : next)
                if (v == 0) throw std::logic_error("min_basis_order: full support was lost");
            return k;
        }
    }
    return std::nullopt;
}

MainTermReport main_term_report(const WaringTable& table) {
    MainTermReport rep;
    rep.ell = table.ell;
    rep.k = table.k;
    rep.ratios.resize(table.ell);
    rep.max_deviation = 0.0;
    mpq_class scale(static_cast<unsigned long>(table.ell), 1);
    for (u64 lam = 0; lam < table.ell; ++lam) {
        mpq_class ratio = mpq_class(table.counts[lam]) * scale / mpq_class(table.total);
        rep.ratios[lam] = ratio.get_d();
        rep.max_deviation = std::max(rep.max_deviation, std::fabs(rep.ratios[lam] - 1.0));
    }
    return rep;
}

}  // namespace recsum::waring
