#pragma once

#include <gmpxx.h>
#include <optional>

#include "recsum/lrs.hpp"

namespace recsum::hypotheses {

// tau > p^{r/p(r) + eps} (the improved range) and tau > p^{r/2 - 1/6 + eps}
// (the classical nontrivial range), both by exact integer power comparison.
struct ImprovementReport {
    u64 p = 0;
    unsigned r = 0;
    u64 tau = 0;
    Fraction eps;
    u64 p_of_r = 0;             // least prime divisor of r
    bool paper_range = false;
    bool shparlinski_range = false;
    bool improvement_possible = false;  // p(r) > 2
};

ImprovementReport improvement_range(u64 p, unsigned r, u64 tau, const Fraction& eps);

// Arithmetic hypotheses on the root orders of a spectral decomposition.
// Threshold comparisons against p^eps are exact (gcd^k p^m vs tau^k for
// eps = m/k); a conservative integer-ceiling variant is reported alongside.
struct ConditionReport {
    u64 p = 0;
    unsigned seq_order = 0;
    u64 tau = 0;
    Fraction eps, eps2;
    bool equal_degrees = false;
    unsigned common_degree = 0;  // 0 when degrees are mixed

    struct RootRow {
        unsigned degree = 0;
        u64 tau_i = 0;
        u64 worst_gcd = 0;  // max over proper divisors d of the common degree
        bool cond_a_strict = false;
        bool cond_a_conservative = false;
    };
    std::vector<RootRow> roots;

    // empty optionals mean "inapplicable" (mixed degrees or degree 1)
    std::optional<bool> condition_a, condition_a_conservative;
    std::optional<bool> condition_b, condition_b_conservative;
    u64 min_pair_gcd = 0;  // smallest gcd(tau_i, tau_j) over same-degree pairs

    bool shparlinski = false;     // period-level condition at eps
    u64 shparlinski_worst_gcd = 0;
    bool korobov_nontrivial = false;  // p^{r/2} < tau
    ImprovementReport improvement;
    std::string note;
};

ConditionReport check_conditions(const lrs::SpectralData& spectral, const Fraction& eps,
                                 const Fraction& eps2);

// Root-of-unity verdicts for the roots of x^2 + a x + b and their ratio,
// decided exactly from the discriminant and the trace of the ratio.
struct RootOfUnityVerdict {
    bool alpha = false, beta = false, ratio = false;
    unsigned alpha_order = 0, beta_order = 0, ratio_order = 0;  // 0 = not a root of unity
    bool any() const { return alpha || beta || ratio; }
};

RootOfUnityVerdict root_of_unity_test(i64 a, i64 b);

// Scan fallback: least t <= t_max with omega(x) | x^t - 1 over Q.
std::optional<unsigned> cyclotomic_order_by_division(i64 a, i64 b, unsigned t_max = 420);

// G_T(x) = prod_{t<=T} (x^t - 1)(x^{2t} - b^t), ascending coefficients.
std::vector<mpz_class> lemma_poly(i64 b, unsigned T);

// Res(omega, G_T) as an exact integer via CRT over word-sized primes, plus
// the primes it excludes: every prime l <= scan_bound at which some root
// order drops to T or below divides resultant * disc * b.
struct ExclusionCertificate {
    i64 a = 0, b = 0;
    unsigned T = 0;
    mpz_class resultant;
    mpz_class disc;
    bool resultant_zero = false;
    RootOfUnityVerdict diagnostic;  // populated when the resultant vanishes
    std::vector<std::pair<mpz_class, unsigned>> factors;  // partial factorization of |Res|
    mpz_class composite_remainder;                        // 1 when fully factored
    u64 scan_bound = 0;
    std::vector<u64> excluded_primes;  // primes <= scan_bound dividing Res*disc*b
    unsigned crt_primes_used = 0;
};

ExclusionCertificate resultant_exclusion(i64 a, i64 b, unsigned T, u64 scan_bound = 1000);

}  // namespace recsum::hypotheses
