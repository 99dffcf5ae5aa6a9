#pragma once

#include <complex>
#include <gmpxx.h>

#include "recsum/ff.hpp"
#include "recsum/lrs.hpp"

namespace recsum::expsum {

using cplx = std::complex<double>;

// Value histogram of one least period plus the character sums
// S(xi) = sum_{n<=tau} e_p(xi s_n) for every xi in F_p.
struct SumProfile {
    u64 p = 0;
    u64 tau = 0;
    bool degenerate = false;
    std::vector<u64> histogram;   // histogram[c] = #{1 <= n <= tau : s_n = c}
    std::vector<cplx> sums;       // sums[xi] = S(xi); S(0) = tau exactly
    u64 max_xi = 0;               // maximizing xi in F_p^*, smallest on ties
    double max_abs = 0.0;         // |S(max_xi)|
    double abs_at_one = 0.0;      // |S(1)|, reported alongside the max
    double empirical_delta = 0.0; // -log_p(max_abs / tau), clamped at 0

    double parseval_lhs() const;  // sum over xi of |S(xi)|^2
    double parseval_rhs() const;  // p * sum over c of histogram[c]^2
};

SumProfile profile(const lrs::LinRecSeq& seq);

// Histogram-only variant for an externally supplied value histogram.
SumProfile profile_from_histogram(u64 p, const std::vector<u64>& histogram, bool degenerate = false);

struct KorobovReport {
    u64 p = 0;
    unsigned r = 0;
    double bound = 0.0;      // p^{r/2}
    double max_abs = 0.0;
    double ratio = 0.0;      // max_abs / bound
    bool satisfied = false;  // max_abs <= bound + 1e-6
};

KorobovReport korobov_check(const SumProfile& prof, unsigned r);

// Sum of e_p(xi s_n) over 1 <= n <= floor(log x / log p), i.e. over prime
// powers p^n <= x, assembled from whole periods plus a remainder segment.
cplx ranged_sum(const lrs::LinRecSeq& seq, const mpz_class& x_bound, u64 xi);

// Nonlinearity sums W(b) = sum_{n<=tau} e_l(s_n + <b,n>) with the l-ary
// digit inner product, for every 0 <= b < l^r.
struct NonlinearityReport {
    u64 ell = 0;
    unsigned r = 0;
    u64 tau = 0;
    std::vector<cplx> values;     // indexed by b
    u64 max_b = 0;                // argmax |W(b)|, smallest on ties
    double max_abs = 0.0;
    double sw_bound = 0.0;        // tau^{3/4} r^{1/4} l^{r/8} reference
};

NonlinearityReport nonlinearity(const lrs::LinRecSeq& seq);

// <b,n> = sum of digit products of the l-ary expansions of b and n, mod l.
u64 digit_inner_product(u64 b, u64 n, u64 ell);

// Sum of psi(alpha^n) over one full multiplicative cycle n = 1..ord(alpha),
// with psi(z) = e_p(Tr(psi_seed * z)).
cplx gauss_subgroup_sum(const ff::ExtFieldElement& alpha, const ff::ExtFieldElement& psi_seed);

}  // namespace recsum::expsum
