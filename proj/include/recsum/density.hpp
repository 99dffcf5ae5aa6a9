#pragma once

#include <gmpxx.h>
#include <functional>
#include <map>

#include "recsum/modforms.hpp"

namespace recsum::density {

// |GL_2(F_l)| = (l^2 - 1)(l^2 - l)
mpz_class gl2_order(u64 ell);

// Exact |{(a,b) in (F_l*)^2 : ord(a) > t, ord(b) > t, ord(a b^{-1}) > t}|,
// counted through the divisor lattice of l-1 (no elementwise pair scan).
mpz_class count_S1(u64 ell, u64 t);

// Exact |{lambda in F_{l^2} \ F_l : ord(lambda) > t, ord(lambda^{l-1}) > t}|
// via Euler-phi weights over the divisor lattice of l^2 - 1.
mpz_class count_S2(u64 ell, u64 t);

struct DensityReport {
    u64 ell = 0;
    Fraction eps;
    u64 t = 0;                    // floor(l^eps)
    mpz_class s1, s2, gl2;
    double lower_bound = 0.0;     // ((l-1) l |S1| + (l+1) l |S2|) / (2 |GL2|)
    double class_weighted_bound = 0.0;  // |C_{a,b}| and |C_lambda| paired with S1/S2
    double gap = 0.0;             // 1 - lower_bound
    double reference_curve_3eps = 0.0;  // 1 - l^{-(1-3 eps)}
    double reference_curve_2eps = 0.0;  // 1 - l^{-(1-2 eps)}
};

DensityReport density_lower_bound(u64 ell, const Fraction& eps);

// Count of nice 2r-tuples in (F_l*)^{2r}: per-entry orders above t, pairwise
// ratio orders above t, all blockwise products equal and a (k-1)-th power.
struct NiceTupleReport {
    u64 ell = 0;
    unsigned r = 0;
    unsigned k = 0;
    u64 t = 0;
    mpz_class count;
    mpz_class delta_r_order;       // |Delta_r^{(k-1)}(l)|
    mpz_class class_product_lower; // count * (l(l+1)/2)^r
    double density_bound = 0.0;    // class_product_lower / delta_r_order
    double reference = 0.0;        // 2^{-r}
};

NiceTupleReport nice_tuple_count(u64 ell, unsigned r, unsigned k, u64 t);

// Empirical Frobenius statistics: fraction of primes p <= budget whose Hecke
// polynomial roots mod l all have order above floor(l^eps).
struct FrobeniusSample {
    u64 ell = 0;
    Fraction eps;
    u64 t = 0;
    u64 budget = 0;
    struct Row {
        u64 p;
        int klass;
        u64 order_alpha, order_beta, order_ratio;
        bool pass;
    };
    std::vector<Row> rows;
    u64 satisfied = 0;
    double fraction = 0.0;
    double reference_lower_bound = 0.0;  // density_lower_bound at the same (l, eps)
};

FrobeniusSample frobenius_sample(unsigned k,
                                 const std::function<mpq_class(u64)>& coefficient_at,
                                 u64 ell, u64 prime_budget, const Fraction& eps, u64 seed = 0);

// floor(l^{m/k}) by exact integer root extraction
u64 floor_pow_fraction(u64 ell, const Fraction& eps);

}  // namespace recsum::density
