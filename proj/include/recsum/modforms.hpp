#pragma once

#include <gmpxx.h>
#include <map>
#include <optional>

#include "recsum/expsum.hpp"
#include "recsum/lrs.hpp"

namespace recsum::modforms {

// nonnegative residue of an exact rational mod m (denominator must be invertible)
u64 mpz_mod_u64(const mpz_class& v, u64 m);
u64 mpq_mod_u64(const mpq_class& v, u64 m);

// Eigenform data at one prime: weight k, coefficient a_p, and whether p
// divides the level (then a(p^n) = a_p^n instead of the order-2 recurrence).
struct HeckeParams {
    u64 p;
    unsigned k;          // even weight >= 2
    mpq_class a_p;       // exact rational coefficient
    bool level_divides;

    HeckeParams(u64 p_, unsigned k_, mpq_class ap, bool level_div = false);

    mpq_class discriminant() const;  // a_p^2 - 4 p^{k-1}, never zero
    bool satisfies_deligne_bound() const;  // a_p^2 <= 4 p^{k-1}
};

// a(p^0) .. a(p^n_max) via a(p^{n+2}) = a(p) a(p^{n+1}) - p^{k-1} a(p^n),
// exact; plain powers a_p^n when p divides the level.
std::vector<mpq_class> hecke_power_seq(const HeckeParams& params, unsigned n_max);

// The same sequence reduced mod l as a linear recurrence over F_l.
lrs::LinRecSeq hecke_mod_seq(const HeckeParams& params, u64 ell);

// Legendre symbol of the discriminant mod l: +1 split, -1 inert, 0 ramified.
int discriminant_class(const HeckeParams& params, u64 ell);

// Least u >= 1 with a(p^u) = 0, scanned exactly up to u_max. A returned u is
// always odd for even weight (checked).
std::optional<unsigned> zero_index(const HeckeParams& params, unsigned u_max);

// Structure of the exceptional case a(p^u) = 0: the vanishing lattice
// a(p^{n(u+1)-1}) = 0 and the geometric factorization of off-lattice terms
// a(p^{n(u+1)+e-1}) = (sign p^{(u+1)(k-1)/2})^n a(p^{e-1}).
struct ExceptionalReport {
    unsigned u = 0;
    int sign = 0;                     // sign of alpha^{u+1}
    bool power_identity = false;      // alpha^{2(u+1)} = p^{(u+1)(k-1)} exactly
    bool lattice_vanishes = false;    // checked over the inspected range
    bool off_lattice_geometric = false;
    u64 tau = 0;                      // least period mod l
    double s1_abs = 0.0;              // |S(1)| of the mod-l profile
    double main_term = 0.0;           // tau / (u+1)
    double deviation = 0.0;           // |S(1) - tau/(u+1)|, reported not asserted
    double reference_scale = 0.0;     // tau * l^{-0.1} + u
};

ExceptionalReport exceptional_structure_check(const HeckeParams& params, u64 ell,
                                              unsigned u_max = 64, unsigned n_check = 200);

// Nested sum over n_i <= tau_i of e_l(xi a(p_1^{n_1} ... p_nu^{n_nu})),
// using multiplicativity of the coefficients. nu <= 3, product of periods
// bounded by the iteration guard.
expsum::cplx multi_prime_sum(const std::vector<HeckeParams>& params, u64 ell, u64 xi);

// Exact Ramanujan tau values tau(1..n_max) from the power-series expansion
// of q prod (1-q^n)^24.
struct TauTable {
    unsigned n_max;
    std::vector<mpz_class> values;  // values[n-1] = tau(n)

    const mpz_class& tau(unsigned n) const { return values.at(n - 1); }
};

TauTable tau_table(unsigned n_max);

// Delta eigenform data at p (k = 12, level 1), a_p = tau(p).
HeckeParams delta_params(u64 p);
HeckeParams delta_params(u64 p, const TauTable& table);

// Roots of x^2 - a_p x + p^{k-1} mod l together with their multiplicative
// orders; used by the Frobenius sampling and the exclusion cross-checks.
struct RootOrders {
    int klass;          // discriminant class: +1 split, -1 inert, 0 repeated
    u64 order_alpha;
    u64 order_beta;
    u64 order_ratio;    // ord(alpha beta^{-1}); 1 when the root repeats
};

RootOrders hecke_roots_mod_ell(const HeckeParams& params, u64 ell, u64 seed = 0);

}  // namespace recsum::modforms
