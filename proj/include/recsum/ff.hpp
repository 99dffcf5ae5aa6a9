#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "recsum/common.hpp"

namespace recsum::ff {

// ---- prime base field ----

struct PrimeFieldCtx {
    u64 p;

    explicit PrimeFieldCtx(u64 prime) : p(prime) {
        if (!is_prime_u64(prime)) throw precondition_error("PrimeFieldCtx: modulus is not prime");
    }
};

// ---- dense polynomials over F_p ----
//
// Canonical form: no trailing zero coefficients; the zero polynomial is the
// empty vector. Coefficients live in [0, p).
class FpPoly {
public:
    FpPoly() = default;
    FpPoly(u64 p, std::vector<u64> coeffs);

    static FpPoly zero(u64 p) { return FpPoly(p, {}); }
    static FpPoly constant(u64 p, u64 c) { return FpPoly(p, {c % p}); }
    static FpPoly x(u64 p) { return FpPoly(p, {0, 1}); }
    // x^r - a_{r-1} x^{r-1} - ... - a_0 from recurrence coefficients a_0..a_{r-1}
    static FpPoly from_recurrence(u64 p, const std::vector<u64>& rec_coeffs);

    u64 p() const { return p_; }
    const std::vector<u64>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    u64 coeff(size_t i) const { return i < c_.size() ? c_[i] : 0; }
    u64 leading() const { return c_.empty() ? 0 : c_.back(); }
    bool is_monic() const { return leading() == 1; }

    bool operator==(const FpPoly& o) const { return p_ == o.p_ && c_ == o.c_; }

    FpPoly operator+(const FpPoly& o) const;
    FpPoly operator-(const FpPoly& o) const;
    FpPoly operator*(const FpPoly& o) const;
    FpPoly scaled(u64 k) const;
    FpPoly monic() const;

    // division with remainder; divisor must be nonzero
    std::pair<FpPoly, FpPoly> divmod(const FpPoly& d) const;
    FpPoly operator%(const FpPoly& d) const { return divmod(d).second; }
    FpPoly operator/(const FpPoly& d) const { return divmod(d).first; }

    FpPoly derivative() const;
    u64 eval(u64 x) const;

    std::string str() const;  // display form, e.g. "x^2 + 2x + 1"

private:
    u64 p_ = 0;
    std::vector<u64> c_;
    void normalize();
};

FpPoly gcd(const FpPoly& a, const FpPoly& b);           // monic gcd
FpPoly powmod(const FpPoly& base, u64 e, const FpPoly& m);

// x^(p^d) mod f, by iterated p-th powering
FpPoly frobenius_power_x(const FpPoly& f, unsigned d);

bool is_irreducible(const FpPoly& f);

// Irreducible factors with multiplicities, deterministic given the seed.
// Square-free decomposition, then distinct-degree, then seeded
// Cantor-Zassenhaus equal-degree splitting. Factors are monic and sorted.
std::vector<std::pair<FpPoly, unsigned>> factor_poly(const FpPoly& f, u64 seed = 0);

// ---- extension field F_{p^r}, polynomial basis ----

struct ExtFieldCtx;
using ExtFieldCtxPtr = std::shared_ptr<const ExtFieldCtx>;

class ExtFieldElement {
public:
    ExtFieldElement() = default;
    ExtFieldElement(ExtFieldCtxPtr ctx, std::vector<u64> coeffs);

    const ExtFieldCtxPtr& ctx() const { return ctx_; }
    const std::vector<u64>& coeffs() const { return c_; }
    bool is_zero() const;
    // true when the element lies in the embedded base field
    bool in_base_field() const;
    u64 base_value() const;  // requires in_base_field()

    bool operator==(const ExtFieldElement& o) const;
    bool operator!=(const ExtFieldElement& o) const { return !(*this == o); }
    ExtFieldElement operator+(const ExtFieldElement& o) const;
    ExtFieldElement operator-(const ExtFieldElement& o) const;
    ExtFieldElement operator*(const ExtFieldElement& o) const;
    ExtFieldElement pow(u64 e) const;
    ExtFieldElement inverse() const;

    std::string str() const;

private:
    ExtFieldCtxPtr ctx_;
    std::vector<u64> c_;  // length r, degree < r
};

struct ExtFieldCtx : std::enable_shared_from_this<ExtFieldCtx> {
    PrimeFieldCtx base;
    unsigned r;
    FpPoly modulus;                                     // monic irreducible, degree r
    u64 order;                                          // p^r
    std::vector<std::pair<u64, unsigned>> group_factors;  // factorization of p^r - 1

    ExtFieldElement zero() const;
    ExtFieldElement one() const;
    ExtFieldElement embed(u64 a) const;   // base-field constant
    ExtFieldElement gen() const;          // the class of x
    ExtFieldElement from_coeffs(std::vector<u64> c) const;

    ExtFieldCtx(PrimeFieldCtx b, unsigned deg, FpPoly mod);
};

// Deterministic for fixed (p, r, seed): the modulus is the first irreducible
// hit by a seed-keyed pseudorandom scan over monic degree-r candidates.
ExtFieldCtxPtr make_ext_field(u64 p, unsigned r, u64 seed = 0);

// Same field with a caller-chosen modulus (validated irreducible).
ExtFieldCtxPtr make_ext_field_with_modulus(u64 p, const std::vector<u64>& modulus_coeffs);

ExtFieldElement frobenius(const ExtFieldElement& z);  // z^p

// Absolute trace F_{p^r} -> F_p: z + z^p + ... + z^(p^(r-1)).
u64 trace(const ExtFieldElement& z);

// Trace over the subfield F_{p^d} containing z (requires z^(p^d) = z).
u64 subfield_trace(const ExtFieldElement& z, unsigned d);

// Least t >= 1 with z^t = 1, by dividing prime factors out of p^r - 1.
u64 mult_order(const ExtFieldElement& z);

// All d roots in ctx of an irreducible degree-d polynomial over F_p with
// d | r, ordered as a Frobenius orbit starting from the lexicographically
// smallest root.
std::vector<ExtFieldElement> find_roots_in_ext(const FpPoly& f, const ExtFieldCtxPtr& ctx,
                                               u64 seed = 0);

}  // namespace recsum::ff
