#pragma once

#include <vector>

#include "recsum/common.hpp"
#include "recsum/ff.hpp"

namespace recsum::lrs {

// Order-r linear recurrence s_{n+r} = a_{r-1} s_{n+r-1} + ... + a_0 s_n over
// F_p, with gcd(a_0, p) = 1 so that the companion map is invertible and the
// sequence is purely periodic.
class LinRecSeq {
public:
    LinRecSeq(u64 p, std::vector<u64> coeffs, std::vector<u64> init);

    u64 p() const { return p_; }
    unsigned order() const { return static_cast<unsigned>(coeffs_.size()); }
    const std::vector<u64>& coeffs() const { return coeffs_; }
    const std::vector<u64>& init() const { return init_; }
    // all-zero initial state; period 1, excluded from sum statistics
    bool degenerate() const { return degenerate_; }

    ff::FpPoly char_poly() const { return ff::FpPoly::from_recurrence(p_, coeffs_); }

    u64 term(u64 n) const;
    std::vector<u64> iterate(u64 count) const;  // s_0 .. s_{count-1}

    // Stateful stream over the sequence; each cursor owns its state.
    class Cursor {
    public:
        explicit Cursor(const LinRecSeq& s) : seq_(s), state_(s.init_) {}
        u64 next();  // yields s_0, s_1, ...

    private:
        const LinRecSeq& seq_;
        std::vector<u64> state_;
        u64 pos_ = 0;
    };
    Cursor cursor() const { return Cursor(*this); }

private:
    u64 p_;
    std::vector<u64> coeffs_;
    std::vector<u64> init_;
    bool degenerate_;

    friend class Cursor;
    friend u64 least_period(const LinRecSeq&);
    void step(std::vector<u64>& state) const;
};

LinRecSeq make_seq(u64 p, std::vector<u64> coeffs, std::vector<u64> init);
LinRecSeq fibonacci(u64 p);                 // coeffs (1,1), init (0,1)
LinRecSeq geometric(u64 p, u64 g, u64 s0 = 1);

// Least tau >= 1 with s_{n+tau} = s_n for all n. The companion map is
// invertible, so the state orbit is a pure cycle and tau is the first return
// of the initial state. Degenerate all-zero sequences report tau = 1.
u64 least_period(const LinRecSeq& seq);

// Spectral form s_n = sum_i Tr_{F_{p^{d_i}}/F_p}(gamma_i alpha_i^n) for a
// square-free characteristic polynomial, one term per irreducible factor.
struct SpectralData {
    ff::FpPoly char_poly;
    ff::ExtFieldCtxPtr splitting_field;  // degree lcm of factor degrees

    struct Component {
        ff::FpPoly factor;
        unsigned degree;
        ff::ExtFieldElement root;     // orbit representative alpha_i
        ff::ExtFieldElement gamma;    // trace coefficient, lies in F_{p^degree}
        u64 root_order;               // tau_i = ord(alpha_i)
    };
    std::vector<Component> components;
    u64 least_period;

    // evaluate the trace form at one index
    u64 reconstruct_term(u64 n) const;
    // evaluate for n = 0..count-1 with incremental root powers
    std::vector<u64> reconstruct(u64 count) const;
};

SpectralData spectral_decompose(const LinRecSeq& seq, u64 seed = 0);

// Weighted sum of sequences over the same prime: the characteristic
// polynomial of the result is the literal product of the component
// polynomials (duplicate factors are not collapsed).
LinRecSeq combine(const std::vector<LinRecSeq>& seqs, const std::vector<u64>& weights);

}  // namespace recsum::lrs
