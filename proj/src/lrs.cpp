#include "recsum/lrs.hpp"

#include <algorithm>
#include <numeric>

namespace recsum::lrs {

LinRecSeq::LinRecSeq(u64 p, std::vector<u64> coeffs, std::vector<u64> init)
    : p_(p), coeffs_(std::move(coeffs)), init_(std::move(init)) {
    if (!is_prime_u64(p_)) throw precondition_error("LinRecSeq: modulus is not prime");
    if (coeffs_.empty()) throw precondition_error("LinRecSeq: empty coefficient list");
    if (coeffs_.size() != init_.size())
        throw precondition_error("LinRecSeq: coefficient and initial-value counts differ");
    for (auto& v : coeffs_) v %= p_;
    for (auto& v : init_) v %= p_;
    if (coeffs_[0] == 0)
        throw precondition_error("LinRecSeq: a_0 = 0 mod p violates the periodicity hypothesis");
    degenerate_ = std::all_of(init_.begin(), init_.end(), [](u64 v) { return v == 0; });
}

void LinRecSeq::step(std::vector<u64>& state) const {
    u64 next = 0;
    for (size_t i = 0; i < coeffs_.size(); ++i)
        next = addmod(next, mulmod(coeffs_[i], state[i], p_), p_);
    std::rotate(state.begin(), state.begin() + 1, state.end());
    state.back() = next;
}

u64 LinRecSeq::term(u64 n) const {
    if (n < init_.size()) return init_[n];
    std::vector<u64> state = init_;
    for (u64 i = init_.size(); i <= n; ++i) step(state);
    return state.back();
}

std::vector<u64> LinRecSeq::iterate(u64 count) const {
    std::vector<u64> out;
    out.reserve(count);
    Cursor c(*this);
    for (u64 i = 0; i < count; ++i) out.push_back(c.next());
    return out;
}

u64 LinRecSeq::Cursor::next() {
    if (pos_ < seq_.init_.size()) return seq_.init_[pos_++];
    seq_.step(state_);
    ++pos_;
    return state_.back();
}

LinRecSeq make_seq(u64 p, std::vector<u64> coeffs, std::vector<u64> init) {
    return LinRecSeq(p, std::move(coeffs), std::move(init));
}

LinRecSeq fibonacci(u64 p) { return LinRecSeq(p, {1, 1}, {0, 1}); }

LinRecSeq geometric(u64 p, u64 g, u64 s0) { return LinRecSeq(p, {g}, {s0}); }

u64 least_period(const LinRecSeq& seq) {
    if (seq.degenerate()) return 1;
    // invertible companion map: the first return of the initial state is the
    // least period, with no preperiod possible
    std::vector<u64> state = seq.init_;
    const u64 cap = iteration_guard();
    for (u64 n = 1; n <= cap; ++n) {
        seq.step(state);
        if (state == seq.init_) return n;
    }
    throw guard_error("least_period: iteration guard exceeded");
}

u64 SpectralData::reconstruct_term(u64 n) const {
    u64 p = splitting_field->base.p;
    u64 s = 0;
    for (const auto& c : components)
        s = addmod(s, ff::subfield_trace(c.gamma * c.root.pow(n), c.degree), p);
    return s;
}

std::vector<u64> SpectralData::reconstruct(u64 count) const {
    u64 p = splitting_field->base.p;
    std::vector<ff::ExtFieldElement> pw;
    pw.reserve(components.size());
    for (const auto& c : components) pw.push_back(splitting_field->one());
    std::vector<u64> out;
    out.reserve(count);
    for (u64 n = 0; n < count; ++n) {
        u64 s = 0;
        for (size_t i = 0; i < components.size(); ++i) {
            s = addmod(s, ff::subfield_trace(components[i].gamma * pw[i], components[i].degree), p);
            pw[i] = pw[i] * components[i].root;
        }
        out.push_back(s);
    }
    return out;
}

namespace {

// Gaussian elimination over the splitting field; the Vandermonde matrix of
// distinct roots is invertible.
std::vector<ff::ExtFieldElement> solve_linear(std::vector<std::vector<ff::ExtFieldElement>> m,
                                              std::vector<ff::ExtFieldElement> rhs,
                                              const ff::ExtFieldCtxPtr& K) {
    size_t n = rhs.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        if (piv == n) throw std::logic_error("spectral system is singular");
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        ff::ExtFieldElement inv = m[col][col].inverse();
        for (size_t j = col; j < n; ++j) m[col][j] = m[col][j] * inv;
        rhs[col] = rhs[col] * inv;
        for (size_t row = 0; row < n; ++row) {
            if (row == col || m[row][col].is_zero()) continue;
            ff::ExtFieldElement f = m[row][col];
            for (size_t j = col; j < n; ++j) m[row][j] = m[row][j] - f * m[col][j];
            rhs[row] = rhs[row] - f * rhs[col];
        }
    }
    return rhs;
}

}  // namespace

SpectralData spectral_decompose(const LinRecSeq& seq, u64 seed) {
    const u64 p = seq.p();
    ff::FpPoly omega = seq.char_poly();
    if (omega.coeff(0) == 0) throw precondition_error("spectral_decompose: zero constant term");
    if (ff::gcd(omega, omega.derivative()).degree() != 0)
        throw precondition_error("spectral_decompose: characteristic polynomial has repeated roots");

    auto factors = ff::factor_poly(omega, seed);
    unsigned L = 1;
    for (const auto& [f, mult] : factors) {
        if (mult != 1) throw std::logic_error("square-free polynomial factored with multiplicity");
        L = static_cast<unsigned>(std::lcm<u64>(L, static_cast<u64>(f.degree())));
    }
    auto K = ff::make_ext_field(p, L, seed);

    // collect the full root list grouped by factor orbit
    struct OrbitInfo {
        ff::FpPoly factor;
        std::vector<ff::ExtFieldElement> roots;
    };
    std::vector<OrbitInfo> orbits;
    std::vector<ff::ExtFieldElement> all_roots;
    for (const auto& [f, mult] : factors) {
        auto roots = ff::find_roots_in_ext(f, K, seed);
        for (const auto& rt : roots) all_roots.push_back(rt);
        orbits.push_back({f, std::move(roots)});
    }

    // solve the r x r Vandermonde system for the per-root amplitudes
    const unsigned r = seq.order();
    std::vector<u64> head = seq.iterate(r);
    std::vector<std::vector<ff::ExtFieldElement>> m(r);
    std::vector<ff::ExtFieldElement> rhs;
    std::vector<ff::ExtFieldElement> pw(all_roots.size(), K->one());
    for (unsigned n = 0; n < r; ++n) {
        m[n] = pw;
        rhs.push_back(K->embed(head[n]));
        for (size_t j = 0; j < all_roots.size(); ++j) pw[j] = pw[j] * all_roots[j];
    }
    auto beta = solve_linear(std::move(m), std::move(rhs), K);

    SpectralData sd;
    sd.char_poly = omega;
    sd.splitting_field = K;
    sd.least_period = least_period(seq);
    size_t idx = 0;
    for (auto& orb : orbits) {
        SpectralData::Component c{orb.factor, static_cast<unsigned>(orb.factor.degree()),
                                  orb.roots.front(), beta[idx], 0};
        // conjugate amplitudes within an orbit collapse to one trace term
        ff::ExtFieldElement expect = beta[idx];
        for (size_t j = 0; j + 1 < orb.roots.size(); ++j) {
            expect = ff::frobenius(expect);
            if (beta[idx + j + 1] != expect)
                throw std::logic_error("orbit amplitudes are not Frobenius conjugates");
        }
        if (c.gamma.pow(checked_pow(p, c.degree).value()) != c.gamma)
            throw std::logic_error("gamma does not lie in the component subfield");
        c.root_order = ff::mult_order(c.root);
        idx += orb.roots.size();
        sd.components.push_back(std::move(c));
    }
    return sd;
}

LinRecSeq combine(const std::vector<LinRecSeq>& seqs, const std::vector<u64>& weights) {
    if (seqs.empty() || seqs.size() != weights.size())
        throw precondition_error("combine: need matching nonempty sequence and weight lists");
    const u64 p = seqs.front().p();
    for (const auto& s : seqs)
        if (s.p() != p) throw precondition_error("combine: mismatched moduli");

    ff::FpPoly prod = ff::FpPoly::constant(p, 1);
    u64 total_order = 0;
    for (const auto& s : seqs) {
        total_order += s.order();
        if (total_order > 64) throw guard_error("combine: combined order exceeds the width limit");
        prod = prod * s.char_poly();
    }
    const unsigned R = static_cast<unsigned>(prod.degree());
    // x^R - a_{R-1} x^{R-1} - ... - a_0 gives back the recurrence coefficients
    std::vector<u64> coeffs(R);
    for (unsigned i = 0; i < R; ++i) coeffs[i] = submod(0, prod.coeff(i), p);

    std::vector<u64> init(R, 0);
    for (size_t k = 0; k < seqs.size(); ++k) {
        auto terms = seqs[k].iterate(R);
        for (unsigned i = 0; i < R; ++i)
            init[i] = addmod(init[i], mulmod(weights[k] % p, terms[i], p), p);
    }
    return LinRecSeq(p, std::move(coeffs), std::move(init));
}

}  // namespace recsum::lrs
