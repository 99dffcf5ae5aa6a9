#include "recsum/ff.hpp"

#include <algorithm>
#include <cstdio>

namespace recsum::ff {

// ================= FpPoly =================

FpPoly::FpPoly(u64 p, std::vector<u64> coeffs) : p_(p), c_(std::move(coeffs)) {
    for (auto& v : c_) v %= p_;
    normalize();
}

void FpPoly::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly FpPoly::from_recurrence(u64 p, const std::vector<u64>& rec) {
    std::vector<u64> c(rec.size() + 1);
    for (size_t i = 0; i < rec.size(); ++i) c[i] = (p - rec[i] % p) % p;
    c.back() = 1;
    return FpPoly(p, std::move(c));
}

FpPoly FpPoly::operator+(const FpPoly& o) const {
    std::vector<u64> c(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < c.size(); ++i) c[i] = addmod(coeff(i), o.coeff(i), p_);
    return FpPoly(p_, std::move(c));
}

FpPoly FpPoly::operator-(const FpPoly& o) const {
    std::vector<u64> c(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < c.size(); ++i) c[i] = submod(coeff(i), o.coeff(i), p_);
    return FpPoly(p_, std::move(c));
}

FpPoly FpPoly::operator*(const FpPoly& o) const {
    if (is_zero() || o.is_zero()) return zero(p_);
    std::vector<u64> c(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            c[i + j] = addmod(c[i + j], mulmod(c_[i], o.c_[j], p_), p_);
    }
    return FpPoly(p_, std::move(c));
}

FpPoly FpPoly::scaled(u64 k) const {
    std::vector<u64> c(c_);
    for (auto& v : c) v = mulmod(v, k % p_, p_);
    return FpPoly(p_, std::move(c));
}

FpPoly FpPoly::monic() const {
    if (is_zero() || leading() == 1) return *this;
    return scaled(invmod(leading(), p_));
}

std::pair<FpPoly, FpPoly> FpPoly::divmod(const FpPoly& d) const {
    if (d.is_zero()) throw precondition_error("FpPoly: division by zero polynomial");
    if (degree() < d.degree()) return {zero(p_), *this};
    std::vector<u64> rem(c_);
    std::vector<u64> quo(c_.size() - d.c_.size() + 1, 0);
    u64 inv_lead = invmod(d.leading(), p_);
    for (int i = static_cast<int>(rem.size()) - 1; i >= static_cast<int>(d.c_.size()) - 1; --i) {
        if (rem[i] == 0) continue;
        u64 q = mulmod(rem[i], inv_lead, p_);
        quo[i - d.degree()] = q;
        for (size_t j = 0; j < d.c_.size(); ++j) {
            size_t k = i - d.degree() + j;
            rem[k] = submod(rem[k], mulmod(q, d.c_[j], p_), p_);
        }
    }
    return {FpPoly(p_, std::move(quo)), FpPoly(p_, std::move(rem))};
}

FpPoly FpPoly::derivative() const {
    if (c_.size() <= 1) return zero(p_);
    std::vector<u64> c(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = mulmod(c_[i], i % p_, p_);
    return FpPoly(p_, std::move(c));
}

u64 FpPoly::eval(u64 x) const {
    u64 r = 0;
    x %= p_;
    for (size_t i = c_.size(); i-- > 0;) r = addmod(mulmod(r, x, p_), c_[i], p_);
    return r;
}

std::string FpPoly::str() const {
    if (is_zero()) return "0";
    std::string s;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        if (!s.empty()) s += " + ";
        if (i == 0 || c_[i] != 1) s += std::to_string(c_[i]);
        if (i >= 1) {
            s += "x";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

FpPoly gcd(const FpPoly& a, const FpPoly& b) {
    FpPoly x = a, y = b;
    while (!y.is_zero()) {
        FpPoly r = x % y;
        x = y;
        y = r;
    }
    return x.monic();
}

FpPoly powmod(const FpPoly& base, u64 e, const FpPoly& m) {
    FpPoly r = FpPoly::constant(base.p(), 1);
    FpPoly b = base % m;
    while (e) {
        if (e & 1) r = (r * b) % m;
        b = (b * b) % m;
        e >>= 1;
    }
    return r;
}

FpPoly frobenius_power_x(const FpPoly& f, unsigned d) {
    FpPoly h = FpPoly::x(f.p()) % f;
    for (unsigned i = 0; i < d; ++i) h = powmod(h, f.p(), f);
    return h;
}

bool is_irreducible(const FpPoly& f) {
    int r = f.degree();
    if (r < 1) return false;
    if (r == 1) return true;
    // x^(p^r) = x mod f, and gcd(f, x^(p^d) - x) = 1 for every d < r
    FpPoly h = FpPoly::x(f.p()) % f;
    for (int d = 1; d < r; ++d) {
        h = powmod(h, f.p(), f);
        FpPoly g = gcd(f, h - FpPoly::x(f.p()));
        if (g.degree() != 0) return false;
    }
    h = powmod(h, f.p(), f);
    return h == FpPoly::x(f.p()) % f;
}

// ---- factorization ----

namespace {

// p-th root of f when f' = 0, i.e. f(x) = g(x^p) with g = sum c_{ip} x^i
// (coefficients are already p-th powers in F_p).
FpPoly pth_root(const FpPoly& f) {
    u64 p = f.p();
    std::vector<u64> c(f.degree() / static_cast<int>(p) + 1, 0);
    for (size_t i = 0; i < c.size(); ++i) c[i] = f.coeff(i * p);
    return FpPoly(p, std::move(c));
}

// square-free decomposition: list of (square-free part, multiplicity)
void squarefree_decompose(const FpPoly& f, unsigned mult,
                          std::vector<std::pair<FpPoly, unsigned>>& out) {
    FpPoly df = f.derivative();
    if (df.is_zero()) {
        squarefree_decompose(pth_root(f), mult * static_cast<unsigned>(f.p()), out);
        return;
    }
    FpPoly c = gcd(f, df);
    FpPoly w = (f / c).monic();
    unsigned i = 1;
    while (w.degree() > 0) {
        FpPoly y = gcd(w, c);
        FpPoly z = (w / y).monic();
        if (z.degree() > 0) out.emplace_back(z, mult * i);
        w = y;
        c = (c / y).monic();
        ++i;
    }
    if (c.degree() > 0) squarefree_decompose(c, mult * static_cast<unsigned>(f.p()), out);
}

// equal-degree splitting of a monic square-free product of irreducibles of
// degree d, Cantor-Zassenhaus (odd p) or the GF(2) trace map
void equal_degree_split(const FpPoly& f, unsigned d, SplitMix64& rng, std::vector<FpPoly>& out) {
    if (f.degree() == static_cast<int>(d)) {
        out.push_back(f.monic());
        return;
    }
    u64 p = f.p();
    while (true) {
        std::vector<u64> rc(f.degree());
        for (auto& v : rc) v = rng.below(p);
        FpPoly a(p, std::move(rc));
        if (a.degree() < 1) continue;
        FpPoly g = gcd(f, a);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, d, rng, out);
            equal_degree_split((f / g).monic(), d, rng, out);
            return;
        }
        FpPoly b;
        if (p == 2) {
            // trace map a + a^2 + ... + a^(2^(d-1)) mod f
            b = a % f;
            FpPoly t = b;
            for (unsigned i = 1; i < d; ++i) {
                t = (t * t) % f;
                b = b + t;
            }
        } else {
            u64 e = (checked_pow(p, d).value() - 1) / 2;
            b = powmod(a, e, f) - FpPoly::constant(p, 1);
        }
        g = gcd(f, b);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, d, rng, out);
            equal_degree_split((f / g).monic(), d, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<std::pair<FpPoly, unsigned>> factor_poly(const FpPoly& f, u64 seed) {
    if (f.is_zero()) throw precondition_error("factor_poly: zero polynomial");
    if (f.degree() < 1) throw precondition_error("factor_poly: constant polynomial");
    SplitMix64 rng(mix_seed(seed, f.p()));
    std::vector<std::pair<FpPoly, unsigned>> sqfree;
    squarefree_decompose(f.monic(), 1, sqfree);

    std::vector<std::pair<FpPoly, unsigned>> factors;
    for (const auto& [part, mult] : sqfree) {
        // distinct-degree: strip degree-d irreducible content for d = 1, 2, ...
        FpPoly rem = part;
        FpPoly h = FpPoly::x(f.p()) % rem;
        for (unsigned d = 1; rem.degree() > 0 && static_cast<int>(d) <= rem.degree(); ++d) {
            h = powmod(h, f.p(), rem);
            FpPoly g = gcd(rem, h - FpPoly::x(f.p()));
            if (g.degree() > 0) {
                std::vector<FpPoly> irr;
                equal_degree_split(g, d, rng, irr);
                for (auto& q : irr) factors.emplace_back(std::move(q), mult);
                rem = (rem / g).monic();
                h = h % rem;
            }
            if (2 * (d + 1) > static_cast<unsigned>(rem.degree())) break;
        }
        if (rem.degree() > 0) factors.emplace_back(rem, mult);
    }
    std::sort(factors.begin(), factors.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return a.first.coeffs() < b.first.coeffs();
    });
    return factors;
}

// ================= extension field =================

ExtFieldCtx::ExtFieldCtx(PrimeFieldCtx b, unsigned deg, FpPoly mod)
    : base(b), r(deg), modulus(std::move(mod)) {
    if (r < 1) throw precondition_error("ExtFieldCtx: degree must be >= 1");
    auto q = checked_pow(base.p, r);
    if (!q) throw precondition_error("ExtFieldCtx: p^r exceeds the 2^63 budget");
    order = *q;
    if (modulus.degree() != static_cast<int>(r) || !modulus.is_monic())
        throw precondition_error("ExtFieldCtx: modulus is not monic of degree r");
    if (!is_irreducible(modulus)) throw precondition_error("ExtFieldCtx: modulus is reducible");
    group_factors = factor_u64(order - 1);
    u64 check = 1;
    for (const auto& [pf, e] : group_factors)
        for (unsigned i = 0; i < e; ++i) check *= pf;
    if (check != order - 1) throw std::logic_error("group order factorization mismatch");
}

ExtFieldElement ExtFieldCtx::zero() const {
    return ExtFieldElement(shared_from_this(), std::vector<u64>(r, 0));
}
ExtFieldElement ExtFieldCtx::one() const { return embed(1); }

ExtFieldElement ExtFieldCtx::embed(u64 a) const {
    std::vector<u64> c(r, 0);
    c[0] = a % base.p;
    return ExtFieldElement(shared_from_this(), std::move(c));
}

ExtFieldElement ExtFieldCtx::gen() const {
    if (r == 1) {
        // x = c in F_p[x]/(x - c)
        return embed(submod(0, modulus.coeff(0), base.p));
    }
    std::vector<u64> c(r, 0);
    c[1] = 1;
    return ExtFieldElement(shared_from_this(), std::move(c));
}

ExtFieldElement ExtFieldCtx::from_coeffs(std::vector<u64> c) const {
    c.resize(r, 0);
    for (auto& v : c) v %= base.p;
    return ExtFieldElement(shared_from_this(), std::move(c));
}

ExtFieldElement::ExtFieldElement(ExtFieldCtxPtr ctx, std::vector<u64> coeffs)
    : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
    if (c_.size() != ctx_->r) throw precondition_error("ExtFieldElement: wrong coefficient count");
}

bool ExtFieldElement::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](u64 v) { return v == 0; });
}

bool ExtFieldElement::in_base_field() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

u64 ExtFieldElement::base_value() const {
    if (!in_base_field()) throw precondition_error("base_value: element not in the base field");
    return c_[0];
}

bool ExtFieldElement::operator==(const ExtFieldElement& o) const {
    return ctx_.get() == o.ctx_.get() && c_ == o.c_;
}

ExtFieldElement ExtFieldElement::operator+(const ExtFieldElement& o) const {
    u64 p = ctx_->base.p;
    std::vector<u64> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = addmod(c_[i], o.c_[i], p);
    return ExtFieldElement(ctx_, std::move(c));
}

ExtFieldElement ExtFieldElement::operator-(const ExtFieldElement& o) const {
    u64 p = ctx_->base.p;
    std::vector<u64> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = submod(c_[i], o.c_[i], p);
    return ExtFieldElement(ctx_, std::move(c));
}

ExtFieldElement ExtFieldElement::operator*(const ExtFieldElement& o) const {
    u64 p = ctx_->base.p;
    unsigned r = ctx_->r;
    std::vector<u64> prod(2 * r - 1, 0);
    for (unsigned i = 0; i < r; ++i) {
        if (c_[i] == 0) continue;
        for (unsigned j = 0; j < r; ++j)
            prod[i + j] = addmod(prod[i + j], mulmod(c_[i], o.c_[j], p), p);
    }
    // reduce modulo the monic modulus
    const auto& m = ctx_->modulus.coeffs();
    for (size_t i = prod.size(); i-- > r;) {
        u64 lead = prod[i];
        if (lead == 0) continue;
        prod[i] = 0;
        for (unsigned j = 0; j < r; ++j)
            prod[i - r + j] = submod(prod[i - r + j], mulmod(lead, m[j], p), p);
    }
    prod.resize(r);
    return ExtFieldElement(ctx_, std::move(prod));
}

ExtFieldElement ExtFieldElement::pow(u64 e) const {
    ExtFieldElement r = ctx_->one();
    ExtFieldElement b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

ExtFieldElement ExtFieldElement::inverse() const {
    if (is_zero()) throw precondition_error("inverse of zero field element");
    return pow(ctx_->order - 2);
}

std::string ExtFieldElement::str() const {
    std::string s = "[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(c_[i]);
    }
    return s + "]";
}

ExtFieldCtxPtr make_ext_field(u64 p, unsigned r, u64 seed) {
    PrimeFieldCtx base(p);
    if (r == 1) return std::make_shared<const ExtFieldCtx>(base, 1, FpPoly::x(p));
    auto q = checked_pow(p, r);
    if (!q) throw precondition_error("make_ext_field: p^r exceeds the 2^63 budget");
    SplitMix64 rng(mix_seed(mix_seed(p, r), seed));
    while (true) {
        std::vector<u64> c(r + 1, 0);
        c[r] = 1;
        for (unsigned i = 0; i < r; ++i) c[i] = rng.below(p);
        FpPoly cand(p, std::move(c));
        if (is_irreducible(cand)) return std::make_shared<const ExtFieldCtx>(base, r, cand);
    }
}

ExtFieldCtxPtr make_ext_field_with_modulus(u64 p, const std::vector<u64>& modulus_coeffs) {
    PrimeFieldCtx base(p);
    FpPoly mod(p, modulus_coeffs);
    return std::make_shared<const ExtFieldCtx>(base, static_cast<unsigned>(mod.degree()), mod);
}

ExtFieldElement frobenius(const ExtFieldElement& z) { return z.pow(z.ctx()->base.p); }

u64 trace(const ExtFieldElement& z) { return subfield_trace(z, z.ctx()->r); }

u64 subfield_trace(const ExtFieldElement& z, unsigned d) {
    ExtFieldElement acc = z, conj = z;
    for (unsigned i = 1; i < d; ++i) {
        conj = frobenius(conj);
        acc = acc + conj;
    }
    if (frobenius(conj) != z) throw precondition_error("subfield_trace: element not in F_{p^d}");
    return acc.base_value();
}

u64 mult_order(const ExtFieldElement& z) {
    if (z.is_zero()) throw precondition_error("mult_order: zero element");
    u64 t = z.ctx()->order - 1;
    for (const auto& [q, e] : z.ctx()->group_factors) {
        for (unsigned i = 0; i < e && t % q == 0; ++i) {
            if (z.pow(t / q) == z.ctx()->one()) t /= q;
            else break;
        }
    }
    return t;
}

// ---- polynomials over the extension field, internal to root finding ----

namespace {

using EPoly = std::vector<ExtFieldElement>;  // little-endian coefficients

void enormalize(EPoly& f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
}

EPoly emul(const EPoly& a, const EPoly& b, const ExtFieldCtxPtr& K) {
    if (a.empty() || b.empty()) return {};
    EPoly c(a.size() + b.size() - 1, K->zero());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = c[i + j] + a[i] * b[j];
    enormalize(c);
    return c;
}

EPoly emod(EPoly a, const EPoly& d, const ExtFieldCtxPtr& K) {
    enormalize(a);
    ExtFieldElement inv_lead = d.back().inverse();
    while (a.size() >= d.size()) {
        ExtFieldElement q = a.back() * inv_lead;
        size_t off = a.size() - d.size();
        for (size_t j = 0; j < d.size(); ++j) a[off + j] = a[off + j] - q * d[j];
        enormalize(a);
        if (a.size() >= d.size() && a.size() && a.back().is_zero())
            throw std::logic_error("emod: normalization failure");
    }
    return a;
}

EPoly ediv(const EPoly& a_in, const EPoly& d, const ExtFieldCtxPtr& K) {
    EPoly a = a_in;
    enormalize(a);
    if (a.size() < d.size()) return {};
    EPoly q(a.size() - d.size() + 1, K->zero());
    ExtFieldElement inv_lead = d.back().inverse();
    while (a.size() >= d.size() && !a.empty()) {
        ExtFieldElement c = a.back() * inv_lead;
        size_t off = a.size() - d.size();
        q[off] = c;
        for (size_t j = 0; j < d.size(); ++j) a[off + j] = a[off + j] - c * d[j];
        enormalize(a);
    }
    return q;
}

EPoly egcd(EPoly a, EPoly b, const ExtFieldCtxPtr& K) {
    enormalize(a);
    enormalize(b);
    while (!b.empty()) {
        EPoly r = emod(a, b, K);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        ExtFieldElement inv = a.back().inverse();
        for (auto& c : a) c = c * inv;
    }
    return a;
}

EPoly epowmod(const EPoly& base, u64 e, const EPoly& m, const ExtFieldCtxPtr& K) {
    EPoly r{K->one()};
    EPoly b = emod(base, m, K);
    while (e) {
        if (e & 1) r = emod(emul(r, b, K), m, K);
        b = emod(emul(b, b, K), m, K);
        e >>= 1;
    }
    return r;
}

void esplit_to_linear(const EPoly& f, const ExtFieldCtxPtr& K, SplitMix64& rng,
                      std::vector<ExtFieldElement>& roots) {
    if (f.size() == 2) {
        // monic x + c -> root -c
        roots.push_back(K->zero() - f[0] * f[1].inverse());
        return;
    }
    u64 p = K->base.p;
    while (true) {
        EPoly a(f.size() - 1, K->zero());
        for (auto& c : a) {
            std::vector<u64> cc(K->r);
            for (auto& v : cc) v = rng.below(p);
            c = K->from_coeffs(std::move(cc));
        }
        enormalize(a);
        if (a.empty()) continue;
        EPoly b;
        if (p == 2) {
            b = emod(a, f, K);
            EPoly t = b;
            for (unsigned i = 1; i < K->r; ++i) {
                t = emod(emul(t, t, K), f, K);
                for (size_t j = 0; j < t.size(); ++j) {
                    if (j < b.size()) b[j] = b[j] + t[j];
                    else b.push_back(t[j]);
                }
                enormalize(b);
            }
        } else {
            b = epowmod(a, (K->order - 1) / 2, f, K);
            if (b.empty()) b = EPoly{K->zero() - K->one()};
            else b[0] = b[0] - K->one();
            enormalize(b);
        }
        if (b.empty()) continue;
        EPoly g = egcd(f, b, K);
        if (g.size() > 1 && g.size() < f.size()) {
            esplit_to_linear(g, K, rng, roots);
            EPoly h = ediv(f, g, K);
            esplit_to_linear(h, K, rng, roots);
            return;
        }
    }
}

}  // namespace

std::vector<ExtFieldElement> find_roots_in_ext(const FpPoly& f, const ExtFieldCtxPtr& ctx, u64 seed) {
    if (f.degree() < 1) throw precondition_error("find_roots_in_ext: constant polynomial");
    unsigned d = static_cast<unsigned>(f.degree());
    if (ctx->r % d != 0)
        throw precondition_error("find_roots_in_ext: factor degree does not divide field degree");
    if (f.p() != ctx->base.p) throw precondition_error("find_roots_in_ext: mismatched characteristic");

    // lift to F_q[x]; an irreducible degree-d factor splits completely since d | r
    EPoly lifted;
    lifted.reserve(d + 1);
    ExtFieldElement inv_lead = ctx->embed(f.leading()).inverse();
    for (int i = 0; i <= f.degree(); ++i) lifted.push_back(ctx->embed(f.coeff(i)) * inv_lead);

    SplitMix64 rng(mix_seed(mix_seed(f.p(), seed), ctx->r));
    std::vector<ExtFieldElement> roots;
    esplit_to_linear(lifted, ctx, rng, roots);
    if (roots.size() != d) throw std::logic_error("find_roots_in_ext: wrong root count");

    // orbit order from the lexicographically smallest root
    auto smallest = std::min_element(roots.begin(), roots.end(),
                                     [](const ExtFieldElement& a, const ExtFieldElement& b) {
                                         return a.coeffs() < b.coeffs();
                                     });
    std::vector<ExtFieldElement> orbit;
    orbit.reserve(d);
    ExtFieldElement cur = *smallest;
    for (unsigned i = 0; i < d; ++i) {
        orbit.push_back(cur);
        cur = frobenius(cur);
    }
    if (cur != orbit.front()) throw std::logic_error("find_roots_in_ext: orbit does not close");
    return orbit;
}

}  // namespace recsum::ff
