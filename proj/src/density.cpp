#include "recsum/density.hpp"

#include <algorithm>
#include <cmath>

namespace recsum::density {

namespace {

mpz_class mpz_of(u64 v) {
    mpz_class z;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return z;
}

void require_odd_prime(u64 ell) {
    if (ell == 2 || !is_prime_u64(ell))
        throw precondition_error("density: l must be an odd prime");
}

}  // namespace

mpz_class gl2_order(u64 ell) {
    mpz_class l = mpz_of(ell);
    return (l * l - 1) * (l * l - l);
}

u64 floor_pow_fraction(u64 ell, const Fraction& eps) {
    if (eps.den > 64) throw guard_error("floor_pow_fraction: denominator exceeds 64");
    mpz_class pm;
    mpz_pow_ui(pm.get_mpz_t(), mpz_of(ell).get_mpz_t(), eps.num);
    mpz_class root;
    mpz_root(root.get_mpz_t(), pm.get_mpz_t(), eps.den);
    if (!root.fits_ulong_p()) throw guard_error("floor_pow_fraction: threshold does not fit a word");
    return root.get_ui();
}

// ---- S1 through the divisor lattice ----
//
// Pairs are counted by the gcd classes of the exponents (i, j, i - j) with
// respect to m = l - 1. The class sizes factor over the prime powers of m:
// for each q^e || m the joint distribution of the capped q-valuations of
// (x, y, x - y) on (Z/q^e)^2 has a closed form, and the full table is the
// product over prime powers.

mpz_class count_S1(u64 ell, u64 t) {
    require_odd_prime(ell);
    if (t < 1) throw precondition_error("count_S1: t must be >= 1");
    const u64 m = ell - 1;
    auto fac = factor_u64(m);

    struct Entry {
        u64 d1, d2, d3;  // gcd classes
        mpz_class cnt;
    };
    std::vector<Entry> table{{1, 1, 1, mpz_class(1)}};

    for (const auto& [q, e] : fac) {
        // U[s] = #{x in Z/q^e : capped v_q(x) = s}
        std::vector<u64> qpow(e + 1, 1);
        for (unsigned i = 1; i <= e; ++i) qpow[i] = qpow[i - 1] * q;
        auto U = [&](unsigned s) -> u64 {
            return s == e ? 1 : qpow[e - s] - qpow[e - s - 1];
        };
        // local[(v1, v2, v3)] = pair count with those capped valuations
        std::map<std::array<unsigned, 3>, mpz_class> local;
        for (unsigned v1 = 0; v1 <= e; ++v1) {
            for (unsigned v2 = 0; v2 <= e; ++v2) {
                if (v1 != v2) {
                    // unequal valuations force v(x - y) = min
                    unsigned v3 = std::min(v1, v2);
                    local[{v1, v2, v3}] += mpz_of(U(v1)) * mpz_of(U(v2));
                }
            }
        }
        local[{e, e, e}] += 1;  // x = y = 0
        for (unsigned s = 0; s < e; ++s) {
            // x = q^s u, y = q^s w with u, w units mod q^f; the extra
            // valuation c of u - w distributes as below for each fixed u
            unsigned f = e - s;
            u64 units = qpow[f] - qpow[f - 1];
            local[{s, s, s}] += mpz_of(U(s)) * mpz_of(units - qpow[f - 1]);  // c = 0
            for (unsigned c = 1; c < f; ++c)
                local[{s, s, s + c}] += mpz_of(U(s)) * mpz_of(qpow[f - c] - qpow[f - c - 1]);
            local[{s, s, e}] += mpz_of(U(s));  // u = w, difference 0
        }

        std::vector<Entry> next;
        for (const auto& en : table) {
            for (const auto& [v, cnt] : local) {
                if (cnt == 0) continue;
                next.push_back({en.d1 * qpow[v[0]], en.d2 * qpow[v[1]], en.d3 * qpow[v[2]],
                                en.cnt * cnt});
            }
        }
        table = std::move(next);
    }

    mpz_class total = 0, s1 = 0;
    for (const auto& en : table) {
        total += en.cnt;
        // ord(g^x) = m / gcd(x, m) > t for all three classes
        if (m / en.d1 > t && m / en.d2 > t && m / en.d3 > t) s1 += en.cnt;
    }
    if (total != mpz_of(m) * mpz_of(m))
        throw std::logic_error("count_S1: lattice table does not cover (Z/m)^2");
    return s1;
}

mpz_class count_S2(u64 ell, u64 t) {
    require_odd_prime(ell);
    if (t < 1) throw precondition_error("count_S2: t must be >= 1");
    const u64 m = ell * ell - 1;
    auto divs = divisors_from_factorization(factor_u64(m));
    mpz_class s2 = 0;
    for (u64 d : divs) {
        if (d <= t) continue;             // ord(lambda) = d must exceed t
        if ((ell - 1) % d == 0) continue; // orders dividing l-1 lie in F_l
        u64 g = gcd_u64(d, ell - 1);
        if (d / g <= t) continue;         // ord(lambda^{l-1}) = d / gcd(d, l-1)
        s2 += mpz_of(euler_phi_u64(d));
    }
    return s2;
}

DensityReport density_lower_bound(u64 ell, const Fraction& eps) {
    require_odd_prime(ell);
    DensityReport rep;
    rep.ell = ell;
    rep.eps = eps;
    rep.t = std::max<u64>(1, floor_pow_fraction(ell, eps));
    rep.s1 = count_S1(ell, rep.t);
    rep.s2 = count_S2(ell, rep.t);
    rep.gl2 = gl2_order(ell);

    mpz_class l = mpz_of(ell);
    mpq_class denom(2 * rep.gl2);
    mpq_class lb(((l - 1) * l) * rep.s1 + ((l + 1) * l) * rep.s2);
    rep.lower_bound = mpq_class(lb / denom).get_d();
    // pairing each set with its own conjugacy-class size: split classes
    // C_{a,b} have (l+1)l elements, non-split C_lambda have l(l-1)
    mpq_class cw(((l + 1) * l) * rep.s1 + ((l - 1) * l) * rep.s2);
    rep.class_weighted_bound = mpq_class(cw / denom).get_d();
    rep.gap = 1.0 - rep.lower_bound;

    double le = static_cast<double>(ell);
    double ev = eps.value();
    rep.reference_curve_3eps = 1.0 - std::pow(le, -(1.0 - 3.0 * ev));
    rep.reference_curve_2eps = 1.0 - std::pow(le, -(1.0 - 2.0 * ev));
    return rep;
}

NiceTupleReport nice_tuple_count(u64 ell, unsigned r, unsigned k, u64 t) {
    require_odd_prime(ell);
    if (r < 1 || r > 3) throw guard_error("nice_tuple_count: r outside [1, 3]");
    if (ell > 101) throw guard_error("nice_tuple_count: l exceeds the exhaustive-path guard");
    if (t < 1) throw precondition_error("nice_tuple_count: t must be >= 1");
    if (k < 2) throw precondition_error("nice_tuple_count: weight k must be >= 2");

    const u64 m = ell - 1;
    // ord(g^x) > t lookup over exponents
    std::vector<char> ok(m);
    for (u64 x = 0; x < m; ++x) ok[x] = (m / gcd_u64(x, m)) > t;
    const u64 d = gcd_u64(m, static_cast<u64>(k) - 1);  // lambda must be a (k-1)-th power

    u64 count = 0;
    std::vector<u64> xs(r);
    // exponent-space enumeration: L indexes the common product, odd-position
    // exponents run free, even positions are L - x_i
    for (u64 L = 0; L < m; L += d) {
        std::function<void(unsigned)> rec = [&](unsigned depth) {
            if (depth == r) {
                ++count;
                return;
            }
            for (u64 x = 0; x < m; ++x) {
                if (!ok[x]) continue;
                u64 ev = (L + m - x % m) % m;  // exponent of the block partner
                if (!ok[ev]) continue;
                // ratio within the block: x - (L - x) = 2x - L
                if (!ok[(2 * x % m + m - L % m) % m]) continue;
                bool good = true;
                for (unsigned j = 0; j < depth && good; ++j) {
                    u64 y = xs[j];
                    if (!ok[(x + m - y) % m]) good = false;          // odd-odd
                    else if (!ok[(x + y + m - L % m) % m]) good = false;  // odd-even cross
                }
                if (!good) continue;
                xs[depth] = x;
                rec(depth + 1);
            }
        };
        rec(0);
    }

    NiceTupleReport rep;
    rep.ell = ell;
    rep.r = r;
    rep.k = k;
    rep.t = t;
    rep.count = mpz_of(count);

    mpz_class l = mpz_of(ell);
    mpz_class per_class = (l + 1) * l;  // |C_{a,b}|
    mpz_class cls = 1;
    for (unsigned i = 0; i < r; ++i) cls *= per_class;
    // each unordered block pair is counted twice among ordered tuples
    mpz_class half = 1;
    for (unsigned i = 0; i < r; ++i) half *= 2;
    rep.class_product_lower = rep.count * cls / half;

    mpz_class gl2_over = gl2_order(ell) / (l - 1);
    rep.delta_r_order = 1;
    for (unsigned i = 0; i < r; ++i) rep.delta_r_order *= gl2_over;
    rep.delta_r_order = rep.delta_r_order * (l - 1) / mpz_of(d);

    rep.density_bound = mpq_class(mpq_class(rep.class_product_lower) /
                                  mpq_class(rep.delta_r_order))
                            .get_d();
    rep.reference = std::pow(0.5, static_cast<double>(r));
    return rep;
}

FrobeniusSample frobenius_sample(unsigned k,
                                 const std::function<mpq_class(u64)>& coefficient_at,
                                 u64 ell, u64 prime_budget, const Fraction& eps, u64 seed) {
    require_odd_prime(ell);
    FrobeniusSample rep;
    rep.ell = ell;
    rep.eps = eps;
    rep.t = std::max<u64>(1, floor_pow_fraction(ell, eps));
    rep.budget = prime_budget;
    if (prime_budget == 0) return rep;

    for (u64 p : primes_up_to(prime_budget)) {
        if (p == ell) continue;
        modforms::HeckeParams params(p, k, coefficient_at(p));
        auto ro = modforms::hecke_roots_mod_ell(params, ell, seed);
        bool pass = ro.order_alpha > rep.t && ro.order_beta > rep.t && ro.order_ratio > rep.t;
        rep.rows.push_back({p, ro.klass, ro.order_alpha, ro.order_beta, ro.order_ratio, pass});
        if (pass) ++rep.satisfied;
    }
    if (!rep.rows.empty())
        rep.fraction = static_cast<double>(rep.satisfied) / static_cast<double>(rep.rows.size());
    rep.reference_lower_bound = density_lower_bound(ell, eps).lower_bound;
    return rep;
}

}  // namespace recsum::density
