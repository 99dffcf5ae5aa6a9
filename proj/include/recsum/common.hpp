#pragma once

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace recsum {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i64 = std::int64_t;

// Thrown when an operation is called outside its stated domain.
class precondition_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Thrown when a computation would exceed a desk-scale resource guard.
class guard_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Iteration guards (period iteration, nested prime-power sums) default to
// 10^7 steps and can be overridden with the LRS_GUARD_MAX env var.
inline u64 iteration_guard() {
    static const u64 cached = [] {
        if (const char* s = std::getenv("LRS_GUARD_MAX")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(s, &end, 10);
            if (end && *end == '\0' && v > 0) return static_cast<u64>(v);
        }
        return static_cast<u64>(10'000'000);
    }();
    return cached;
}

// Exact nonnegative rational, used for the epsilon exponents so that
// threshold comparisons never touch floating point.
struct Fraction {
    u64 num = 0;
    u64 den = 1;

    Fraction() = default;
    Fraction(u64 n, u64 d) : num(n), den(d) {
        if (den == 0) throw precondition_error("fraction with zero denominator");
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

    // "m/k" or a bare integer "m".
    static Fraction parse(const std::string& s);
};

inline Fraction Fraction::parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Fraction(std::stoull(s), 1);
        return Fraction(std::stoull(s.substr(0, slash)), std::stoull(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw precondition_error("cannot parse fraction: " + s);
    }
}

// SplitMix64. All randomized searches in the library are keyed by an
// explicit seed so runs are reproducible.
class SplitMix64 {
public:
    explicit SplitMix64(u64 seed) : state_(seed) {}

    u64 next() {
        u64 z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound).
    u64 below(u64 bound) { return bound ? next() % bound : 0; }

private:
    u64 state_;
};

inline u64 mix_seed(u64 a, u64 b) {
    SplitMix64 g(a ^ (0x9e3779b97f4a7c15ULL + b));
    g.next();
    return g.next();
}

// ---- machine-word modular arithmetic ----

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

inline u64 addmod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    if (s >= m || s < a) s -= m;
    return s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

inline u64 gcd_u64(u64 a, u64 b) {
    while (b) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

u64 invmod(u64 a, u64 m);

// Deterministic Miller-Rabin, valid for the full 64-bit range.
bool is_prime_u64(u64 n);

// Prime factorization as (prime, multiplicity) pairs, primes ascending.
// Trial division below 10^6, Pollard rho (Brent) for what remains.
std::vector<std::pair<u64, unsigned>> factor_u64(u64 n);

// All divisors of n from its factorization, ascending.
std::vector<u64> divisors_from_factorization(const std::vector<std::pair<u64, unsigned>>& f);

// Euler phi of a divisor given the factorization context is easier to
// compute directly from the divisor's own factorization at desk scale.
u64 euler_phi_u64(u64 n);

// Primes <= n, simple sieve.
std::vector<u64> primes_up_to(u64 n);

// Least prime divisor.
u64 least_prime_factor(u64 n);

// p^e with overflow detection; nullopt if it exceeds the 2^63-1 budget.
std::optional<u64> checked_pow(u64 base, unsigned exp);

}  // namespace recsum
