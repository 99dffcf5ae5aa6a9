#pragma once

#include <gmpxx.h>
#include <optional>

#include "recsum/expsum.hpp"

namespace recsum::waring {

// Exact counts T_k(lambda) of k-term sums s_{n_1} + ... + s_{n_k} = lambda
// mod l with 1 <= n_i <= tau, from k-1 cyclic convolutions of the value
// histogram. Counts are big integers; tau^k overflows words quickly.
struct WaringTable {
    u64 ell = 0;
    unsigned k = 0;
    std::vector<u64> histogram;      // source histogram over F_l
    std::vector<mpz_class> counts;   // counts[lambda] = T_k(lambda)
    mpz_class total;                 // sum over lambda, equals tau^k
};

WaringTable representation_counts(u64 ell, const std::vector<u64>& histogram, unsigned k);

// Max over lambda of |T_k(lambda) - (tau^k/l + (1/l) sum_{xi != 0} S(xi)^k
// e_l(-xi lambda))|; the counts are integers so anything below 0.5 pins the
// Fourier identity.
double fourier_check(const expsum::SumProfile& prof, const WaringTable& table);

// Least k <= k_max with T_k(lambda) > 0 for every lambda, if any. Once all
// counts are positive they stay positive, which is asserted one step beyond.
std::optional<unsigned> min_basis_order(u64 ell, const std::vector<u64>& histogram,
                                        unsigned k_max);

struct MainTermReport {
    u64 ell = 0;
    unsigned k = 0;
    std::vector<double> ratios;   // T_k(lambda) * l / tau^k
    double max_deviation = 0.0;   // max |ratio - 1|
};

MainTermReport main_term_report(const WaringTable& table);

}  // namespace recsum::waring
