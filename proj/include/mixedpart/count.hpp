#pragma once

#include <gmpxx.h>

#include <vector>

namespace mixedpart {

/// Exact arbitrary-precision integer used for every counting result.
/// Backed by GMP; never overflows, never rounds.
using Count = mpz_class;

/// C(n, k). Returns 0 for k > n.
inline Count binomial(unsigned long n, unsigned long k) {
    Count r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

/// C(n, k) over signed arguments: 0 whenever n < 0, k < 0 or k > n.
/// The audit evaluates printed formulas whose index ranges can go negative;
/// this is the convention those evaluations use.
inline Count binomial_checked(long n, long k) {
    if (n < 0 || k < 0 || k > n) return 0;
    return binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k));
}

inline Count factorial(unsigned long n) {
    Count r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

/// (Σ parts)! / Π (partᵢ!), computed as a product of binomials so every
/// intermediate value is an integer. Empty list gives 1.
inline Count multinomial(const std::vector<unsigned long>& parts) {
    Count r = 1;
    unsigned long total = 0;
    for (unsigned long p : parts) {
        total += p;
        r *= binomial(total, p);
    }
    return r;
}

/// base^exp with the combinatorial convention 0^0 = 1.
inline Count power(const Count& base, unsigned long exp) {
    Count r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline Count power(long base, unsigned long exp) { return power(Count(base), exp); }

/// Falling factorial x(x−1)…(x−k+1); 1 for k = 0. Signed: x may be negative.
inline Count falling_factorial(long x, unsigned long k) {
    Count r = 1;
    for (unsigned long i = 0; i < k; ++i) r *= Count(x) - static_cast<long>(i);
    return r;
}

}  // namespace mixedpart
