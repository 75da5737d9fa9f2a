#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "mixedpart/count.hpp"
#include "mixedpart/problem.hpp"

namespace mixedpart {

/// Complete prime factorization m = Π p^α, keys in increasing order.
/// The map for m = 1 is empty.
struct FactorizationMap {
    std::map<std::uint64_t, unsigned> factors;

    std::uint64_t value() const {
        std::uint64_t v = 1;
        for (const auto& [p, a] : factors)
            for (unsigned i = 0; i < a; ++i) v *= p;
        return v;
    }

    std::vector<unsigned> exponents() const {
        std::vector<unsigned> out;
        out.reserve(factors.size());
        for (const auto& [p, a] : factors) out.push_back(a);
        return out;
    }

    /// Ω(m): prime factors counted with multiplicity.
    unsigned big_omega() const {
        unsigned t = 0;
        for (const auto& [p, a] : factors) t += a;
        return t;
    }
};

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<__uint128_t>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

inline const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        const std::uint32_t limit = 1'000'000;
        std::vector<bool> sieve(limit + 1, true);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i <= limit; ++i) {
            if (!sieve[i]) continue;
            out.push_back(i);
            for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= limit; j += i)
                sieve[j] = false;
        }
        return out;
    }();
    return primes;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace detail

/// Deterministic Miller–Rabin, exact for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL,
                            31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    // This base set is a proven witness set for n < 2^64.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL,
                            31ULL, 37ULL}) {
        std::uint64_t x = detail::powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = detail::mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace detail {

/// Brent-cycle Pollard rho. Polynomial constants are derived
/// deterministically from n so runs are reproducible.
inline std::uint64_t pollard_rho(std::uint64_t n) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        const std::uint64_t seed = splitmix64(n ^ (attempt * 0xda942042e4dd58b5ULL));
        const std::uint64_t c = seed % (n - 1) + 1;
        std::uint64_t x = splitmix64(seed) % n;
        std::uint64_t y = x, d = 1;
        auto step = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
        while (d == 1) {
            x = step(x);
            y = step(step(y));
            if (x == y) break;
            const std::uint64_t diff = x > y ? x - y : y - x;
            d = std::gcd(diff, n);
        }
        if (d != 1 && d != n) return d;
    }
}

inline void factor_cofactor(std::uint64_t n, std::map<std::uint64_t, unsigned>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    const std::uint64_t d = pollard_rho(n);
    factor_cofactor(d, out);
    factor_cofactor(n / d, out);
}

}  // namespace detail

/// Factorizes m (64-bit): trial division by primes up to 10⁶, then
/// Miller–Rabin plus Pollard rho on the remaining cofactor.
inline FactorizationMap factorize(std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("factorize: m must be >= 1");
    FactorizationMap fm;
    for (std::uint32_t p : detail::small_primes()) {
        if (static_cast<std::uint64_t>(p) * p > m) break;
        while (m % p == 0) {
            ++fm.factors[p];
            m /= p;
        }
    }
    if (m > 1) detail::factor_cofactor(m, fm.factors);
    return fm;
}

/// Ordered k-tuples (m₁,…,m_k) of positive integers with product m:
/// Π_j C(α_j+k−1, k−1).
inline Count ordered_factorizations_with_units(std::uint64_t m, unsigned k) {
    if (m < 1) throw std::invalid_argument("ordered_factorizations_with_units: m must be >= 1");
    if (k < 1) throw std::invalid_argument("ordered_factorizations_with_units: k must be >= 1");
    Count p = 1;
    for (unsigned a : factorize(m).exponents()) p *= binomial(a + k - 1, k - 1);
    return p;
}

/// Ordered k-tuples with product m and every factor ≥ 2:
/// Σ_{i=0..k−1} (−1)ⁱ C(k,i) Π_j C(α_j+k−i−1, k−i−1).
inline Count ordered_factorizations_no_units(std::uint64_t m, unsigned k) {
    if (m < 2) throw std::invalid_argument("ordered_factorizations_no_units: m must be >= 2");
    if (k < 1) throw std::invalid_argument("ordered_factorizations_no_units: k must be >= 1");
    const auto alpha = factorize(m).exponents();
    Count total = 0;
    for (unsigned i = 0; i < k; ++i) {
        Count term = binomial(k, i);
        for (unsigned a : alpha) term *= binomial(a + k - i - 1, k - i - 1);
        if (i % 2) total -= term; else total += term;
    }
    return total;
}

/// All ordered factorizations into factors ≥ 2, any length:
/// Σ_{k=1..Ω(m)} ordered_factorizations_no_units(m,k).
inline Count total_ordered_factorizations(std::uint64_t m) {
    if (m < 2) throw std::invalid_argument("total_ordered_factorizations: m must be >= 2");
    const unsigned omega = factorize(m).big_omega();
    Count total = 0;
    for (unsigned k = 1; k <= omega; ++k) total += ordered_factorizations_no_units(m, k);
    return total;
}

/// Multisets of integers ≥ 2 with product m, counted by recursive descent
/// over divisors with a nonincreasing-factor constraint.
inline Count unordered_multiplicative_partitions(std::uint64_t m) {
    if (m < 2) throw std::invalid_argument("unordered_multiplicative_partitions: m must be >= 2");
    std::vector<std::uint64_t> divisors{1};
    for (const auto& [p, a] : factorize(m).factors) {
        const std::size_t existing = divisors.size();
        std::uint64_t pk = 1;
        for (unsigned i = 1; i <= a; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < existing; ++j) divisors.push_back(divisors[j] * pk);
        }
    }
    std::sort(divisors.begin(), divisors.end());
    std::function<Count(std::uint64_t, std::uint64_t)> rec = [&](std::uint64_t cur,
                                                                 std::uint64_t maxd) -> Count {
        if (cur == 1) return 1;
        Count total = 0;
        for (std::uint64_t d : divisors) {
            if (d < 2 || d > maxd) continue;
            if (cur % d == 0) total += rec(cur / d, d);
        }
        return total;
    };
    return rec(m, m);
}

}  // namespace mixedpart
