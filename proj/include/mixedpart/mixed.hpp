#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "mixedpart/count.hpp"
#include "mixedpart/oracle.hpp"
#include "mixedpart/problem.hpp"
#include "mixedpart/stirling.hpp"

// Counting functions for partitions of multiset balls into mixed
// distinguishable/indistinguishable cells, plus the r-restricted variants.
//
// Two kinds of functions live here. Canonical ones (mixed_count, b0_nkr,
// b_nkr, r_stirling2, r_bell, r_mixed_stirling, r_mixed_bell, ...) return
// correct counts, computed from constructively sound formulas or by
// delegation to the enumeration oracle. Literal ones (the *_inclusion_
// exclusion / *_signsum / *_via_B / *_theorem* / *_composition evaluators)
// reproduce printed formulas exactly as stated, including defective ones;
// they exist so the audit can compare them against the oracle and are never
// used to produce canonical values.

namespace mixedpart {

namespace detail {

/// Visits compositions (ℓ₁,…,ℓ_k) of n into k nonnegative parts in
/// colexicographic order.
template <typename Fn>
void for_each_composition(unsigned n, unsigned k, Fn&& fn) {
    if (k == 0) {
        if (n == 0) fn(std::vector<unsigned>{});
        return;
    }
    std::vector<unsigned> comp(k, 0);
    std::function<void(unsigned, unsigned)> rec = [&](unsigned remaining, unsigned pos) {
        if (pos == 0) {
            comp[0] = remaining;
            fn(comp);
            return;
        }
        for (unsigned v = 0; v <= remaining; ++v) {
            comp[pos] = v;
            rec(remaining - v, pos - 1);
        }
    };
    rec(n, k - 1);
}

/// Visits all sub-cell-specs (j₁,…,j_k), 0 ≤ jᵢ ≤ cᵢ. The callback receives
/// the spec with zero groups dropped plus the number of nonzero jᵢ.
template <typename Fn>
void for_each_subspec(const CellSpec& cells, Fn&& fn) {
    const unsigned k = cells.groups();
    std::vector<unsigned> js(k, 0);
    while (true) {
        std::vector<unsigned> positive;
        for (unsigned j : js)
            if (j > 0) positive.push_back(j);
        fn(CellSpec(std::move(positive)), static_cast<unsigned>(js.size() - std::count(
                                              js.begin(), js.end(), 0u)));
        unsigned i = 0;
        while (i < k && js[i] == cells.group_sizes[i]) js[i++] = 0;
        if (i == k) break;
        ++js[i];
    }
}

}  // namespace detail

/// {ℬ 𝒞} for distinct balls: distribute the n balls over the k groups and
/// partition each group's share into its cᵢ non-empty indistinguishable
/// cells: Σ_{ℓ₁+…+ℓ_k=n} n!/(ℓ₁!…ℓ_k!) Π {ℓᵢ cᵢ}.
inline Count mixed_distinct_balls_multinomial(unsigned n, const CellSpec& cells) {
    cells.validate();
    Count total = 0;
    detail::for_each_composition(n, cells.groups(), [&](const std::vector<unsigned>& comp) {
        Count term = 1;
        unsigned long running = 0;
        for (std::size_t i = 0; i < comp.size(); ++i) {
            running += comp[i];
            term *= binomial(running, comp[i]);
            term *= stirling2(comp[i], cells.group_sizes[i]);
            if (term == 0) return;
        }
        total += term;
    });
    return total;
}

namespace detail {

/// {ℬ 𝒞}₀ for distinct balls, via the empty-cell expansion over the
/// non-empty composition formula.
inline Count distinct_balls_empty_allowed(unsigned n, const CellSpec& cells) {
    Count total = 0;
    for_each_subspec(cells, [&](const CellSpec& sub, unsigned) {
        if (sub.groups() == 0)
            total += (n == 0 ? 1 : 0);
        else
            total += mixed_distinct_balls_multinomial(n, sub);
    });
    return total;
}

}  // namespace detail

/// {ℬ 𝒞}₀ for k distinguishable cells: Π_j C(b_j+k−1, k−1).
inline Count product_formula_labeled_cells(const BallSpec& balls, unsigned k) {
    balls.validate();
    if (k < 1) throw std::invalid_argument("product_formula_labeled_cells: k must be >= 1");
    Count p = 1;
    for (unsigned b : balls.multiplicities) p *= binomial(b + k - 1, k - 1);
    return p;
}

/// {ℬ 𝒞} for k distinguishable non-empty cells:
/// Σ_{i=0..k−1} (−1)ⁱ C(k,i) Π_j C(b_j+k−i−1, k−i−1).
inline Count surjective_formula_labeled_cells(const BallSpec& balls, unsigned k) {
    balls.validate();
    if (k < 1) throw std::invalid_argument("surjective_formula_labeled_cells: k must be >= 1");
    Count total = 0;
    for (unsigned i = 0; i < k; ++i) {
        Count term = binomial(k, i);
        for (unsigned b : balls.multiplicities) term *= binomial(b + k - i - 1, k - i - 1);
        if (i % 2) total -= term; else total += term;
    }
    return total;
}

/// Mixed partition count for an arbitrary problem. Dispatches to a closed
/// form where one is available and validated (distinct balls, or all-single
/// cell groups, with no distinctness prefix); everything else goes to the
/// enumeration oracle, subject to its guard.
inline Count mixed_count(const PartitionProblem& problem, const SizeGuard& guard = {}) {
    problem.validate();
    if (problem.distinct_prefix == 0) {
        if (problem.balls.all_distinct()) {
            const unsigned n = problem.balls.total_balls();
            return problem.allow_empty
                       ? detail::distinct_balls_empty_allowed(n, problem.cells)
                       : mixed_distinct_balls_multinomial(n, problem.cells);
        }
        if (problem.cells.all_single() && problem.cells.groups() > 0) {
            return problem.allow_empty
                       ? product_formula_labeled_cells(problem.balls, problem.cells.groups())
                       : surjective_formula_labeled_cells(problem.balls, problem.cells.groups());
        }
    }
    return oracle_count(problem, guard);
}

/// {ℬ 𝒞}₀ as the sum of non-empty counts over all sub-cell-specs
/// (j₁,…,j_k), 0 ≤ jᵢ ≤ cᵢ, zero groups dropped.
inline Count mixed_count_empty_expansion(const BallSpec& balls, const CellSpec& cells,
                                         const SizeGuard& guard = {}) {
    balls.validate();
    cells.validate();
    Count total = 0;
    detail::for_each_subspec(cells, [&](const CellSpec& sub, unsigned) {
        total += mixed_count({balls, sub, /*allow_empty=*/false, 0}, guard);
    });
    return total;
}

/// B₀(n,k,r): n distinct balls into r indistinguishable cells plus k−1
/// distinguishable cells, empty cells allowed.
/// Σ_{ℓ=0..n} C(n,ℓ) {ℓ r}₀ (k−1)^{n−ℓ}, with 0⁰ = 1.
inline Count b0_nkr(unsigned n, unsigned k, unsigned r) {
    if (k < 1 || r < 1) throw std::invalid_argument("b0_nkr: k and r must be >= 1");
    Count total = 0;
    for (unsigned l = 0; l <= n; ++l)
        total += binomial(n, l) * stirling2_cumulative(l, r) * power(static_cast<long>(k) - 1, n - l);
    return total;
}

/// B(n,k,r): as B₀(n,k,r) but with every cell non-empty.
/// Σ_{ℓ=r..n−k+1} C(n,ℓ) {ℓ r} {n−ℓ k−1} (k−1)!; 0 when the range is empty.
inline Count b_nkr(unsigned n, unsigned k, unsigned r) {
    if (n < 1 || k < 1 || r < 1) throw std::invalid_argument("b_nkr: n, k and r must be >= 1");
    Count total = 0;
    const Count perms = factorial(k - 1);
    const long hi = static_cast<long>(n) - static_cast<long>(k) + 1;
    for (long l = r; l <= hi; ++l)
        total += binomial(n, l) * stirling2(l, r) * stirling2(n - l, k - 1) * perms;
    return total;
}

namespace detail {

/// B(n,k,r) extended to the degenerate boundary the recurrence and the
/// literal audit formulas reach: 0 outside n ≥ 0, k ≥ 1, r ≥ 0; for r = 0
/// the all-labeled count (k−1)!{n k−1} (so B(0,1,0) = 1).
inline Count b_nkr_extended(long n, long k, long r) {
    if (n < 0 || k < 1 || r < 0) return 0;
    if (r == 0) {
        if (k == 1) return n == 0 ? 1 : 0;
        return factorial(k - 1) * stirling2(n, k - 1);
    }
    Count total = 0;
    const Count perms = factorial(k - 1);
    for (long l = r; l <= n - k + 1; ++l)
        total += binomial(n, l) * stirling2(l, r) * stirling2(n - l, k - 1) * perms;
    return total;
}

/// B₀(n,k,r) under the same extension (r = 0 gives (k−1)^n).
inline Count b0_nkr_extended(long n, long k, long r) {
    if (n < 0 || k < 1 || r < 0) return 0;
    Count total = 0;
    for (long l = 0; l <= n; ++l)
        total += binomial(n, l) * stirling2_cumulative(l, r) *
                 power(k - 1, static_cast<unsigned long>(n - l));
    return total;
}

}  // namespace detail

/// B(n,k,r) by the three-case recurrence
/// B(n,k,r) = B(n−1,k,r−1) + (k−1)B(n−1,k−1,r) + (k−1+r)B(n−1,k,r),
/// grounded at B(0,k,r) = [k=1 ∧ r=0] and the all-labeled counts at r = 0.
/// Kept separate from b_nkr so the audit can cross-check the two routes.
inline Count b_nkr_recurrence(unsigned n, unsigned k, unsigned r) {
    if (n < 1 || k < 1 || r < 1)
        throw std::invalid_argument("b_nkr_recurrence: n, k and r must be >= 1");
    static std::mutex mutex;
    static std::map<std::tuple<unsigned, unsigned, unsigned>, Count> memo;
    std::scoped_lock lock(mutex);
    std::function<Count(unsigned, unsigned, unsigned)> rec = [&](unsigned nn, unsigned kk,
                                                                 unsigned rr) -> Count {
        if (nn == 0) return (kk == 1 && rr == 0) ? 1 : 0;
        if (rr == 0) return detail::b_nkr_extended(nn, kk, 0);
        const auto key = std::make_tuple(nn, kk, rr);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        Count v = rec(nn - 1, kk, rr - 1);
        if (kk > 1) v += (kk - 1) * rec(nn - 1, kk - 1, rr);
        v += (kk - 1 + rr) * rec(nn - 1, kk, rr);
        return memo.emplace(key, std::move(v)).first->second;
    };
    return rec(n, k, r);
}

/// Literal evaluation of the printed inclusion–exclusion formula
/// Σ_{0≤s≤r, 0≤t≤k−1} (−1)^{t+ε_s} C(k−1,t) B₀(n,k−t,r−s), ε₀=0 else 1.
/// May be negative; audit-only.
inline Count b_nkr_inclusion_exclusion(unsigned n, unsigned k, unsigned r) {
    if (n < 1 || k < 1 || r < 1)
        throw std::invalid_argument("b_nkr_inclusion_exclusion: n, k and r must be >= 1");
    Count total = 0;
    for (unsigned s = 0; s <= r; ++s) {
        for (unsigned t = 0; t + 1 <= k; ++t) {
            const unsigned eps = (s == 0) ? 0 : 1;
            Count term = binomial(k - 1, t) *
                         detail::b0_nkr_extended(n, static_cast<long>(k) - t,
                                                 static_cast<long>(r) - s);
            if ((t + eps) % 2) total -= term; else total += term;
        }
    }
    return total;
}

/// Literal evaluation of the printed alternating sum over sub-cell-specs
/// with sign (−1)^{#{i : jᵢ≠0}}. May be negative; audit-only.
inline Count mixed_distinct_balls_signsum(unsigned n, const CellSpec& cells) {
    cells.validate();
    Count total = 0;
    detail::for_each_subspec(cells, [&](const CellSpec& sub, unsigned nonzero) {
        Count v = sub.groups() == 0 ? Count(n == 0 ? 1 : 0)
                                    : detail::distinct_balls_empty_allowed(n, sub);
        if (nonzero % 2) total -= v; else total += v;
    });
    return total;
}

/// {ℬ 𝒞} for distinct balls by removing one ball:
/// {ℬ 𝒞} = (c₁+…+c_k){ℬ' 𝒞} + Σ_j {ℬ' 𝒞_j}, where 𝒞_j decrements group j
/// (dropping it at zero); grounded at {∅ 𝒞} = [𝒞 has no cells].
inline Count mixed_ball_removal_recurrence(unsigned n, const CellSpec& cells) {
    if (n < 1) throw std::invalid_argument("mixed_ball_removal_recurrence: n must be >= 1");
    cells.validate();
    std::map<std::string, Count> memo;
    std::function<Count(unsigned, const CellSpec&)> rec = [&](unsigned nn,
                                                              const CellSpec& cs) -> Count {
        if (nn == 0) return cs.total_cells() == 0 ? 1 : 0;
        std::string key = std::to_string(nn) + "|";
        for (unsigned c : cs.group_sizes) key += std::to_string(c) + ",";
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        Count v = Count(cs.total_cells()) * rec(nn - 1, cs);
        for (unsigned j = 0; j < cs.groups(); ++j) {
            std::vector<unsigned> sub = cs.group_sizes;
            if (--sub[j] == 0) sub.erase(sub.begin() + j);
            v += rec(nn - 1, CellSpec(std::move(sub)));
        }
        return memo.emplace(std::move(key), std::move(v)).first->second;
    };
    return rec(n, cells);
}

/// r-Stirling number {n k}_r by the standard recurrence
/// {n k}_r = k{n−1 k}_r + {n−1 k−1}_r for n > r, {r k}_r = [k=r],
/// {n k}_r = 0 for n < r. r = 0 and r = 1 coincide with stirling2.
inline Count r_stirling2(unsigned n, unsigned k, unsigned r) {
    if (n < r || k > n) return 0;
    static std::mutex mutex;
    static std::map<unsigned, std::vector<std::vector<Count>>> tables;
    std::scoped_lock lock(mutex);
    auto& rows = tables[r];
    if (rows.empty()) {
        rows.push_back(std::vector<Count>(r + 1, Count(0)));
        rows[0][r] = 1;  // row n = r: {r k}_r = [k = r]
    }
    while (rows.size() <= n - r) {
        const std::size_t nn = r + rows.size();
        const auto& prev = rows.back();
        std::vector<Count> row(nn + 1, Count(0));
        for (std::size_t kk = 1; kk <= nn; ++kk) {
            if (kk < prev.size()) row[kk] = prev[kk] * static_cast<unsigned long>(kk);
            if (kk - 1 < prev.size()) row[kk] += prev[kk - 1];
        }
        rows.push_back(std::move(row));
    }
    return rows[n - r][k];
}

/// Literal evaluation of the printed r-Stirling-via-B sum
/// Σ_{l=k−r..n−2r} C(n−r,l) {l k−r} {n−r+l r} r!. Audit-only.
inline Count r_stirling_via_B(unsigned n, unsigned k, unsigned r) {
    if (r < 1 || n < r || k < r)
        throw std::invalid_argument("r_stirling_via_B: requires n >= r >= 1 and k >= r");
    Count total = 0;
    const Count perms = factorial(r);
    const long lo = static_cast<long>(k) - static_cast<long>(r);
    const long hi = static_cast<long>(n) - 2 * static_cast<long>(r);
    for (long l = lo; l <= hi; ++l)
        total += binomial_checked(static_cast<long>(n) - r, l) * stirling2(l, k - r) *
                 stirling2(n - r + l, r) * perms;
    return total;
}

/// Literal evaluation of the printed corollary recurrence
/// {n k}_r = {n−1 k}_{r−1} + r{n−1 k−1}_r + k{n−1 k}_r. Audit-only.
inline Count r_stirling_corollary_recurrence(unsigned n, unsigned k, unsigned r) {
    if (n < 1 || k < 1 || r < 1)
        throw std::invalid_argument("r_stirling_corollary_recurrence: n, k and r must be >= 1");
    Count v = r_stirling2(n - 1, k, r - 1);
    v += Count(r) * r_stirling2(n - 1, k - 1, r);
    v += Count(k) * r_stirling2(n - 1, k, r);
    return v;
}

/// r-Bell number B_{n,r} = Σ_{k=0..n} {n+r k+r}_r (partitions of an
/// (n+r)-element set with the first r elements in distinct blocks).
inline Count r_bell(unsigned n, unsigned r) {
    if (r > n) throw std::invalid_argument("r_bell: requires n >= r");
    Count total = 0;
    for (unsigned k = 0; k <= n; ++k) total += r_stirling2(n + r, k + r, r);
    return total;
}

/// Direct-definition r-Bell count: partitions of {1..n} with 1..r in
/// distinct blocks, Σ_{k=r..n} {n k}_r.
inline Count r_bell_direct(unsigned n, unsigned r) {
    if (r > n) throw std::invalid_argument("r_bell_direct: requires n >= r");
    Count total = 0;
    for (unsigned k = r; k <= n; ++k) total += r_stirling2(n, k, r);
    return total;
}

/// r-Bell polynomial Σ_{k=0..n} {n+r k+r}_r x^k, evaluated at a
/// nonnegative integer x. The Stirling factor carries the r subscript,
/// matching the definition of B_{n,r}.
inline Count r_bell_polynomial(unsigned n, unsigned r, unsigned long x) {
    Count total = 0;
    for (unsigned k = 0; k <= n; ++k)
        total += r_stirling2(n + r, k + r, r) * power(static_cast<long>(x), k);
    return total;
}

/// Literal evaluation of the printed r-Bell double sum
/// Σ_{k=0..n} Σ_{ℓ=0..n−r} C(n−r,ℓ) {ℓ k−r}₀ r^{n−r−ℓ}. Audit-only.
inline Count r_bell_theorem_sum(unsigned n, unsigned r) {
    if (r < 1 || n < r) throw std::invalid_argument("r_bell_theorem_sum: requires n >= r >= 1");
    Count total = 0;
    for (unsigned k = 0; k <= n; ++k)
        for (unsigned l = 0; l + r <= n; ++l)
            total += binomial(n - r, l) *
                     stirling2_cumulative(l, static_cast<long>(k) - static_cast<long>(r)) *
                     power(static_cast<long>(r), n - r - l);
    return total;
}

/// r-mixed Stirling number {n k}_r^𝒞: non-empty partitions of {1..n} into
/// the mixed cells with 1..r in pairwise distinct cells. Canonical value
/// comes from the enumeration oracle (no printed closed form survived the
/// audit), subject to its guard.
inline Count r_mixed_stirling(unsigned n, const CellSpec& cells, unsigned r,
                              const SizeGuard& guard = {}) {
    return oracle_count({BallSpec::distinct(n), cells, /*allow_empty=*/false, r}, guard);
}

/// Literal evaluation of the printed two-step closed form for
/// {n k}_r^𝒞 with c₁=t, c₂=…=c_k=1. Audit-only.
inline Count r_mixed_stirling_theorem(unsigned n, unsigned k, unsigned t, unsigned r) {
    Count total = 0;
    const long lo = static_cast<long>(k) - 1 + static_cast<long>(t) - static_cast<long>(r);
    for (unsigned i = 0; i <= std::min(t, r); ++i) {
        for (long l = std::max(lo, 0L); l + static_cast<long>(r) <= static_cast<long>(n); ++l) {
            total += binomial_checked(static_cast<long>(n) - r, l) * binomial(r, i) *
                     binomial_checked(static_cast<long>(k) - 1, static_cast<long>(r) - i) *
                     factorial(r - i) * power(static_cast<long>(n) - r - l, r) *
                     detail::b_nkr_extended(l, lo, static_cast<long>(t) - i);
        }
    }
    return total;
}

/// Literal evaluation of the printed composition corollary
/// Σ_{i₁+…+i_k=r} r!/(i₁!…i_k!) {n−r 𝒞}. Audit-only.
inline Count r_mixed_stirling_composition(unsigned n, const CellSpec& cells, unsigned r,
                                          const SizeGuard& guard = {}) {
    if (r > n) throw std::invalid_argument("r_mixed_stirling_composition: requires n >= r");
    cells.validate();
    const Count inner = mixed_count({BallSpec::distinct(n - r), cells, false, 0}, guard);
    Count total = 0;
    detail::for_each_composition(r, cells.groups(), [&](const std::vector<unsigned>& comp) {
        std::vector<unsigned long> parts(comp.begin(), comp.end());
        total += multinomial(parts) * inner;
    });
    return total;
}

/// r-mixed Bell number B_{n,r}^𝒞: partitions of {1..n} into the mixed
/// cells, empty cells allowed, 1..r in pairwise distinct cells. Canonical
/// value from the enumeration oracle.
inline Count r_mixed_bell(unsigned n, const CellSpec& cells, unsigned r,
                          const SizeGuard& guard = {}) {
    return oracle_count({BallSpec::distinct(n), cells, /*allow_empty=*/true, r}, guard);
}

}  // namespace mixedpart
