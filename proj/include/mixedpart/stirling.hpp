#pragma once

#include <cstddef>
#include <mutex>
#include <vector>

#include "mixedpart/count.hpp"

namespace mixedpart {

/// Triangular table of Stirling numbers of the second kind, filled row by
/// row from the recurrence {n k} = {n−1 k−1} + k·{n−1 k} with {0 0} = 1.
/// A completed table is immutable and safe to share across threads; growth
/// is single-writer.
class StirlingTable {
public:
    StirlingTable() { rows_.push_back({Count(1)}); }

    explicit StirlingTable(std::size_t max_n) : StirlingTable() { grow(max_n); }

    /// Extends the table so rows 0..max_n are available. Never shrinks.
    void grow(std::size_t max_n) {
        while (rows_.size() <= max_n) {
            const std::size_t n = rows_.size();
            const auto& prev = rows_.back();
            std::vector<Count> row(n + 1);
            row[0] = 0;
            for (std::size_t k = 1; k <= n; ++k) {
                row[k] = (k < n ? prev[k] * static_cast<unsigned long>(k) : Count(0));
                row[k] += prev[k - 1];
            }
            rows_.push_back(std::move(row));
        }
    }

    std::size_t max_n() const { return rows_.size() - 1; }

    /// {n k} for k ≤ n ≤ max_n(); entries with k > n are an implied 0 and
    /// must be handled by the caller (see stirling2()).
    const Count& at(std::size_t n, std::size_t k) const { return rows_[n][k]; }

private:
    std::vector<std::vector<Count>> rows_;
};

namespace detail {

inline Count stirling_shared(std::size_t n, std::size_t k) {
    static std::mutex mutex;
    static StirlingTable table(24);
    std::scoped_lock lock(mutex);
    table.grow(n);
    return table.at(n, k);
}

}  // namespace detail

/// Stirling number of the second kind {n k}. 0 for k > n, {0 0} = 1.
inline Count stirling2(unsigned long n, unsigned long k) {
    if (k > n) return 0;
    return detail::stirling_shared(n, k);
}

/// Cumulative Stirling number {n k}₀ = Σ_{i=1..k} {n i}, with the
/// conventions {0 k}₀ = 1 and {n k}₀ = [n = 0] for k ≤ 0.
inline Count stirling2_cumulative(unsigned long n, long k) {
    if (k <= 0) return n == 0 ? 1 : 0;
    if (n == 0) return 1;
    Count sum = 0;
    const unsigned long hi = std::min<unsigned long>(static_cast<unsigned long>(k), n);
    for (unsigned long i = 1; i <= hi; ++i) sum += stirling2(n, i);
    return sum;
}

/// Bell number Bₙ = Σ_{k=1..n} {n k}, B₀ = 1.
inline Count bell(unsigned long n) {
    if (n == 0) return 1;
    Count sum = 0;
    for (unsigned long k = 1; k <= n; ++k) sum += stirling2(n, k);
    return sum;
}

}  // namespace mixedpart
